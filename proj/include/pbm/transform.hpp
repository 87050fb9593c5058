#pragma once

#include "axioms.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "self_map.hpp"
#include "space.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pbm {

enum class TransformMode { finite_sum, series };

inline std::string_view to_string(TransformMode m)
{
    return m == TransformMode::finite_sum ? "finite-sum" : "series";
}

/// Raised when the weighted orbit series sum_i lambda^i p(T^i x, T^i y)
/// diverges for some pair.
class SeriesDivergence : public Error {
public:
    SeriesDivergence(std::string message, std::size_t x, std::size_t y)
        : Error(std::move(message)), x_(x), y_(y)
    {
    }
    std::pair<std::size_t, std::size_t> pair() const { return {x_, y_}; }

private:
    std::size_t x_;
    std::size_t y_;
};

/// A weighted orbit-sum metric built from a base space and a self-map:
/// finite-sum mode holds p'(x,y) = sum_{i<n} lambda^i p(T^i x, T^i y),
/// series mode the full series h(x,y).
struct TransformedSpace {
    FiniteSpace base;
    FiniteMap map;
    unsigned n = 0;  ///< number of summed terms; 0 for the series
    Rational K;
    Rational lambda;
    TransformMode mode = TransformMode::finite_sum;
    FiniteSpace space;
    /// Bound on |table - true value| per entry; 0 when summed exactly.
    Rational truncation_error = 0;

    const Rational& operator()(std::size_t x, std::size_t y) const { return space(x, y); }
    std::size_t size() const { return space.size(); }
};

/// Checks p(T^n x, T^n y) <= K p(x, y) on all pairs; returns the first
/// violating pair.
inline std::optional<std::pair<std::size_t, std::size_t>> power_condition_violation(
    const FiniteSpace& space, const FiniteMap& map, unsigned n, const Rational& K)
{
    const FiniteMap tn = map.power(n);
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y)
            if (space(tn(x), tn(y)) > K * space(x, y)) return std::pair{x, y};
    return std::nullopt;
}

inline TransformedSpace build_pprime(const FiniteSpace& space, const FiniteMap& map, unsigned n,
                                     const Rational& K, const Rational& lambda)
{
    map.validate(space);
    if (n < 2) throw ParameterError("power n must exceed 1");
    if (!(K > 0 && K < 1)) throw ParameterError("K must lie in (0, 1)");
    // K^(1/n) < 1/lambda < 1  <=>  lambda > 1 and K lambda^n < 1.
    if (!(lambda > 1) || !(K * ipow(lambda, n) < 1))
        throw ParameterError("lambda must lie in (1, K^(-1/n))");
    if (auto bad = power_condition_violation(space, map, n, K))
        throw PreconditionError("power condition p(T^n x, T^n y) <= K p(x,y) fails at (" +
                                space.label(bad->first) + "," + space.label(bad->second) + ")");

    std::vector<FiniteMap> powers;
    powers.push_back(FiniteMap::identity(space.size()));
    for (unsigned i = 1; i < n; ++i) powers.push_back(map.after(powers.back()));

    std::vector<std::vector<Rational>> table(space.size(), std::vector<Rational>(space.size()));
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (std::size_t y = 0; y < space.size(); ++y) {
            Rational sum = 0;
            Rational weight = 1;
            for (unsigned i = 0; i < n; ++i) {
                sum += weight * space(powers[i](x), powers[i](y));
                weight *= lambda;
            }
            table[x][y] = sum;
        }
    }
    TransformedSpace out{space, map, n, K, lambda, TransformMode::finite_sum,
                         FiniteSpace(space.labels(), table, space.declared_s()), 0};
    return out;
}

struct TransformCheck {
    /// p'(Tx,Ty) <= p'(x,y) / lambda on every pair.
    bool contraction = true;
    std::optional<std::pair<std::size_t, std::size_t>> contraction_failure;
    /// p'(Tx,Ty) = (p'(x,y) - p(x,y)) / lambda + lambda^(n-1) p(T^n x, T^n y).
    bool identity = true;
    std::optional<std::pair<std::size_t, std::size_t>> identity_failure;
    /// p <= p' entrywise.
    bool dominates_base = true;

    bool pass() const { return contraction && identity && dominates_base; }
};

inline TransformCheck verify_transform_contraction(const TransformedSpace& t)
{
    if (t.mode != TransformMode::finite_sum)
        throw PreconditionError("contraction check applies to the finite-sum transform");
    TransformCheck check;
    const FiniteMap tn = t.map.power(t.n);
    const Rational lambda_pow = ipow(t.lambda, t.n - 1);
    for (std::size_t x = 0; x < t.size(); ++x) {
        for (std::size_t y = 0; y < t.size(); ++y) {
            const Rational& lhs = t(t.map(x), t.map(y));
            if (lhs > t(x, y) / t.lambda && check.contraction) {
                check.contraction = false;
                check.contraction_failure = std::pair{x, y};
            }
            const Rational rhs = (t(x, y) - t.base(x, y)) / t.lambda + lambda_pow * t.base(tn(x), tn(y));
            if (lhs != rhs && check.identity) {
                check.identity = false;
                check.identity_failure = std::pair{x, y};
            }
            if (t.base(x, y) > t(x, y)) check.dominates_base = false;
        }
    }
    return check;
}

namespace detail {

/// sum_{i>=0} lambda^i p(T^i x, T^i y) by cycle detection on the pair orbit.
inline Rational orbit_series(const FiniteSpace& space, const FiniteMap& map, const Rational& lambda,
                             std::size_t x0, std::size_t y0)
{
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
    std::vector<std::pair<std::size_t, std::size_t>> states;
    std::pair<std::size_t, std::size_t> state{x0, y0};
    while (seen.find(state) == seen.end()) {
        seen.emplace(state, states.size());
        states.push_back(state);
        state = {map(state.first), map(state.second)};
    }
    const std::size_t cycle_start = seen.at(state);
    const std::size_t period = states.size() - cycle_start;

    Rational prefix = 0;
    Rational weight = 1;
    for (std::size_t i = 0; i < cycle_start; ++i) {
        prefix += weight * space(states[i].first, states[i].second);
        weight *= lambda;
    }
    // weight == lambda^cycle_start here.
    Rational cycle = 0;
    Rational w = 1;
    for (std::size_t r = 0; r < period; ++r) {
        const auto& [a, b] = states[cycle_start + r];
        cycle += w * space(a, b);
        w *= lambda;
    }
    if (cycle == 0) return prefix;
    // w == lambda^period; the periodic tail is a geometric series.
    if (!(w < 1))
        throw SeriesDivergence("orbit series diverges at pair (" + space.label(x0) + "," + space.label(y0) + ")",
                               x0, y0);
    return prefix + weight * cycle / (1 - w);
}

} // namespace detail

/// The infinite orbit series h, summed exactly on a finite space.
inline TransformedSpace build_h_series(const FiniteSpace& space, const FiniteMap& map, const Rational& lambda,
                                       const Rational& tail_tol)
{
    map.validate(space);
    if (!(lambda > 0)) throw ParameterError("lambda must be positive");
    if (!(tail_tol > 0)) throw ParameterError("tail tolerance must be positive");
    std::vector<std::vector<Rational>> table(space.size(), std::vector<Rational>(space.size()));
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t y = 0; y < space.size(); ++y) table[x][y] = detail::orbit_series(space, map, lambda, x, y);
    TransformedSpace out{space, map, 0, Rational(0), lambda, TransformMode::series,
                         FiniteSpace(space.labels(), table, space.declared_s()), 0};
    return out;
}

struct SandwichCheck {
    /// p' <= h <= p' / (1 - lambda^n K) on every pair.
    bool holds = true;
    Rational factor;
    std::optional<std::pair<std::size_t, std::size_t>> failure;
};

struct HSeriesBuild {
    TransformedSpace h;
    SandwichCheck sandwich;
};

/// Builds h from the parameters of an existing p' and checks the sandwich.
inline HSeriesBuild build_h_series(const TransformedSpace& pprime, const Rational& tail_tol)
{
    if (pprime.mode != TransformMode::finite_sum) throw PreconditionError("expected a finite-sum transform");
    HSeriesBuild out{build_h_series(pprime.base, pprime.map, pprime.lambda, tail_tol), {}};
    out.h.n = pprime.n;
    out.h.K = pprime.K;
    out.sandwich.factor = 1 / (1 - ipow(pprime.lambda, pprime.n) * pprime.K);
    for (std::size_t x = 0; x < pprime.size(); ++x) {
        for (std::size_t y = 0; y < pprime.size(); ++y) {
            const Rational& lo = pprime(x, y);
            const Rational& mid = out.h(x, y);
            if (lo > mid || mid > lo * out.sandwich.factor) {
                out.sandwich.holds = false;
                out.sandwich.failure = std::pair{x, y};
                return out;
            }
        }
    }
    return out;
}

enum class TransferVerdict { transfers, inconclusive, failed };

inline std::string_view to_string(TransferVerdict v)
{
    switch (v) {
    case TransferVerdict::transfers: return "transfers";
    case TransferVerdict::inconclusive: return "inconclusive";
    case TransferVerdict::failed: return "failed";
    }
    return "unknown";
}

struct TransferReport {
    TransferVerdict verdict = TransferVerdict::inconclusive;
    std::optional<std::size_t> limit;
    std::string reason;
};

/// Finite-space content of completeness transfer: a sequence converging to
/// xi with p(xi,xi) = 0 also converges to xi under the transformed metric,
/// with zero self-distance there.
///
/// On a finite space "converges" means eventually constant; the sequence must
/// end with xi repeated at least twice. Uniform continuity of T, read on a
/// finite space, forces T to keep zero self-distance along the orbit of xi;
/// when it does not, the verdict is inconclusive.
inline TransferReport check_convergence_transfer(const FiniteSpace& space, const FiniteMap& map,
                                                 const TransformedSpace& t, const std::vector<std::size_t>& seq)
{
    TransferReport report;
    if (seq.size() < 2 || seq[seq.size() - 1] != seq[seq.size() - 2]) {
        report.reason = "sequence is not visibly eventually constant";
        return report;
    }
    const std::size_t xi = seq.back();
    report.limit = xi;
    if (space(xi, xi) != 0) {
        report.reason = "limit has positive self-distance";
        return report;
    }
    const unsigned terms = t.mode == TransformMode::finite_sum ? t.n : static_cast<unsigned>(space.size() + 1);
    std::size_t z = xi;
    for (unsigned i = 0; i < terms; ++i) {
        if (space(z, z) != 0) {
            report.reason = "map is not uniformly continuous at the limit (T^i xi has positive self-distance)";
            return report;
        }
        z = map(z);
    }
    std::size_t start = seq.size() - 1;
    while (start > 0 && space(xi, seq[start - 1]) == space(xi, xi)) --start;
    for (std::size_t k = start; k < seq.size(); ++k) {
        if (t(xi, seq[k]) != t(xi, xi)) {
            report.verdict = TransferVerdict::failed;
            report.reason = "tail does not converge under the transformed metric";
            return report;
        }
    }
    if (t(xi, xi) != 0) {
        report.verdict = TransferVerdict::failed;
        report.reason = "transformed self-distance at the limit is positive";
        return report;
    }
    report.verdict = TransferVerdict::transfers;
    return report;
}

} // namespace pbm
