#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "self_map.hpp"
#include "space.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

namespace pbm {

enum class Verdict { fixed_point_found, max_iterations, divergence_suspected };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::fixed_point_found: return "fixed-point-found";
    case Verdict::max_iterations: return "max-iterations";
    case Verdict::divergence_suspected: return "divergence-suspected";
    }
    return "unknown";
}

/// A Picard orbit x0, Tx0, T^2x0, ... with b_n = p(x_n, x_{n+1}).
template <PartialSpace S>
struct IterationTrace {
    using Point = point_t<S>;
    using Scalar = scalar_t<S>;

    std::vector<Point> orbit;
    std::vector<Scalar> b;
    Verdict verdict = Verdict::max_iterations;
    std::optional<Point> fixed_point;
    std::optional<Scalar> self_distance;
    /// Function-backed traces stop on a small residual; the fixed point is
    /// then numerical rather than exact.
    bool numerical = false;
    std::size_t iterations = 0;
};

/// Steps of strict growth in b_n that trigger the divergence heuristic.
inline constexpr std::size_t divergence_window = 10;

/// Runs x_{n+1} = T x_n from x0. Finite spaces stop on exact equality
/// x_{n+1} = x_n; function-backed spaces stop once p(x_n, x_{n+1}) < tol.
template <PartialSpace S, class Map>
IterationTrace<S> iterate(const S& space, const Map& map, point_t<S> x0, std::size_t max_iter,
                          const scalar_t<S>& tol = scalar_t<S>{})
{
    using Scalar = scalar_t<S>;
    IterationTrace<S> trace;
    trace.orbit.push_back(x0);
    std::size_t growth = 0;
    for (std::size_t n = 0; n < max_iter; ++n) {
        const auto current = trace.orbit.back();
        const auto next = map(current);
        const Scalar bn = space.distance(current, next);
        trace.orbit.push_back(next);
        trace.b.push_back(bn);
        trace.iterations = n + 1;

        bool stop = false;
        if constexpr (S::is_exact) {
            stop = next == current;
        } else {
            stop = next == current || bn < tol;
            trace.numerical = true;
        }
        if (stop) {
            trace.verdict = Verdict::fixed_point_found;
            trace.fixed_point = next;
            trace.self_distance = space.distance(next, next);
            return trace;
        }
        if (trace.b.size() >= 2 && bn > trace.b[trace.b.size() - 2]) {
            if (++growth >= divergence_window) {
                trace.verdict = Verdict::divergence_suspected;
                return trace;
            }
        } else {
            growth = 0;
        }
    }
    trace.verdict = Verdict::max_iterations;
    return trace;
}

template <class Scalar>
struct RateCheck {
    std::size_t n = 0;
    std::size_t m = 0;  ///< only used by tail checks
    Scalar observed{};
    Scalar bound{};
    bool pass = true;
};

/// Quantitative certificate for a trace: b_n <= mu^n b_0 per step and,
/// when s mu < 1, p(x_n, x_m) <= s mu^n / (1 - s mu) b_0 on every realized
/// pair n < m.
template <class Scalar>
struct RateCertificate {
    Scalar mu{};
    Scalar s{};
    std::vector<RateCheck<Scalar>> step_checks;
    std::vector<RateCheck<Scalar>> tail_checks;
    bool tail_checked = false;
    bool all_pass = true;

    std::optional<RateCheck<Scalar>> first_failure() const
    {
        for (const auto& c : step_checks)
            if (!c.pass) return c;
        for (const auto& c : tail_checks)
            if (!c.pass) return c;
        return std::nullopt;
    }
};

template <PartialSpace S>
RateCertificate<scalar_t<S>> certify_rate(const S& space, const IterationTrace<S>& trace,
                                          const scalar_t<S>& mu, const scalar_t<S>& s)
{
    using Scalar = scalar_t<S>;
    if (mu < 0 || !(mu < 1)) throw ParameterError("certificate rate mu must lie in [0, 1)");
    if (s < 1) throw ParameterError("coefficient s must be >= 1");
    const Scalar tol = space.tolerance();

    RateCertificate<Scalar> cert;
    cert.mu = mu;
    cert.s = s;
    if (trace.b.empty()) return cert;
    const Scalar& b0 = trace.b.front();

    Scalar mu_n = 1;
    for (std::size_t n = 0; n < trace.b.size(); ++n) {
        RateCheck<Scalar> check;
        check.n = n;
        check.observed = trace.b[n];
        check.bound = mu_n * b0;
        check.pass = leq(check.observed, check.bound, tol);
        cert.all_pass = cert.all_pass && check.pass;
        cert.step_checks.push_back(std::move(check));
        mu_n *= mu;
    }

    const Scalar smu = s * mu;
    if (smu < 1) {
        cert.tail_checked = true;
        const Scalar factor = s * b0 / (1 - smu);
        Scalar mu_pow = 1;
        for (std::size_t n = 0; n < trace.orbit.size(); ++n) {
            const Scalar bound = factor * mu_pow;
            for (std::size_t m = n + 1; m < trace.orbit.size(); ++m) {
                RateCheck<Scalar> check;
                check.n = n;
                check.m = m;
                check.observed = space.distance(trace.orbit[n], trace.orbit[m]);
                check.bound = bound;
                check.pass = leq(check.observed, check.bound, tol);
                cert.all_pass = cert.all_pass && check.pass;
                cert.tail_checks.push_back(std::move(check));
            }
            mu_pow *= mu;
        }
    }
    return cert;
}

struct FixedPointSet {
    std::vector<std::size_t> points;
    std::vector<Rational> self_distances;

    bool unique() const { return points.size() == 1; }
    bool empty() const { return points.empty(); }
};

/// Exhaustive scan for Tu = u on a finite space.
inline FixedPointSet fixed_points(const FiniteSpace& space, const FiniteMap& map)
{
    FixedPointSet out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (map(x) == x) {
            out.points.push_back(x);
            out.self_distances.push_back(space(x, x));
        }
    }
    return out;
}

inline FixedPointSet fixed_points(const SampledSpace&, const ExpShiftMap&)
{
    throw PreconditionError("fixed-point enumeration needs a finite space; iterate and check the residual instead");
}

} // namespace pbm
