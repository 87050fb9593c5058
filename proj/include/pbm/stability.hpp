#pragma once

#include "axioms.hpp"
#include "contraction.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "space.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <type_traits>
#include <vector>

namespace pbm {

enum class StabilityVerdict { converged_to_q, inconclusive };

inline std::string_view to_string(StabilityVerdict v)
{
    return v == StabilityVerdict::converged_to_q ? "converged-to-q" : "inconclusive";
}

/// Stepwise re-check of the recurrence behind T-stability:
///   p(Ty_n, q) <= r p(y_n, q)  with r = (2l1 + s l4 + s l5)/(2 - 2l3 - s l4 - s l5)
///   a_{n+1}   <= s p(y_{n+1}, Ty_n) + s p(Ty_n, q)
template <class Scalar>
struct RecurrenceLedger {
    Scalar ratio{};
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::optional<std::size_t> first_failure;
};

template <PartialSpace S>
struct StabilityTrial {
    using Point = point_t<S>;
    using Scalar = scalar_t<S>;

    Point q{};
    std::vector<Point> y;
    /// raw_drift[n] = p(y_{n+1}, T y_n); drift[n] = s * raw_drift[n].
    std::vector<Scalar> raw_drift;
    std::vector<Scalar> drift;
    /// a[n] = p(y_n, q)
    std::vector<Scalar> a;
    StabilityVerdict verdict = StabilityVerdict::inconclusive;
    std::optional<RecurrenceLedger<Scalar>> recurrence;
};

/// Tail window over which "tends to zero" is judged: the last quarter.
inline std::size_t tail_start(std::size_t length)
{
    return length - std::max<std::size_t>(1, length / 4);
}

template <class Scalar>
Scalar default_stability_tolerance()
{
    if constexpr (std::is_same_v<Scalar, double>) return 1e-8;
    else return Scalar(0);
}

/// Follows a perturbed Picard sequence y_n and records the drift
/// p(y_{n+1}, T y_n) and the distance to the fixed point q. The verdict is
/// converged-to-q only when both drift and distance stay below `tol` over
/// the last quarter of the run; anything else says nothing about stability.
template <PartialSpace S, class Map>
StabilityTrial<S> run_perturbed(const S& space, const Map& map, const point_t<S>& q,
                                const std::vector<point_t<S>>& schedule, std::size_t n_steps,
                                const std::optional<ChkaParams<scalar_t<S>>>& params = std::nullopt,
                                const scalar_t<S>& tol = default_stability_tolerance<scalar_t<S>>())
{
    using Scalar = scalar_t<S>;
    const Scalar ftol = space.tolerance();
    if constexpr (S::is_exact) {
        if (map(q) != q) throw PreconditionError("stability target is not a fixed point");
    } else {
        if (!leq(Scalar(space.distance(q, map(q))), ftol, Scalar(0)))
            throw PreconditionError("stability target is not a fixed point");
    }
    if (!leq(Scalar(space.distance(q, q)), ftol, Scalar(0)))
        throw PreconditionError("stability target must have zero self-distance");
    if (n_steps < 2) throw ParameterError("stability run needs at least 2 steps");
    if (schedule.size() < n_steps) throw ParameterError("schedule shorter than the requested step count");

    const Scalar s = space.declared_s();
    StabilityTrial<S> trial;
    trial.q = q;
    trial.y.assign(schedule.begin(), schedule.begin() + static_cast<std::ptrdiff_t>(n_steps));
    for (std::size_t n = 0; n < n_steps; ++n) trial.a.push_back(space.distance(trial.y[n], q));
    for (std::size_t n = 0; n + 1 < n_steps; ++n) {
        const Scalar raw = space.distance(trial.y[n + 1], map(trial.y[n]));
        trial.drift.push_back(s * raw);
        trial.raw_drift.push_back(raw);
    }

    if (params) {
        const auto& l = *params;
        const Scalar den = 2 - 2 * l[2] - s * l[3] - s * l[4];
        if (den > 0) {
            RecurrenceLedger<Scalar> ledger;
            ledger.ratio = (2 * l[0] + s * l[3] + s * l[4]) / den;
            for (std::size_t n = 0; n + 1 < n_steps; ++n) {
                const Scalar p_ty_q = space.distance(map(trial.y[n]), q);
                const bool contraction_ok = leq(p_ty_q, Scalar(ledger.ratio * trial.a[n]), ftol);
                const bool step_ok = leq(trial.a[n + 1], Scalar(s * trial.raw_drift[n] + s * p_ty_q), ftol);
                ++ledger.checked;
                if (!contraction_ok || !step_ok) {
                    ++ledger.failures;
                    if (!ledger.first_failure) ledger.first_failure = n;
                }
            }
            trial.recurrence = ledger;
        }
    }

    bool vanishing = true;
    for (std::size_t n = tail_start(trial.raw_drift.size()); n < trial.raw_drift.size(); ++n)
        vanishing = vanishing && (S::is_exact ? trial.raw_drift[n] == 0 : trial.raw_drift[n] < tol);
    bool close = true;
    for (std::size_t n = tail_start(trial.a.size()); n < trial.a.size(); ++n)
        close = close && (S::is_exact ? trial.a[n] == 0 : trial.a[n] < tol);
    trial.verdict = vanishing && close ? StabilityVerdict::converged_to_q : StabilityVerdict::inconclusive;
    return trial;
}

/// y_n = n/(n+1) u on a real interval.
inline std::vector<double> scaled_fixed_point_schedule(double u, std::size_t n_steps)
{
    std::vector<double> y(n_steps);
    for (std::size_t n = 0; n < n_steps; ++n) y[n] = static_cast<double>(n) / static_cast<double>(n + 1) * u;
    return y;
}

/// Perturbed Picard sequence with perturbation budget r 2^-n at step n.
/// Finite spaces move to the point of the ball B'(Ty_n, r 2^-n) farthest
/// from Ty_n (Ty_n itself on ties); intervals shift Ty_n by r 2^-n and clamp.
inline std::vector<std::size_t> geometric_noise_schedule(const FiniteSpace& space, const FiniteMap& map,
                                                         std::size_t start, const Rational& r, std::size_t n_steps)
{
    if (!(r > 0)) throw ParameterError("noise magnitude must be positive");
    std::vector<std::size_t> y{start};
    Rational radius = r;
    while (y.size() < n_steps) {
        const std::size_t target = map(y.back());
        std::size_t pick = target;
        for (std::size_t z = 0; z < space.size(); ++z) {
            if (z == target || !ball_contains(space, target, radius, z)) continue;
            if (space(target, z) > space(target, pick)) pick = z;
        }
        y.push_back(pick);
        radius /= 2;
    }
    return y;
}

inline std::vector<double> geometric_noise_schedule(const SampledSpace& space, const ExpShiftMap& map, double start,
                                                    double r, std::size_t n_steps)
{
    if (!(r > 0)) throw ParameterError("noise magnitude must be positive");
    std::vector<double> y{start};
    double step = r;
    while (y.size() < n_steps) {
        y.push_back(std::clamp(map(y.back()) + step, space.lo(), space.hi()));
        step /= 2;
    }
    return y;
}

enum class LemmaStatus { limit_zero, premise_failed, inconclusive };

inline std::string_view to_string(LemmaStatus s)
{
    switch (s) {
    case LemmaStatus::limit_zero: return "limit-zero";
    case LemmaStatus::premise_failed: return "premise-failed";
    case LemmaStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

template <class Scalar>
struct LemmaVerdict {
    LemmaStatus status = LemmaStatus::inconclusive;
    bool premise_holds = true;
    std::optional<std::size_t> witness_index;
    bool c_vanishes = false;
    /// a_N <= h^N a_0 + sum_{i<N} h^(N-1-i) c_i on every prefix index.
    bool bound_holds = true;
    Scalar a_last{};
};

/// Checks a_{n+1} <= h a_n + c_n on the prefix and, when c tends to zero
/// (tail below `tail_tol`), that a does as well.
template <class Scalar>
LemmaVerdict<Scalar> check_lemma_sequences(const std::vector<Scalar>& a, const std::vector<Scalar>& c,
                                           const Scalar& h, const Scalar& tail_tol)
{
    if (h < 0 || !(h < 1)) throw ParameterError("lemma factor h must lie in [0, 1)");
    if (a.empty()) throw ParameterError("sequence a is empty");
    if (c.size() + 1 < a.size()) throw ParameterError("sequence c must cover every step of a");
    for (const auto& v : a)
        if (v < 0) throw ParameterError("sequence a must be non-negative");
    for (const auto& v : c)
        if (v < 0) throw ParameterError("sequence c must be non-negative");

    LemmaVerdict<Scalar> verdict;
    for (std::size_t n = 0; n + 1 < a.size(); ++n) {
        if (a[n + 1] > h * a[n] + c[n]) {
            verdict.premise_holds = false;
            verdict.witness_index = n;
            verdict.status = LemmaStatus::premise_failed;
            return verdict;
        }
    }
    Scalar bound = a[0];
    for (std::size_t n = 0; n < a.size(); ++n) {
        if (a[n] > bound) verdict.bound_holds = false;
        if (n < c.size()) bound = h * bound + c[n];
    }
    verdict.c_vanishes = true;
    for (std::size_t n = tail_start(c.size() == 0 ? 1 : c.size()); n < c.size(); ++n)
        verdict.c_vanishes = verdict.c_vanishes && c[n] < tail_tol;
    verdict.a_last = a.back();
    verdict.status = verdict.c_vanishes && verdict.a_last < tail_tol ? LemmaStatus::limit_zero
                                                                      : LemmaStatus::inconclusive;
    return verdict;
}

template <class Scalar>
struct Main3Result {
    bool holds = false;
    /// 2 s l1 + 2 l3 + (s + s^2)(l4 + l5)
    Scalar lhs{};
    /// s (2l1 + s l4 + s l5) / (2 - 2l3 - s l4 - s l5); below 1 iff holds.
    std::optional<Scalar> step_factor;
};

/// T-stability parameter condition for the rational contraction.
template <class Scalar>
Main3Result<Scalar> main3_condition(const ChkaParams<Scalar>& l, const Scalar& s)
{
    for (const auto& v : l.lambda)
        if (v < 0) throw ParameterError("coefficients must be non-negative");
    if (s < 1) throw ParameterError("coefficient s must be >= 1");
    Main3Result<Scalar> out;
    out.lhs = 2 * s * l[0] + 2 * l[2] + (s + s * s) * (l[3] + l[4]);
    out.holds = out.lhs < 2;
    const Scalar den = 2 - 2 * l[2] - s * l[3] - s * l[4];
    if (den > 0) out.step_factor = s * (2 * l[0] + s * l[3] + s * l[4]) / den;
    return out;
}

} // namespace pbm
