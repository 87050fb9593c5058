#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "space.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pbm {

template <class Point>
struct AxiomCheck {
    bool pass = true;
    /// Violating pair (pm1..pm3) or triple (x, y, z) for pm4.
    std::vector<Point> witness;
};

template <PartialSpace S>
struct AxiomReport {
    using Point = point_t<S>;
    using Scalar = scalar_t<S>;

    AxiomCheck<Point> pm1;
    AxiomCheck<Point> pm2;
    AxiomCheck<Point> pm3;
    AxiomCheck<Point> pm4;
    Scalar s{};
    /// Least coefficient making pm4 hold; only filled for finite spaces
    /// that pass pm1-pm3.
    std::optional<Scalar> minimal_s;
    /// True for function-backed spaces: only grid points were examined.
    bool sampled = false;

    bool all_pass() const { return pm1.pass && pm2.pass && pm3.pass && pm4.pass; }
};

template <PartialSpace S>
struct CoefficientResult {
    scalar_t<S> value;
    /// Triple (x, y, z) attaining the maximal ratio; empty when the value is
    /// the floor 1 with no triple exceeding it.
    std::optional<std::array<point_t<S>, 3>> witness;
    bool sampled = false;
};

namespace detail {

template <PartialSpace S>
std::vector<point_t<S>> point_list(const S& space)
{
    std::vector<point_t<S>> pts;
    for (auto x : space.points()) pts.push_back(x);
    return pts;
}

/// pm1, pm2, pm3 on their own.
template <PartialSpace S>
void check_pairs(const S& space, const std::vector<point_t<S>>& pts, AxiomReport<S>& report)
{
    const auto tol = space.tolerance();
    for (const auto& x : pts) {
        for (const auto& y : pts) {
            const auto& pxy = space.distance(x, y);
            const auto& pyx = space.distance(y, x);
            const auto& pxx = space.distance(x, x);
            const auto& pyy = space.distance(y, y);
            if (report.pm3.pass && !approx_equal(pxy, pyx, tol)) {
                report.pm3 = {false, {x, y}};
            }
            if (report.pm2.pass && !leq(pxx, pxy, tol)) {
                report.pm2 = {false, {x, y}};
            }
            // pm1 contrapositive: distinct points never share all three values.
            if (report.pm1.pass && x != y && approx_equal(pxy, pxx, tol) && approx_equal(pxy, pyy, tol)) {
                report.pm1 = {false, {x, y}};
            }
        }
    }
}

} // namespace detail

/// Least s with p(x,y) + p(z,z) <= s (p(x,z) + p(z,y)) on every triple,
/// floored at 1. The witness is the first triple in scan order attaining the
/// maximum ratio.
template <PartialSpace S>
CoefficientResult<S> minimal_coefficient(const S& space)
{
    using Scalar = scalar_t<S>;
    const auto pts = detail::point_list(space);
    {
        AxiomReport<S> pre;
        detail::check_pairs(space, pts, pre);
        if (!pre.pm1.pass || !pre.pm2.pass || !pre.pm3.pass)
            throw AxiomViolation("minimal coefficient requires pm1-pm3 to hold");
    }
    const auto tol = space.tolerance();
    CoefficientResult<S> result{Scalar(1), std::nullopt, !S::is_exact};
    for (const auto& x : pts) {
        for (const auto& y : pts) {
            for (const auto& z : pts) {
                const Scalar num = space.distance(x, y) + space.distance(z, z);
                const Scalar den = space.distance(x, z) + space.distance(z, y);
                if (!is_positive(den, tol)) {
                    if (is_positive(num, tol))
                        throw AxiomViolation("zero denominator with positive numerator in pm4 ratio");
                    continue;
                }
                const Scalar ratio = num / den;
                if (ratio > result.value) {
                    result.value = ratio;
                    result.witness = std::array<point_t<S>, 3>{x, y, z};
                }
            }
        }
    }
    return result;
}

/// Exhaustive (finite) or grid-sampled (function-backed) check of pm1-pm4
/// with the given coefficient. A failing pm4 reports the triple with the
/// largest violation ratio.
template <PartialSpace S>
AxiomReport<S> verify_axioms(const S& space, const scalar_t<S>& s)
{
    using Scalar = scalar_t<S>;
    if (s < 1) throw ParameterError("coefficient s must be >= 1");
    const auto pts = detail::point_list(space);
    if constexpr (!S::is_exact) {
        if (pts.size() < 2) throw PreconditionError("sampling grid needs at least 2 points");
    }
    const auto tol = space.tolerance();

    AxiomReport<S> report;
    report.s = s;
    report.sampled = !S::is_exact;
    detail::check_pairs(space, pts, report);

    // Violations are ranked by lhs / (p(x,z) + p(z,y)); a zero sum ranks highest.
    std::optional<Scalar> worst;
    bool worst_infinite = false;
    for (const auto& x : pts) {
        for (const auto& y : pts) {
            for (const auto& z : pts) {
                const Scalar lhs = space.distance(x, y) + space.distance(z, z);
                const Scalar sum = space.distance(x, z) + space.distance(z, y);
                const Scalar rhs = s * sum;
                if (leq(lhs, rhs, tol)) continue;
                const bool infinite = !is_positive(sum, tol);
                bool better = false;
                if (report.pm4.pass) better = true;
                else if (worst_infinite) better = false;
                else if (infinite) better = true;
                else better = Scalar(lhs / sum) > *worst;
                if (better) {
                    report.pm4 = {false, {x, y, z}};
                    worst_infinite = infinite;
                    if (!infinite) worst = Scalar(lhs / sum);
                }
            }
        }
    }
    if constexpr (S::is_exact) {
        if (report.pm1.pass && report.pm2.pass && report.pm3.pass)
            report.minimal_s = minimal_coefficient(space).value;
    }
    return report;
}

template <PartialSpace S>
AxiomReport<S> verify_axioms(const S& space)
{
    return verify_axioms(space, space.declared_s());
}

template <PartialSpace S>
struct UltraReport {
    bool ultra = true;
    std::optional<std::array<point_t<S>, 3>> witness;
};

/// Partial ultra-metric test: p(x,y) + p(z,z) <= max{p(x,z), p(z,y)} on all
/// triples. Reports the first violating triple in scan order.
template <PartialSpace S>
UltraReport<S> is_ultra(const S& space)
{
    const auto pts = detail::point_list(space);
    {
        AxiomReport<S> pre;
        detail::check_pairs(space, pts, pre);
        if (!pre.pm1.pass || !pre.pm2.pass || !pre.pm3.pass)
            throw AxiomViolation("ultra-metric check requires pm1-pm3 to hold");
    }
    const auto tol = space.tolerance();
    for (const auto& x : pts) {
        for (const auto& y : pts) {
            for (const auto& z : pts) {
                const scalar_t<S> lhs = space.distance(x, y) + space.distance(z, z);
                const auto& a = space.distance(x, z);
                const auto& b = space.distance(z, y);
                const scalar_t<S> rhs = a < b ? b : a;
                if (!leq(lhs, rhs, tol))
                    return {false, std::array<point_t<S>, 3>{x, y, z}};
            }
        }
    }
    return {};
}

struct EquivalenceResult {
    /// (alpha, beta) with alpha p1 <= p2 <= beta p1; empty when no such
    /// pair with alpha > 0 exists.
    std::optional<std::pair<Rational, Rational>> constants;
    /// Pair responsible for a degenerate result, or the pairs attaining
    /// alpha / beta.
    std::optional<std::pair<std::size_t, std::size_t>> alpha_witness;
    std::optional<std::pair<std::size_t, std::size_t>> beta_witness;
    std::string reason;
};

/// Tightest two-sided comparison constants between two finite metrics.
/// Pairs where both metrics vanish are skipped.
inline EquivalenceResult equivalence_constants(const MetricPair& pair)
{
    const auto& p1 = pair.first;
    const auto& p2 = pair.second;
    EquivalenceResult result;
    std::optional<Rational> alpha;
    std::optional<Rational> beta;
    for (std::size_t x = 0; x < p1.size(); ++x) {
        for (std::size_t y = 0; y < p1.size(); ++y) {
            const Rational& a = p1(x, y);
            const Rational& b = p2(x, y);
            if (a == 0) {
                if (b != 0) {
                    result.alpha_witness = std::pair{x, y};
                    result.reason = "p1 vanishes where p2 does not";
                    return result;
                }
                continue;
            }
            const Rational ratio = b / a;
            if (!alpha || ratio < *alpha) {
                alpha = ratio;
                result.alpha_witness = std::pair{x, y};
            }
            if (!beta || ratio > *beta) {
                beta = ratio;
                result.beta_witness = std::pair{x, y};
            }
        }
    }
    if (!alpha) {
        // Both metrics vanish identically: trivially comparable.
        result.constants = std::pair{Rational(1), Rational(1)};
        return result;
    }
    if (*alpha == 0) {
        result.reason = "lower constant degenerates to 0";
        return result;
    }
    result.constants = std::pair{*alpha, *beta};
    return result;
}

/// Membership in the open ball B'(center, eps) = {y : p(center,y) < eps + p(center,center)}.
template <PartialSpace S>
bool ball_contains(const S& space, const point_t<S>& center, const scalar_t<S>& eps, const point_t<S>& y)
{
    if (!(eps > 0)) throw ParameterError("ball radius must be positive");
    return space.distance(center, y) < eps + space.distance(center, center);
}

} // namespace pbm
