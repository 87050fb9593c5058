#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "self_map.hpp"
#include "space.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pbm {

enum class Condition { banach, power, chatterjea, ch2, chka, eq211 };

inline std::string_view to_string(Condition c)
{
    switch (c) {
    case Condition::banach: return "banach";
    case Condition::power: return "power";
    case Condition::chatterjea: return "chatterjea";
    case Condition::ch2: return "ch2";
    case Condition::chka: return "chka";
    case Condition::eq211: return "eq211";
    }
    return "unknown";
}

template <PartialSpace S>
struct ContractionReport {
    using Point = point_t<S>;
    using Scalar = scalar_t<S>;

    Condition condition = Condition::banach;
    /// Minimal admissible constant (for chka: the least lambda1 that makes the
    /// five-term inequality hold given lambda2..lambda5).
    Scalar constant{};
    /// False when some pair has a zero denominator but a positive left side.
    bool finite = true;
    std::optional<std::pair<Point, Point>> witness;
    bool admissible = false;
    std::optional<Scalar> threshold;
    /// Function-backed spaces: the constant is a sampled lower bound of the
    /// true supremum.
    bool sampled = false;
    /// Chatterjea only: s >= sqrt(2), the region the sharper statement covers.
    std::optional<bool> sharp;

    // Chatterjea-Kannan extras.
    std::optional<bool> holds_on_all_pairs;
    std::optional<std::pair<Point, Point>> violation;
    std::optional<Scalar> parameter_sum;
    std::optional<Scalar> rate;

    std::string note;
};

namespace detail {

/// Running maximum of num/den over the scanned pairs; 0/0 instances are
/// skipped and num>0 over den==0 marks the constant infinite.
template <PartialSpace S>
struct RatioScan {
    using Point = point_t<S>;
    using Scalar = scalar_t<S>;

    explicit RatioScan(Scalar tolerance) : tol(std::move(tolerance)) {}

    Scalar tol;
    Scalar best = 0;
    bool finite = true;
    std::optional<std::pair<Point, Point>> witness;

    void offer(const Scalar& num, const Scalar& den, const Point& x, const Point& y)
    {
        if (!finite) return;
        if (!is_positive(den, tol)) {
            if (is_positive(num, tol)) {
                finite = false;
                witness = std::pair{x, y};
            }
            return;
        }
        Scalar ratio = num / den;
        if (!witness || ratio > best) {
            best = std::move(ratio);
            witness = std::pair{x, y};
        }
    }

    void fill(ContractionReport<S>& report) const
    {
        report.finite = finite;
        report.constant = finite ? best : Scalar(0);
        report.witness = witness;
        if (!finite) report.note = "no finite constant";
    }
};

template <PartialSpace S>
std::vector<point_t<S>> scan_points(const S& space)
{
    std::vector<point_t<S>> pts;
    for (auto x : space.points()) pts.push_back(x);
    return pts;
}

template <PartialSpace S>
void mark_sampled(ContractionReport<S>& report)
{
    if constexpr (!S::is_exact) {
        report.sampled = true;
        if (!report.note.empty()) report.note += "; ";
        report.note += "sampled lower bound of the true supremum";
    }
}

} // namespace detail

/// p(Tx,Ty) <= lambda p(x,y): the least lambda over all ordered pairs
/// (equal pairs included); admissible iff lambda < 1.
template <PartialSpace S, class Map>
ContractionReport<S> check_banach(const S& space, const Map& map)
{
    using Scalar = scalar_t<S>;
    const auto pts = detail::scan_points(space);
    detail::RatioScan<S> scan{space.tolerance()};
    for (const auto& x : pts) {
        const auto tx = map(x);
        for (const auto& y : pts) {
            const auto ty = map(y);
            scan.offer(Scalar(space.distance(tx, ty)), Scalar(space.distance(x, y)), x, y);
        }
    }
    ContractionReport<S> report;
    report.condition = Condition::banach;
    scan.fill(report);
    report.threshold = Scalar(1);
    report.admissible = report.finite && report.constant < 1;
    detail::mark_sampled(report);
    return report;
}

template <PartialSpace S>
struct PowerEntry {
    unsigned n;
    ContractionReport<S> report;
};

template <PartialSpace S>
struct PowerReport {
    /// One entry per n = 2..n_max, K_n being the Banach constant of T^n.
    std::vector<PowerEntry<S>> entries;
    /// Least n with K_n < 1.
    std::optional<unsigned> least_admissible;
};

template <PartialSpace S, class Map>
PowerReport<S> check_power_banach(const S& space, const Map& map, unsigned n_max)
{
    if (n_max < 2) throw ParameterError("power check needs n_max >= 2");
    PowerReport<S> out;
    for (unsigned n = 2; n <= n_max; ++n) {
        auto report = check_banach(space, PowerMap{map, n});
        report.condition = Condition::power;
        if (!out.least_admissible && report.admissible) out.least_admissible = n;
        out.entries.push_back({n, std::move(report)});
    }
    return out;
}

/// p(Tx,Ty) <= lambda [p(x,Ty) + p(y,Tx)]; admissible iff s >= 2 and
/// lambda < 1/s^2.
template <PartialSpace S, class Map>
ContractionReport<S> check_chatterjea(const S& space, const Map& map, const scalar_t<S>& s)
{
    using Scalar = scalar_t<S>;
    if (s < 1) throw ParameterError("coefficient s must be >= 1");
    const auto pts = detail::scan_points(space);
    detail::RatioScan<S> scan{space.tolerance()};
    for (const auto& x : pts) {
        const auto tx = map(x);
        for (const auto& y : pts) {
            const auto ty = map(y);
            const Scalar den = space.distance(x, ty) + space.distance(y, tx);
            scan.offer(Scalar(space.distance(tx, ty)), den, x, y);
        }
    }
    ContractionReport<S> report;
    report.condition = Condition::chatterjea;
    scan.fill(report);
    const Scalar s2 = s * s;
    report.threshold = Scalar(1 / s2);
    report.admissible = report.finite && s >= 2 && report.constant < *report.threshold;
    report.sharp = s2 >= 2;
    detail::mark_sampled(report);
    return report;
}

/// p(Tx,Ty) <= lambda max{p(x,y), p(x,Ty), p(y,Tx)}; admissible iff
/// lambda < 1/s.
template <PartialSpace S, class Map>
ContractionReport<S> check_ch2(const S& space, const Map& map, const scalar_t<S>& s)
{
    using Scalar = scalar_t<S>;
    if (s < 1) throw ParameterError("coefficient s must be >= 1");
    const auto pts = detail::scan_points(space);
    detail::RatioScan<S> scan{space.tolerance()};
    for (const auto& x : pts) {
        const auto tx = map(x);
        for (const auto& y : pts) {
            const auto ty = map(y);
            Scalar den = space.distance(x, y);
            const Scalar a = space.distance(x, ty);
            const Scalar b = space.distance(y, tx);
            if (a > den) den = a;
            if (b > den) den = b;
            scan.offer(Scalar(space.distance(tx, ty)), den, x, y);
        }
    }
    ContractionReport<S> report;
    report.condition = Condition::ch2;
    scan.fill(report);
    report.threshold = Scalar(1 / s);
    report.admissible = report.finite && report.constant < *report.threshold;
    detail::mark_sampled(report);
    return report;
}

/// Coefficients of the joint Chatterjea-Kannan rational condition.
template <class Scalar>
struct ChkaParams {
    std::array<Scalar, 5> lambda{};

    const Scalar& operator[](std::size_t i) const { return lambda[i]; }
    Scalar& operator[](std::size_t i) { return lambda[i]; }

    /// lambda1 + lambda2 + 2 s lambda3 + s lambda4 + s lambda5
    Scalar parameter_sum(const Scalar& s) const
    {
        return Scalar(lambda[0] + lambda[1] + 2 * s * lambda[2] + s * lambda[3] + s * lambda[4]);
    }

    /// (2l1 + 2s l3 + s l4 + s l5) / (2 - 2l2 - 2s l3 - s l4 - s l5), the
    /// per-step Picard rate; empty when the denominator is not positive.
    std::optional<Scalar> picard_rate(const Scalar& s) const
    {
        const Scalar num = 2 * lambda[0] + 2 * s * lambda[2] + s * lambda[3] + s * lambda[4];
        const Scalar den = 2 - 2 * lambda[1] - 2 * s * lambda[2] - s * lambda[3] - s * lambda[4];
        if (!(den > 0)) return std::nullopt;
        return Scalar(num / den);
    }
};

/// The five correction terms (without lambdas) of the rational condition at
/// (x, y); index 0 is p(x,y) itself.
template <PartialSpace S, class Map>
std::array<scalar_t<S>, 5> chka_terms(const S& space, const Map& map, const point_t<S>& x, const point_t<S>& y)
{
    using Scalar = scalar_t<S>;
    const auto tx = map(x);
    const auto ty = map(y);
    const Scalar pxy = space.distance(x, y);
    const Scalar pxtx = space.distance(x, tx);
    const Scalar pyty = space.distance(y, ty);
    const Scalar pxty = space.distance(x, ty);
    const Scalar pytx = space.distance(y, tx);
    const Scalar den = 1 + pxy;
    return {pxy, Scalar(pxtx * pyty / den), Scalar(pxty * pytx / den), Scalar(pxtx * pxty / den),
            Scalar(pyty * pytx / den)};
}

/// Verifies the five-term inequality on every ordered pair for the supplied
/// coefficients. `constant` reports the least lambda1 that would make it
/// hold with lambda2..lambda5 fixed.
template <PartialSpace S, class Map>
ContractionReport<S> check_chka(const S& space, const Map& map, const ChkaParams<scalar_t<S>>& params,
                                const scalar_t<S>& s)
{
    using Scalar = scalar_t<S>;
    for (const auto& l : params.lambda)
        if (l < 0) throw ParameterError("Chatterjea-Kannan coefficients must be non-negative");
    if (s < 1) throw ParameterError("coefficient s must be >= 1");

    const auto pts = detail::scan_points(space);
    const Scalar tol = space.tolerance();
    ContractionReport<S> report;
    report.condition = Condition::chka;
    report.holds_on_all_pairs = true;
    detail::RatioScan<S> scan{tol};
    for (const auto& x : pts) {
        for (const auto& y : pts) {
            const auto terms = chka_terms(space, map, x, y);
            const Scalar lhs = space.distance(map(x), map(y));
            Scalar rest = 0;
            for (std::size_t i = 1; i < 5; ++i) rest += params[i] * terms[i];
            const Scalar rhs = params[0] * terms[0] + rest;
            if (*report.holds_on_all_pairs && !leq(lhs, rhs, tol)) {
                report.holds_on_all_pairs = false;
                report.violation = std::pair{x, y};
            }
            Scalar excess = lhs - rest;
            if (excess < 0) excess = 0;
            scan.offer(excess, terms[0], x, y);
        }
    }
    scan.fill(report);
    report.note.clear();
    report.parameter_sum = params.parameter_sum(s);
    report.threshold = Scalar(1);
    report.rate = params.picard_rate(s);
    report.admissible = *report.holds_on_all_pairs && *report.parameter_sum < 1;
    if (!report.finite) report.note = "no lambda1 alone can absorb some pair";
    detail::mark_sampled(report);
    return report;
}

/// p(Tx, T^2 x) <= lambda p(x, Tx) over points; admissible iff lambda < 1.
/// Points with p(x,Tx) = 0 are vacuous; all-vacuous yields lambda = 0.
template <PartialSpace S, class Map>
ContractionReport<S> check_eq211(const S& space, const Map& map)
{
    using Scalar = scalar_t<S>;
    const auto pts = detail::scan_points(space);
    detail::RatioScan<S> scan{space.tolerance()};
    for (const auto& x : pts) {
        const auto tx = map(x);
        const auto ttx = map(tx);
        scan.offer(Scalar(space.distance(tx, ttx)), Scalar(space.distance(x, tx)), x, x);
    }
    ContractionReport<S> report;
    report.condition = Condition::eq211;
    scan.fill(report);
    if (!report.finite) {
        // p(x,Tx) = 0 forces Tx = x, hence T^2 x = Tx: inconsistent data.
        throw AxiomViolation("p(x,Tx) = 0 but p(Tx,T^2x) > 0; the table violates pm1/pm2");
    }
    report.threshold = Scalar(1);
    report.admissible = report.constant < 1;
    detail::mark_sampled(report);
    return report;
}

} // namespace pbm
