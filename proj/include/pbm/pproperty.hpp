#pragma once

#include "contraction.hpp"
#include "errors.hpp"
#include "picard.hpp"
#include "self_map.hpp"
#include "space.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pbm {

struct PowerFixedPoints {
    unsigned n;
    std::vector<std::size_t> points;
};

struct PPropertyReport {
    std::vector<std::size_t> base;             ///< F(T)
    std::vector<PowerFixedPoints> powers;      ///< F(T^n), n = 2..n_max
    bool holds = true;                         ///< every F(T^n) equals F(T)
    std::optional<std::pair<unsigned, std::size_t>> first_violation;  ///< (n, point in F(T^n) \ F(T))
    Rational eq211_lambda;
    bool eq211_admissible = false;
    /// Sufficient condition applies: eq211 constant < 1 and F(T) nonempty.
    bool sufficient_condition_applies = false;
    /// The sufficient condition applied but the property failed.
    bool falsified = false;
    /// F(T) is a subset of every F(T^n).
    bool inclusion_holds = true;
    std::string notice;
};

/// Default power bound: the number of points.
inline unsigned default_pproperty_nmax(const FiniteSpace& space)
{
    return static_cast<unsigned>(std::max<std::size_t>(2, space.size()));
}

/// Compares F(T) with F(T^n) for n = 2..n_max on a finite space.
inline PPropertyReport p_property(const FiniteSpace& space, const FiniteMap& map, unsigned n_max)
{
    map.validate(space);
    if (n_max < 2) throw ParameterError("n_max must be at least 2");
    PPropertyReport report;
    report.base = fixed_points(space, map).points;

    FiniteMap power = map;
    for (unsigned n = 2; n <= n_max; ++n) {
        power = map.after(power);
        PowerFixedPoints entry{n, fixed_points(space, power).points};
        if (!std::includes(entry.points.begin(), entry.points.end(), report.base.begin(), report.base.end()))
            report.inclusion_holds = false;
        if (entry.points != report.base) {
            if (report.holds) {
                for (auto x : entry.points) {
                    if (!std::binary_search(report.base.begin(), report.base.end(), x)) {
                        report.first_violation = std::pair{n, x};
                        break;
                    }
                }
            }
            report.holds = false;
        }
        report.powers.push_back(std::move(entry));
    }

    const auto eq211 = check_eq211(space, map);
    report.eq211_lambda = eq211.constant;
    report.eq211_admissible = eq211.admissible;
    if (report.base.empty()) {
        report.notice = "F(T) is empty; sufficient-condition check skipped";
    } else {
        report.sufficient_condition_applies = eq211.admissible;
        report.falsified = report.sufficient_condition_applies && !report.holds;
    }
    return report;
}

inline PPropertyReport p_property(const FiniteSpace& space, const FiniteMap& map)
{
    return p_property(space, map, default_pproperty_nmax(space));
}

} // namespace pbm
