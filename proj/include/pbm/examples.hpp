#pragma once

#include "axioms.hpp"
#include "contraction.hpp"
#include "io.hpp"
#include "picard.hpp"
#include "reference_instances.hpp"
#include "stability.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pbm {

/// One printed value that disagrees with what the rest of the worked
/// example forces.
struct Discrepancy {
    std::string item;
    std::string printed;
    std::string corrected;
    std::string evidence;
};

/// A line "p(Tx,Ty) = p(a,b) = v <= 3/4 w = 3/4 p(x,y)" of the worked
/// four-point computation, with points as 1-based labels.
struct WorkedLine {
    int x, y;
    int tx, ty;
    int image_value;
    int base_value;
};

/// The four-point example as printed.
struct PrintedFourPoint {
    std::vector<int> map;  ///< map[i] = T(i+1)
    std::vector<WorkedLine> lines;
};

inline PrintedFourPoint printed_four_point()
{
    return PrintedFourPoint{
        {1, 1, 3, 2},
        {
            {1, 2, 1, 1, 0, 3},
            {1, 3, 1, 2, 3, 4},
            {1, 4, 1, 2, 3, 13},
            {2, 3, 1, 2, 3, 4},
            {2, 4, 1, 2, 3, 8},
            {3, 4, 2, 2, 2, 5},
        },
    };
}

/// Checks every printed distance against the defining formula and every
/// printed image against the images the worked lines use.
inline std::vector<Discrepancy> four_point_discrepancies(const FiniteSpace& space, const PrintedFourPoint& printed)
{
    std::vector<Discrepancy> out;
    auto p = [&](int a, int b) { return space(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)); };
    auto note_distance = [&](int a, int b, int value) {
        const std::string item = "p(" + std::to_string(a) + "," + std::to_string(b) + ")";
        if (p(a, b) == value) return;
        for (const auto& d : out)
            if (d.item == item) return;
        out.push_back({item, std::to_string(value), to_string(p(a, b)), "defining formula"});
    };
    for (const auto& l : printed.lines) {
        note_distance(std::min(l.tx, l.ty), std::max(l.tx, l.ty), l.image_value);
        note_distance(l.x, l.y, l.base_value);
    }

    std::vector<std::optional<int>> used(printed.map.size());
    for (const auto& l : printed.lines) {
        used[static_cast<std::size_t>(l.x - 1)] = l.tx;
        used[static_cast<std::size_t>(l.y - 1)] = l.ty;
    }
    std::vector<std::size_t> printed_fixed;
    for (std::size_t i = 0; i < printed.map.size(); ++i)
        if (printed.map[i] == static_cast<int>(i + 1)) printed_fixed.push_back(i + 1);
    for (std::size_t i = 0; i < printed.map.size(); ++i) {
        if (!used[i] || *used[i] == printed.map[i]) continue;
        std::string evidence = "image used in the worked inequalities";
        if (printed_fixed.size() > 1) {
            evidence += "; printed map has fixed points";
            for (auto f : printed_fixed) evidence += " " + std::to_string(f);
        }
        out.push_back({"T" + std::to_string(i + 1), std::to_string(printed.map[i]), std::to_string(*used[i]),
                       std::move(evidence)});
    }
    return out;
}

struct Example1Report {
    FiniteSpace space;
    FiniteMap map;
    AxiomReport<FiniteSpace> axioms;  ///< at the declared s = 4
    CoefficientResult<FiniteSpace> minimal_s;
    ContractionReport<FiniteSpace> banach;
    ContractionReport<FiniteSpace> chatterjea;
    ContractionReport<FiniteSpace> ch2;
    ContractionReport<FiniteSpace> chka;  ///< lambda1 = Banach constant, lambda2..lambda5 = 0
    ContractionReport<FiniteSpace> eq211;
    FixedPointSet fixed;
    std::vector<IterationTrace<FiniteSpace>> traces;
    std::vector<Discrepancy> discrepancies;
};

inline Example1Report reproduce_example1()
{
    const auto space = reference::four_point_space();
    const auto map = reference::four_point_map();
    const Rational& s = space.declared_s();
    const auto banach = check_banach(space, map);
    ChkaParams<Rational> params;
    params[0] = banach.constant;
    Example1Report r{space,
                     map,
                     verify_axioms(space, s),
                     minimal_coefficient(space),
                     banach,
                     check_chatterjea(space, map, s),
                     check_ch2(space, map, s),
                     check_chka(space, map, params, s),
                     check_eq211(space, map),
                     fixed_points(space, map),
                     {},
                     four_point_discrepancies(space, printed_four_point())};
    for (std::size_t x = 0; x < space.size(); ++x) r.traces.push_back(iterate(space, map, x, space.size() + 1));
    return r;
}

struct Example2Report {
    double k = 2;
    double shift = 2;
    SampledSpace space = reference::interval_space();
    IterationTrace<SampledSpace> trace;
    double u = 0;
    double residual = 0;  ///< |u - e^(u - shift)|
    /// p(x_{n+1},u)/p(x_n,u) over the recorded steps with p(x_n,u) > 0.
    std::vector<double> step_ratios;
    double max_step_ratio = 0;
    double lambda1 = 0;  ///< (e^(1-shift))^k
    ContractionReport<SampledSpace> banach;  ///< grid estimate
    double s_customary = 0;  ///< 2^k
    double s_sharp = 0;      ///< 2^(k-1)
    Main3Result<double> stable_customary;
    Main3Result<double> stable_sharp;
    StabilityTrial<SampledSpace> stability;
    double final_gap = 0;  ///< |y_N - u|
};

inline constexpr std::size_t example2_stability_steps = 10000;

inline Example2Report reproduce_example2(double k = 2, double shift = 2, std::size_t steps = example2_stability_steps)
{
    Example2Report r;
    r.k = k;
    r.shift = shift;
    r.space = reference::interval_space(k);
    const auto map = reference::interval_map(shift);
    r.trace = iterate(r.space, map, 1.0, 200, 1e-24);
    r.u = r.trace.orbit.back();
    r.residual = std::abs(r.u - map(r.u));
    for (std::size_t n = 0; n + 1 < r.trace.orbit.size(); ++n) {
        const double den = r.space(r.trace.orbit[n], r.u);
        if (!(den > 0)) break;
        const double ratio = r.space(r.trace.orbit[n + 1], r.u) / den;
        r.step_ratios.push_back(ratio);
        r.max_step_ratio = std::max(r.max_step_ratio, ratio);
    }
    r.lambda1 = std::pow(std::exp(1 - shift), k);
    r.banach = check_banach(r.space, map);
    r.s_customary = std::pow(2.0, k);
    r.s_sharp = std::pow(2.0, k - 1);
    ChkaParams<double> params;
    params[0] = r.lambda1;
    r.stable_customary = main3_condition(params, r.s_customary);
    r.stable_sharp = main3_condition(params, r.s_sharp);
    r.stability = run_perturbed(r.space, map, r.u, scaled_fixed_point_schedule(r.u, steps), steps,
                                std::optional{params});
    r.final_gap = std::abs(r.stability.y.back() - r.u);
    return r;
}

inline Json to_json(const Discrepancy& d)
{
    return Json{{"item", d.item}, {"printed", d.printed}, {"corrected", d.corrected}, {"evidence", d.evidence}};
}

inline Json to_json(const Example1Report& r)
{
    Json traces = Json::array();
    for (const auto& t : r.traces) traces.push_back(to_json(r.space, t));
    Json discrepancies = Json::array();
    for (const auto& d : r.discrepancies) discrepancies.push_back(to_json(d));
    return Json{{"example", 1},
                {"space", to_json(r.space)},
                {"map", to_json(r.space, r.map)},
                {"axioms", to_json(r.space, r.axioms)},
                {"minimal_s", to_json(r.space, r.minimal_s)},
                {"constants",
                 Json{{"banach", to_json(r.space, r.banach)},
                      {"chatterjea", to_json(r.space, r.chatterjea)},
                      {"ch2", to_json(r.space, r.ch2)},
                      {"chka", to_json(r.space, r.chka)},
                      {"eq211", to_json(r.space, r.eq211)}}},
                {"fixed_points", to_json(r.space, r.fixed)},
                {"iterations", std::move(traces)},
                {"discrepancies", std::move(discrepancies)}};
}

inline Json to_json(const Example2Report& r)
{
    const auto& st = r.stability;
    double tail_drift = 0;
    for (std::size_t n = tail_start(st.drift.size()); n < st.drift.size(); ++n)
        tail_drift = std::max(tail_drift, st.drift[n]);
    Json stability{{"schedule", "y_n = n/(n+1) u"},
                   {"steps", st.y.size()},
                   {"max_tail_drift", tail_drift},
                   {"final_a", st.a.back()},
                   {"final_gap", r.final_gap},
                   {"verdict", std::string(to_string(st.verdict))}};
    if (st.recurrence)
        stability["recurrence"] = Json{{"ratio", st.recurrence->ratio},
                                       {"checked", st.recurrence->checked},
                                       {"failures", st.recurrence->failures}};
    auto main3 = [](const Main3Result<double>& m) {
        Json j{{"holds", m.holds}, {"lhs", m.lhs}};
        if (m.step_factor) j["step_factor"] = *m.step_factor;
        return j;
    };
    return Json{{"example", 2},
                {"space", to_json(r.space)},
                {"map", to_json(ExpShiftMap{r.shift})},
                {"fixed_point", r.u},
                {"residual", r.residual},
                {"iterations", r.trace.iterations},
                {"verdict", std::string(to_string(r.trace.verdict))},
                {"max_step_ratio", r.max_step_ratio},
                {"lambda1", r.lambda1},
                {"banach_grid_estimate", to_json(r.space, r.banach)},
                {"s_customary", r.s_customary},
                {"s_sharp", r.s_sharp},
                {"stability_condition_customary_s", main3(r.stable_customary)},
                {"stability_condition_sharp_s", main3(r.stable_sharp)},
                {"stability", std::move(stability)}};
}

} // namespace pbm
