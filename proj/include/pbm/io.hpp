#pragma once

#include "axioms.hpp"
#include "contraction.hpp"
#include "errors.hpp"
#include "picard.hpp"
#include "pproperty.hpp"
#include "rational.hpp"
#include "self_map.hpp"
#include "space.hpp"
#include "stability.hpp"
#include "transform.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

namespace pbm {

using Json = nlohmann::ordered_json;

using AnySpace = std::variant<FiniteSpace, SampledSpace>;
using AnyMap = std::variant<FiniteMap, ExpShiftMap>;

namespace io {

inline Json scalar(const Rational& v) { return to_string(v); }
inline Json scalar(double v) { return v; }

inline Json point(const FiniteSpace& space, std::size_t x) { return space.label(x); }
inline Json point(const SampledSpace&, double x) { return x; }

template <class S, class Pair>
Json pair(const S& space, const Pair& p)
{
    return Json::array({point(space, p.first), point(space, p.second)});
}

template <class S, class Seq>
Json points(const S& space, const Seq& seq)
{
    Json out = Json::array();
    for (const auto& x : seq) out.push_back(point(space, x));
    return out;
}

template <class Seq>
Json scalars(const Seq& seq)
{
    Json out = Json::array();
    for (const auto& v : seq) out.push_back(scalar(v));
    return out;
}

inline Rational rational_field(const Json& value, const std::string& field)
{
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const FormatError& e) {
            throw FormatError("field '" + field + "': " + e.what());
        }
    }
    if (value.is_number_integer()) return Rational(value.get<long>());
    throw FormatError("field '" + field + "' must be an integer or an \"a/b\" string");
}

inline double real_field(const Json& value, const std::string& field)
{
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        try {
            return to_double(parse_rational(value.get<std::string>()));
        } catch (const FormatError& e) {
            throw FormatError("field '" + field + "': " + e.what());
        }
    }
    throw FormatError("field '" + field + "' must be a number");
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& context)
{
    if (!obj.is_object() || !obj.contains(key)) throw FormatError(context + ": missing field '" + key + "'");
    return obj.at(key);
}

/// 64-bit FNV-1a over a canonical dump.
inline std::string fnv1a_hex(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace io

inline Json to_json(const FiniteSpace& space)
{
    Json table = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < space.size(); ++j) row.push_back(to_string(space(i, j)));
        table.push_back(std::move(row));
    }
    return Json{{"points", space.labels()}, {"p", std::move(table)}, {"declared_s", to_string(space.declared_s())}};
}

inline Json to_json(const SampledSpace& space)
{
    return Json{{"interval", Json::array({space.lo(), space.hi()})},
                {"formula", "abs_diff_pow_k"},
                {"k", space.k()},
                {"grid", space.grid()},
                {"declared_s", space.declared_s()},
                {"tolerance", space.tolerance()}};
}

inline Json to_json(const AnySpace& space)
{
    return std::visit([](const auto& s) { return to_json(s); }, space);
}

inline FiniteSpace finite_space_from_json(const Json& j)
{
    const Json& pts = io::require(j, "points", "space");
    if (!pts.is_array()) throw FormatError("field 'points' must be an array of strings");
    std::vector<std::string> labels;
    for (const auto& p : pts) {
        if (!p.is_string()) throw FormatError("field 'points' must be an array of strings");
        labels.push_back(p.get<std::string>());
    }
    const Json& rows = io::require(j, "p", "space");
    if (!rows.is_array()) throw FormatError("field 'p' must be a square array");
    std::vector<std::vector<Rational>> table;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array()) throw FormatError("field 'p' row " + std::to_string(i) + " is not an array");
        std::vector<Rational> row;
        for (std::size_t k = 0; k < rows[i].size(); ++k)
            row.push_back(io::rational_field(rows[i][k], "p[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        table.push_back(std::move(row));
    }
    Rational s = j.contains("declared_s") ? io::rational_field(j.at("declared_s"), "declared_s") : Rational(1);
    try {
        return FiniteSpace(std::move(labels), table, s);
    } catch (const ParameterError& e) {
        throw FormatError(std::string("field 'declared_s': ") + e.what());
    }
}

inline SampledSpace sampled_space_from_json(const Json& j)
{
    const Json& interval = io::require(j, "interval", "space");
    if (!interval.is_array() || interval.size() != 2) throw FormatError("field 'interval' must be [lo, hi]");
    const Json& formula = io::require(j, "formula", "space");
    if (!formula.is_string() || formula.get<std::string>() != "abs_diff_pow_k")
        throw FormatError("field 'formula': only \"abs_diff_pow_k\" is supported");
    const double k = io::real_field(io::require(j, "k", "space"), "k");
    const Json& grid = io::require(j, "grid", "space");
    if (!grid.is_number_integer() || grid.get<long>() < 2) throw FormatError("field 'grid' must be an integer >= 2");
    const double lo = io::real_field(interval[0], "interval[0]");
    const double hi = io::real_field(interval[1], "interval[1]");
    const double s = j.contains("declared_s") ? io::real_field(j.at("declared_s"), "declared_s") : std::pow(2.0, k);
    const double tol = j.contains("tolerance") ? io::real_field(j.at("tolerance"), "tolerance") : 1e-12;
    try {
        return SampledSpace(lo, hi, grid.get<std::size_t>(), k, s, tol);
    } catch (const ParameterError& e) {
        throw FormatError(std::string("space: ") + e.what());
    }
}

inline AnySpace space_from_json(const Json& j)
{
    if (!j.is_object()) throw FormatError("space file must hold a JSON object");
    if (j.contains("points")) return finite_space_from_json(j);
    if (j.contains("interval")) return sampled_space_from_json(j);
    throw FormatError("space: expected field 'points' (finite) or 'interval' (function-backed)");
}

inline Json to_json(const FiniteSpace& space, const FiniteMap& map)
{
    Json table = Json::object();
    for (std::size_t x = 0; x < map.size(); ++x) table[space.label(x)] = space.label(map(x));
    return Json{{"map", std::move(table)}};
}

inline Json to_json(const ExpShiftMap& map) { return Json{{"formula", "exp_shift"}, {"lambda", map.shift}}; }

inline FiniteMap finite_map_from_json(const Json& j, const FiniteSpace& space)
{
    const Json& table = io::require(j, "map", "map");
    if (!table.is_object()) throw FormatError("field 'map' must be an object point -> point");
    std::vector<std::size_t> image(space.size(), space.size());
    for (const auto& [key, value] : table.items()) {
        if (!value.is_string()) throw FormatError("field 'map." + key + "' must name a point");
        std::size_t from = 0;
        std::size_t to = 0;
        try {
            from = space.index_of(key);
        } catch (const PreconditionError&) {
            throw FormatError("field 'map': unknown source point '" + key + "'");
        }
        try {
            to = space.index_of(value.get<std::string>());
        } catch (const PreconditionError&) {
            throw FormatError("field 'map." + key + "': unknown image point '" + value.get<std::string>() + "'");
        }
        image[from] = to;
    }
    for (std::size_t x = 0; x < image.size(); ++x)
        if (image[x] == space.size()) throw FormatError("field 'map': no image for point '" + space.label(x) + "'");
    return FiniteMap(space, std::move(image));
}

inline AnyMap map_from_json(const Json& j, const AnySpace& space)
{
    if (!j.is_object()) throw FormatError("map file must hold a JSON object");
    if (j.contains("map")) {
        if (!std::holds_alternative<FiniteSpace>(space))
            throw FormatError("field 'map': a table map needs a finite space");
        return finite_map_from_json(j, std::get<FiniteSpace>(space));
    }
    if (j.contains("formula")) {
        const Json& f = j.at("formula");
        if (!f.is_string() || f.get<std::string>() != "exp_shift")
            throw FormatError("field 'formula': only \"exp_shift\" is supported");
        if (!std::holds_alternative<SampledSpace>(space))
            throw FormatError("field 'formula': a closed-form map needs a function-backed space");
        return ExpShiftMap{io::real_field(io::require(j, "lambda", "map"), "lambda")};
    }
    throw FormatError("map: expected field 'map' or 'formula'");
}

inline Json to_json(const TransformedSpace& t)
{
    Json out = to_json(t.space);
    Json prov{{"base_hash", io::fnv1a_hex(to_json(t.base).dump())},
              {"map_hash", io::fnv1a_hex(to_json(t.base, t.map).dump())},
              {"n", t.n},
              {"K", to_string(t.K)},
              {"lambda", to_string(t.lambda)},
              {"mode", std::string(to_string(t.mode))}};
    if (t.mode == TransformMode::series) prov["truncation_error"] = to_string(t.truncation_error);
    out["provenance"] = std::move(prov);
    return out;
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("'" + path + "' is not valid JSON: " + e.what());
    }
}

// ---- reports ---------------------------------------------------------------

template <PartialSpace S>
Json to_json(const S& space, const AxiomReport<S>& r)
{
    auto check = [&](const AxiomCheck<point_t<S>>& c) {
        Json j{{"pass", c.pass}};
        if (!c.pass) j["witness"] = io::points(space, c.witness);
        return j;
    };
    Json out{{"s", io::scalar(r.s)},
             {"pm1", check(r.pm1)},
             {"pm2", check(r.pm2)},
             {"pm3", check(r.pm3)},
             {"pm4", check(r.pm4)},
             {"all_pass", r.all_pass()},
             {"label", r.sampled ? "sampled" : "exhaustive"}};
    if (r.minimal_s) out["minimal_s"] = io::scalar(*r.minimal_s);
    return out;
}

template <PartialSpace S>
Json to_json(const S& space, const CoefficientResult<S>& r)
{
    Json out{{"minimal_s", io::scalar(r.value)}, {"label", r.sampled ? "sampled" : "exact"}};
    if (r.witness) out["witness"] = io::points(space, *r.witness);
    return out;
}

template <PartialSpace S>
Json to_json(const S& space, const UltraReport<S>& r)
{
    Json out{{"ultra", r.ultra}};
    if (r.witness) out["witness"] = io::points(space, *r.witness);
    return out;
}

inline Json to_json(const FiniteSpace& space, const EquivalenceResult& r)
{
    Json out{{"equivalent", r.constants.has_value()}};
    if (r.constants) {
        out["alpha"] = to_string(r.constants->first);
        out["beta"] = to_string(r.constants->second);
    } else {
        out["reason"] = r.reason;
    }
    if (r.alpha_witness) out["alpha_witness"] = io::pair(space, *r.alpha_witness);
    if (r.beta_witness) out["beta_witness"] = io::pair(space, *r.beta_witness);
    return out;
}

template <PartialSpace S>
Json to_json(const S& space, const ContractionReport<S>& r)
{
    Json out{{"condition", std::string(to_string(r.condition))},
             {"constant", r.finite ? io::scalar(r.constant) : Json("infinite")},
             {"admissible", r.admissible}};
    if (r.threshold) out["threshold"] = io::scalar(*r.threshold);
    if (r.witness) out["witness"] = io::pair(space, *r.witness);
    if (r.sharp) out["sharp_region"] = *r.sharp;
    if (r.holds_on_all_pairs) out["holds_on_all_pairs"] = *r.holds_on_all_pairs;
    if (r.violation) out["violation"] = io::pair(space, *r.violation);
    if (r.parameter_sum) out["parameter_sum"] = io::scalar(*r.parameter_sum);
    if (r.rate) out["picard_rate"] = io::scalar(*r.rate);
    out["label"] = r.sampled ? "sampled" : "exact";
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

template <PartialSpace S>
Json to_json(const S& space, const PowerReport<S>& r)
{
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json j = to_json(space, e.report);
        j["n"] = e.n;
        entries.push_back(std::move(j));
    }
    Json out{{"condition", "power"}, {"powers", std::move(entries)}};
    out["least_admissible_n"] = r.least_admissible ? Json(*r.least_admissible) : Json(nullptr);
    return out;
}

template <PartialSpace S>
Json to_json(const S& space, const IterationTrace<S>& t)
{
    Json out{{"orbit", io::points(space, t.orbit)},
             {"b", io::scalars(t.b)},
             {"verdict", std::string(to_string(t.verdict))},
             {"iterations", t.iterations}};
    if (t.fixed_point) {
        out["fixed_point"] = io::point(space, *t.fixed_point);
        out["self_distance"] = io::scalar(*t.self_distance);
        out["label"] = t.numerical ? "numerical" : "exact";
    }
    return out;
}

template <class Scalar>
Json to_json(const RateCertificate<Scalar>& c)
{
    auto checks = [](const std::vector<RateCheck<Scalar>>& v, bool tail) {
        Json arr = Json::array();
        for (const auto& k : v) {
            Json j{{"n", k.n}, {"observed", io::scalar(k.observed)}, {"bound", io::scalar(k.bound)}, {"pass", k.pass}};
            if (tail) j["m"] = k.m;
            arr.push_back(std::move(j));
        }
        return arr;
    };
    return Json{{"mu", io::scalar(c.mu)},
                {"s", io::scalar(c.s)},
                {"step_checks", checks(c.step_checks, false)},
                {"tail_checked", c.tail_checked},
                {"tail_checks", checks(c.tail_checks, true)},
                {"all_pass", c.all_pass}};
}

inline Json to_json(const FiniteSpace& space, const FixedPointSet& f)
{
    return Json{{"fixed_points", io::points(space, f.points)},
                {"self_distances", io::scalars(f.self_distances)},
                {"unique", f.unique()}};
}

inline Json to_json(const FiniteSpace& space, const TransformCheck& c)
{
    Json out{{"contraction", c.contraction}, {"identity", c.identity}, {"dominates_base", c.dominates_base}};
    if (c.contraction_failure) out["contraction_failure"] = io::pair(space, *c.contraction_failure);
    if (c.identity_failure) out["identity_failure"] = io::pair(space, *c.identity_failure);
    return out;
}

inline Json to_json(const FiniteSpace& space, const SandwichCheck& c)
{
    Json out{{"holds", c.holds}, {"factor", to_string(c.factor)}};
    if (c.failure) out["failure"] = io::pair(space, *c.failure);
    return out;
}

inline Json to_json(const FiniteSpace& space, const TransferReport& r)
{
    Json out{{"verdict", std::string(to_string(r.verdict))}};
    if (r.limit) out["limit"] = space.label(*r.limit);
    if (!r.reason.empty()) out["reason"] = r.reason;
    return out;
}

template <PartialSpace S>
Json to_json(const S& space, const StabilityTrial<S>& t)
{
    Json out{{"q", io::point(space, t.q)},
             {"steps", t.y.size()},
             {"a", io::scalars(t.a)},
             {"c", io::scalars(t.drift)},
             {"raw_drift", io::scalars(t.raw_drift)},
             {"verdict", std::string(to_string(t.verdict))}};
    if constexpr (S::is_exact) out["y"] = io::points(space, t.y);
    if (t.recurrence) {
        out["recurrence"] = Json{{"ratio", io::scalar(t.recurrence->ratio)},
                                 {"checked", t.recurrence->checked},
                                 {"failures", t.recurrence->failures}};
    }
    return out;
}

inline Json to_json(const FiniteSpace& space, const PPropertyReport& r)
{
    Json powers = Json::array();
    for (const auto& p : r.powers) powers.push_back(Json{{"n", p.n}, {"fixed_points", io::points(space, p.points)}});
    Json out{{"F(T)", io::points(space, r.base)},
             {"powers", std::move(powers)},
             {"holds", r.holds},
             {"inclusion_holds", r.inclusion_holds},
             {"eq211_lambda", to_string(r.eq211_lambda)},
             {"sufficient_condition_applies", r.sufficient_condition_applies},
             {"falsified", r.falsified}};
    if (r.first_violation)
        out["first_violation"] = Json{{"n", r.first_violation->first}, {"point", space.label(r.first_violation->second)}};
    if (!r.notice.empty()) out["notice"] = r.notice;
    return out;
}

} // namespace pbm
