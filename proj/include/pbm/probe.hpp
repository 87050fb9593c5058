#pragma once

#include "generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pbm {

struct Counterexample {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string reason;
    /// Space, map and any probe parameters, in the CLI file formats.
    Json instance;
};

struct SummaryStats {
    std::size_t count = 0;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0;

    void add(double v)
    {
        ++count;
        min = std::min(min, v);
        max = std::max(max, v);
        sum += v;
    }
    double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
};

struct WindowCounts {
    std::size_t hypothesis = 0;
    std::size_t verified = 0;
};

struct SearchReport {
    GenConfig config;
    std::size_t trials_run = 0;
    std::size_t hypothesis = 0;
    std::size_t verified = 0;
    std::vector<Counterexample> counterexamples;
    SummaryStats s_min;
    SummaryStats lambda;
    /// s-window probe only: s in [1, sqrt 2) and s in [sqrt 2, 2).
    WindowCounts open_window;
    WindowCounts sharp_window;
    /// Trial 0 carried the four-point reference instance.
    bool reference_injected = false;
    bool reference_hypothesis = false;
    bool reference_verified = false;
    /// Instances whose generation failed (resampling budget).
    std::size_t generation_errors = 0;
    /// Counterexamples whose only failure is the stated rate certificate
    /// (fixed point unique, p(u,u) = 0, reached from every start).
    std::size_t rate_only_failures = 0;
    /// Rate probes: certificate with the rate the b-triangle inequality
    /// supports, s l/(1 - s l) (Chatterjea) or max(l, s l/(1 - s l)) when
    /// s l < 1/2 (three-term max condition).
    std::size_t corrected_rate_checked = 0;
    std::size_t corrected_rate_failures = 0;

    bool sound() const { return !is_proved(config.target) || counterexamples.empty(); }
};

namespace detail {

struct TrialOutcome {
    bool hypothesis = false;
    bool verified = false;
    std::optional<Counterexample> counterexample;
    double s_min = 1;
    std::optional<double> lambda;
    int window = 0;  // 1: [1, sqrt2), 2: [sqrt2, 2)
    bool generation_error = false;
    bool rate_only = false;
    std::optional<bool> corrected_rate_pass;
};

/// Unique fixed point u with p(u,u) = 0 reached by Picard iteration from
/// every start. Returns a failure reason, or the traces on success.
inline std::optional<std::string> unique_fixed_point(const FiniteSpace& space, const FiniteMap& map,
                                                     std::vector<IterationTrace<FiniteSpace>>* traces = nullptr,
                                                     std::size_t* fixed = nullptr)
{
    const auto fps = fixed_points(space, map);
    if (fps.points.size() != 1)
        return "expected a unique fixed point, found " + std::to_string(fps.points.size());
    const std::size_t u = fps.points.front();
    if (space(u, u) != 0) return "fixed point " + space.label(u) + " has positive self-distance";
    for (std::size_t x = 0; x < space.size(); ++x) {
        auto trace = iterate(space, map, x, space.size() + 1);
        if (trace.verdict != Verdict::fixed_point_found || *trace.fixed_point != u)
            return "Picard iteration from " + space.label(x) + " does not reach " + space.label(u);
        if (traces) traces->push_back(std::move(trace));
    }
    if (fixed) *fixed = u;
    return std::nullopt;
}

inline std::optional<std::string> certify_all(const FiniteSpace& space,
                                              const std::vector<IterationTrace<FiniteSpace>>& traces,
                                              const Rational& mu, const Rational& s)
{
    for (const auto& trace : traces) {
        const auto cert = certify_rate(space, trace, mu, s);
        if (!cert.all_pass) {
            const auto f = *cert.first_failure();
            std::string where = f.m == 0 ? "b_" + std::to_string(f.n)
                                          : "p(x_" + std::to_string(f.n) + ",x_" + std::to_string(f.m) + ")";
            return "rate certificate mu=" + to_string(mu) + " fails from " + space.label(trace.orbit.front()) +
                   " at " + where + ": " + to_string(f.observed) + " > " + to_string(f.bound);
        }
    }
    return std::nullopt;
}

/// lambda2..lambda5 drawn from {0} U {k/64 : 1 <= k <= 8}; lambda1 is then
/// the least value making the five-term inequality hold.
inline ChkaParams<Rational> draw_chka_params(const FiniteSpace& space, const FiniteMap& map, const Rational& s,
                                             Rng& rng)
{
    ChkaParams<Rational> params;
    for (std::size_t i = 1; i < 5; ++i)
        params[i] = uniform(rng, 0, 1) == 0 ? Rational(0) : Rational(uniform(rng, 1, 8), 64);
    for (std::size_t i = 1; i < 5; ++i) params[i].canonicalize();
    const auto probe = check_chka(space, map, params, s);
    params[0] = probe.finite ? probe.constant : Rational(1);
    return params;
}

inline Json params_json(const ChkaParams<Rational>& p, const Rational& s)
{
    Json l = Json::array();
    for (const auto& v : p.lambda) l.push_back(to_string(v));
    return Json{{"lambdas", std::move(l)}, {"s", to_string(s)}};
}

/// A rational lambda with 1 < lambda and K lambda^n < 1.
inline Rational pick_transform_lambda(const Rational& K, unsigned n)
{
    const double upper = std::pow(to_double(K), -1.0 / static_cast<double>(n));
    Rational lambda(static_cast<long>(std::floor((1.0 + (upper - 1.0) / 2.0) * 1024.0)), 1024);
    lambda.canonicalize();
    // K close to 1 rounds the midpoint down to 1; restart above it.
    if (!(lambda > 1)) lambda = 2;
    while (!(K * ipow(lambda, n) < 1)) lambda = (1 + lambda) / 2;
    return lambda;
}

inline TrialOutcome run_trial(const GenConfig& config, std::size_t index)
{
    TrialOutcome out;
    const std::uint64_t seed = trial_seed(config.seed, index);
    Rng rng(seed);

    FiniteSpace space;
    FiniteMap map;
    const bool reference = config.target == ProbeTarget::s_window && config.inject_reference && index == 0;
    if (reference) {
        const auto base = reference::four_point_space();
        space = base.with_declared_s(minimal_coefficient(base).value);
        map = reference::four_point_map();
    } else {
        try {
            space = random_space(config, rng);
        } catch (const GenerationError&) {
            out.generation_error = true;
            return out;
        }
        map = random_map(space, rng);
    }
    const Rational& s_min = space.declared_s();
    out.s_min = to_double(s_min);

    Json instance{{"space", to_json(space)}, {"map", to_json(space, map)}};
    auto fail = [&](std::string reason, Json extra = Json()) {
        out.verified = false;
        Counterexample cx{index, seed, std::move(reason), instance};
        if (!extra.is_null()) cx.instance["params"] = std::move(extra);
        out.counterexample = std::move(cx);
    };

    switch (config.target) {
    case ProbeTarget::theorem_3: {
        const auto power = check_power_banach(space, map, config.n_max);
        if (!power.least_admissible) break;
        const unsigned n = *power.least_admissible;
        const Rational& measured = power.entries[n - 2].report.constant;
        const Rational K = measured > 0 ? measured : Rational(1, 4);
        out.lambda = to_double(K);
        const Rational lambda = pick_transform_lambda(K, n);
        out.hypothesis = true;
        Json params{{"n", n}, {"K", to_string(K)}, {"lambda", to_string(lambda)}};
        const auto t = build_pprime(space, map, n, K, lambda);
        if (!verify_axioms(t.space, space.declared_s()).all_pass()) {
            fail("transformed metric violates the axioms at the base coefficient", params);
            break;
        }
        const auto check = verify_transform_contraction(t);
        if (!check.pass()) {
            fail(check.contraction ? "entrywise identity fails" : "transformed contraction fails", params);
            break;
        }
        const auto h = build_h_series(t, Rational(1, 1000000));
        if (!h.sandwich.holds) {
            fail("series sandwich fails", params);
            break;
        }
        out.verified = true;
        break;
    }
    case ProbeTarget::theorem_5: {
        const Rational s = s_min < 2 ? Rational(2) : s_min;
        const auto r = check_chatterjea(space, map, s);
        if (r.finite) out.lambda = to_double(r.constant);
        if (!r.admissible) break;
        out.hypothesis = true;
        std::vector<IterationTrace<FiniteSpace>> traces;
        const Json params{{"s", to_string(s)}, {"lambda", to_string(r.constant)}};
        if (auto why = unique_fixed_point(space, map, &traces)) {
            fail(*why, params);
            break;
        }
        const Rational sl = s * r.constant;
        out.corrected_rate_pass = !certify_all(space, traces, Rational(sl / (1 - sl)), s);
        if (auto why = certify_all(space, traces, Rational(r.constant / (1 - r.constant)), s)) {
            out.rate_only = true;
            fail(*why, params);
            break;
        }
        out.verified = true;
        break;
    }
    case ProbeTarget::theorem_6: {
        const auto r = check_ch2(space, map, s_min);
        if (r.finite) out.lambda = to_double(r.constant);
        if (!r.admissible) break;
        out.hypothesis = true;
        std::vector<IterationTrace<FiniteSpace>> traces;
        const Json params{{"s", to_string(s_min)}, {"lambda", to_string(r.constant)}};
        if (auto why = unique_fixed_point(space, map, &traces)) {
            fail(*why, params);
            break;
        }
        const Rational sl = s_min * r.constant;
        if (sl < Rational(1, 2)) {
            const Rational mu = std::max(r.constant, Rational(sl / (1 - sl)));
            out.corrected_rate_pass = !certify_all(space, traces, mu, s_min);
        }
        if (auto why = certify_all(space, traces, r.constant, s_min)) {
            out.rate_only = true;
            fail(*why, params);
            break;
        }
        out.verified = true;
        break;
    }
    case ProbeTarget::theorem_7:
    case ProbeTarget::theorem_8:
    case ProbeTarget::chka_pproperty_conjecture: {
        const auto params = draw_chka_params(space, map, s_min, rng);
        const auto r = check_chka(space, map, params, s_min);
        out.lambda = to_double(*r.parameter_sum);
        if (!r.admissible) break;
        const Json pj = params_json(params, s_min);
        if (config.target == ProbeTarget::theorem_8) {
            if (!main3_condition(params, s_min).holds) break;
            out.hypothesis = true;
            std::size_t q = 0;
            if (auto why = unique_fixed_point(space, map, nullptr, &q)) {
                fail(*why, pj);
                break;
            }
            Rational r_noise = 0;
            for (std::size_t x = 0; x < space.size(); ++x)
                for (std::size_t y = 0; y < space.size(); ++y) r_noise = std::max(r_noise, space(x, y));
            if (r_noise == 0) r_noise = 1;
            const std::size_t steps = 4 * space.size() + 64;
            bool ok = true;
            for (std::size_t x = 0; x < space.size() && ok; ++x) {
                const auto y = geometric_noise_schedule(space, map, x, r_noise, steps);
                const auto trial = run_perturbed(space, map, q, y, steps, params);
                if (trial.verdict != StabilityVerdict::converged_to_q) {
                    fail("perturbed sequence from " + space.label(x) + " does not converge to the fixed point", pj);
                    ok = false;
                } else if (trial.recurrence && trial.recurrence->failures != 0) {
                    fail("stability recurrence fails from " + space.label(x), pj);
                    ok = false;
                }
            }
            out.verified = ok;
            break;
        }
        out.hypothesis = true;
        if (config.target == ProbeTarget::chka_pproperty_conjecture) {
            const auto report = p_property(space, map, config.n_max);
            if (!report.holds) {
                fail("F(T^" + std::to_string(report.first_violation->first) + ") differs from F(T)", pj);
                break;
            }
            out.verified = true;
            break;
        }
        std::vector<IterationTrace<FiniteSpace>> traces;
        if (auto why = unique_fixed_point(space, map, &traces)) {
            fail(*why, pj);
            break;
        }
        if (!r.rate) {
            fail("no Picard rate for admissible parameters", pj);
            break;
        }
        if (auto why = certify_all(space, traces, *r.rate, s_min)) {
            out.rate_only = true;
            fail(*why, pj);
            break;
        }
        out.verified = true;
        break;
    }
    case ProbeTarget::theorem_9: {
        const auto report = p_property(space, map, config.n_max);
        out.lambda = to_double(report.eq211_lambda);
        if (!report.inclusion_holds) {
            fail("F(T) is not contained in some F(T^n)");
            break;
        }
        if (!report.sufficient_condition_applies) break;
        out.hypothesis = true;
        if (!report.holds) {
            fail("F(T^" + std::to_string(report.first_violation->first) + ") differs from F(T)",
                 Json{{"eq211_lambda", to_string(report.eq211_lambda)}});
            break;
        }
        out.verified = true;
        break;
    }
    case ProbeTarget::corollary_1: {
        const auto power = check_power_banach(space, map, config.n_max);
        if (!power.least_admissible) break;
        const unsigned n = *power.least_admissible;
        out.lambda = to_double(power.entries[n - 2].report.constant);
        out.hypothesis = true;
        const Json params{{"n", n}, {"K", to_string(power.entries[n - 2].report.constant)}};
        const auto fp_power = fixed_points(space, map.power(n));
        const auto fp = fixed_points(space, map);
        if (fp_power.points.size() != 1) {
            fail("power map lacks a unique fixed point", params);
            break;
        }
        if (fp.points != fp_power.points) {
            fail("fixed point of the power map is not the fixed point of the map", params);
            break;
        }
        out.verified = true;
        break;
    }
    case ProbeTarget::s_window: {
        if (!(s_min < 2)) break;
        const auto r = check_chatterjea(space, map, s_min);
        if (r.finite) out.lambda = to_double(r.constant);
        if (!r.finite || !(r.constant < *r.threshold)) break;
        out.hypothesis = true;
        out.window = s_min * s_min < 2 ? 1 : 2;
        const Json params{{"s", to_string(s_min)}, {"lambda", to_string(r.constant)}};
        if (auto why = unique_fixed_point(space, map)) {
            fail(*why, params);
            break;
        }
        out.verified = true;
        break;
    }
    }
    return out;
}

} // namespace detail

/// Re-generates trial `index` of a probe.
inline std::pair<FiniteSpace, FiniteMap> reproduce_trial(const GenConfig& config, std::size_t index)
{
    if (config.target == ProbeTarget::s_window && config.inject_reference && index == 0) {
        const auto base = reference::four_point_space();
        return {base.with_declared_s(minimal_coefficient(base).value), reference::four_point_map()};
    }
    Rng rng(trial_seed(config.seed, index));
    auto space = random_space(config, rng);
    auto map = random_map(space, rng);
    return {std::move(space), std::move(map)};
}

/// Runs config.trials randomized trials for the configured target. The
/// result depends only on the configuration.
inline SearchReport probe(const GenConfig& config)
{
    config.validate();
    SearchReport report;
    report.config = config;
    const std::size_t trials = config.trials;
    if (trials == 0) return report;

    std::vector<detail::TrialOutcome> outcomes(trials);
    unsigned workers = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < trials; i += workers) outcomes[i] = detail::run_trial(config, i);
        });
    }
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < trials; ++i) {
        auto& o = outcomes[i];
        ++report.trials_run;
        if (o.generation_error) {
            ++report.generation_errors;
            continue;
        }
        report.s_min.add(o.s_min);
        if (o.lambda) report.lambda.add(*o.lambda);
        if (o.hypothesis) ++report.hypothesis;
        if (o.verified) ++report.verified;
        if (o.window == 1) {
            ++report.open_window.hypothesis;
            if (o.verified) ++report.open_window.verified;
        } else if (o.window == 2) {
            ++report.sharp_window.hypothesis;
            if (o.verified) ++report.sharp_window.verified;
        }
        if (i == 0 && config.target == ProbeTarget::s_window && config.inject_reference) {
            report.reference_injected = true;
            report.reference_hypothesis = o.hypothesis;
            report.reference_verified = o.verified;
        }
        if (o.rate_only) ++report.rate_only_failures;
        if (o.corrected_rate_pass) {
            ++report.corrected_rate_checked;
            if (!*o.corrected_rate_pass) ++report.corrected_rate_failures;
        }
        if (o.counterexample) report.counterexamples.push_back(std::move(*o.counterexample));
    }
    return report;
}

inline Json to_json(const GenConfig& c)
{
    return Json{{"target", std::string(to_string(c.target))},
                {"trials", c.trials},
                {"points", c.n_points},
                {"seed", c.seed},
                {"max_value", c.max_value},
                {"max_den", c.max_den},
                {"n_max", c.n_max},
                {"inject_reference", c.inject_reference}};
}

inline Json to_json(const SearchReport& r)
{
    auto stats = [](const SummaryStats& s) {
        if (s.count == 0) return Json{{"count", 0}};
        return Json{{"count", s.count}, {"min", s.min}, {"max", s.max}, {"mean", s.mean()}};
    };
    Json cx = Json::array();
    for (const auto& c : r.counterexamples)
        cx.push_back(Json{{"trial", c.trial}, {"seed", c.seed}, {"reason", c.reason}, {"instance", c.instance}});
    Json out{{"config", to_json(r.config)},
             {"trials_run", r.trials_run},
             {"hypothesis_satisfied", r.hypothesis},
             {"conclusion_verified", r.verified},
             {"counterexample_count", r.counterexamples.size()},
             {"proved_statement", is_proved(r.config.target)},
             {"sound", r.sound()},
             {"generation_errors", r.generation_errors},
             {"rate_only_failures", r.rate_only_failures},
             {"s_min", stats(r.s_min)},
             {"lambda", stats(r.lambda)}};
    if (r.corrected_rate_checked != 0)
        out["corrected_rate"] = Json{{"checked", r.corrected_rate_checked}, {"failures", r.corrected_rate_failures}};
    if (r.config.target == ProbeTarget::s_window) {
        out["open_window"] = Json{{"range", "[1, sqrt2)"}, {"hypothesis", r.open_window.hypothesis},
                                  {"verified", r.open_window.verified}};
        out["sharp_window"] = Json{{"range", "[sqrt2, 2)"}, {"hypothesis", r.sharp_window.hypothesis},
                                   {"verified", r.sharp_window.verified}};
        out["reference_instance"] = Json{{"injected", r.reference_injected},
                                         {"hypothesis", r.reference_hypothesis},
                                         {"verified", r.reference_verified}};
    }
    out["counterexamples"] = std::move(cx);
    return out;
}

} // namespace pbm
