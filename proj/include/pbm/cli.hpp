#pragma once

#include "pbm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace pbm::cli {

enum ExitStatus : int { success = 0, falsified = 1, input_error = 2 };

struct CommandOutcome {
    int status = success;
    /// Report text, or the path it was written to when --out was given.
    std::string payload;
    bool written_to_file = false;
};

/// Indented "key: value" rendering of a structured report.
inline void render_text(const Json& j, std::ostream& out, int indent = 0)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar_line = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto flat = [](const Json& v) {
        if (!v.is_array()) return false;
        return std::all_of(v.begin(), v.end(), [](const Json& e) {
            return e.is_primitive() || (e.is_array() && std::all_of(e.begin(), e.end(), [](const Json& x) {
                                            return x.is_primitive();
                                        }));
        });
    };
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_primitive() || flat(value)) {
                out << pad << key << ": " << scalar_line(value) << '\n';
            } else {
                out << pad << key << ":\n";
                render_text(value, out, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_primitive() || flat(v)) {
                out << pad << "- " << scalar_line(v) << '\n';
            } else {
                out << pad << "-\n";
                render_text(v, out, indent + 2);
            }
        }
    } else {
        out << pad << scalar_line(j) << '\n';
    }
}

namespace detail {

struct Loaded {
    AnySpace space;
    AnyMap map;
};

inline Loaded load(const std::string& space_path, const std::string& map_path)
{
    AnySpace space = space_from_json(read_json_file(space_path));
    AnyMap map = map_from_json(read_json_file(map_path), space);
    return {std::move(space), std::move(map)};
}

inline const FiniteSpace& finite(const AnySpace& space, const std::string& what)
{
    if (!std::holds_alternative<FiniteSpace>(space))
        throw FormatError(what + " needs a finite space (field 'points')");
    return std::get<FiniteSpace>(space);
}

/// Calls f(space, map) with matching concrete types.
template <class F>
auto visit_pair(const Loaded& l, F&& f)
{
    if (std::holds_alternative<FiniteSpace>(l.space))
        return f(std::get<FiniteSpace>(l.space), std::get<FiniteMap>(l.map));
    return f(std::get<SampledSpace>(l.space), std::get<ExpShiftMap>(l.map));
}

inline std::size_t parse_point(const FiniteSpace& space, const std::string& text, const std::string& flag)
{
    try {
        return space.index_of(text);
    } catch (const PreconditionError&) {
        throw FormatError(flag + ": unknown point '" + text + "'");
    }
}

inline double parse_point(const SampledSpace& space, const std::string& text, const std::string& flag)
{
    double x = 0;
    try {
        std::size_t used = 0;
        x = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw FormatError(flag + ": '" + text + "' is not a number");
    }
    if (!space.contains(x)) throw FormatError(flag + ": " + text + " lies outside the interval");
    return x;
}

inline Rational parse_scalar(const FiniteSpace&, const std::string& text, const std::string& flag)
{
    try {
        return parse_rational(text);
    } catch (const FormatError& e) {
        throw FormatError(flag + ": " + e.what());
    }
}

inline double parse_scalar(const SampledSpace&, const std::string& text, const std::string& flag)
{
    try {
        return to_double(parse_rational(text));
    } catch (const FormatError& e) {
        throw FormatError(flag + ": " + e.what());
    }
}

template <class S>
ChkaParams<scalar_t<S>> parse_lambdas(const S& space, const std::string& text)
{
    ChkaParams<scalar_t<S>> params;
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) parts.push_back(item);
    if (parts.size() != 5) throw FormatError("--lambdas: expected five comma-separated values");
    for (std::size_t i = 0; i < 5; ++i) {
        params[i] = parse_scalar(space, parts[i], "--lambdas[" + std::to_string(i) + "]");
        if (params[i] < 0) throw FormatError("--lambdas[" + std::to_string(i) + "]: must be non-negative");
    }
    return params;
}

} // namespace detail

/// Parses and runs one command line (without the program name). The
/// report goes to `out` (or to the --out file), diagnostics to `err`.
inline CommandOutcome run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Checks partial b-metric spaces, contraction conditions and fixed-point iterations"};
    app.require_subcommand(1);
    std::string out_path;
    std::string format = "text";
    app.add_option("--out", out_path, "Write the report to this file");
    app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

    std::string space_path, space2_path, map_path;
    std::string s_text, condition = "banach", lambdas_text, from, mu_text, K_text, lambda_text, tail_tol = "1/1000000";
    std::string schedule = "geometric", r_text, start_text, q_text, tol_text, target = "theorem-5";
    unsigned nmax = 0, power_n = 0;
    std::size_t max_iter = 1000, steps = 64, trials = 1000, points = 4;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    long max_value = 8, max_den = 16;
    bool series = false, no_reference = false;
    int which = 1;

    auto* verify = app.add_subcommand("verify", "Check the partial b-metric axioms");
    verify->add_option("space", space_path)->required();
    verify->add_option("--s", s_text, "Coefficient (default: declared_s)");

    auto* minimal = app.add_subcommand("minimal-s", "Least coefficient satisfying the b-triangle inequality");
    minimal->add_option("space", space_path)->required();

    auto* ultra = app.add_subcommand("ultra", "Check the strong (ultra) triangle inequality");
    ultra->add_option("space", space_path)->required();

    auto* equiv = app.add_subcommand("equiv", "Equivalence constants between two metrics on the same points");
    equiv->add_option("first", space_path)->required();
    equiv->add_option("second", space2_path)->required();

    auto* analyze = app.add_subcommand("analyze", "Minimal contraction constant for a condition");
    analyze->add_option("space", space_path)->required();
    analyze->add_option("map", map_path)->required();
    analyze->add_option("--condition", condition)
        ->check(CLI::IsMember({"banach", "power", "chatterjea", "ch2", "chka", "eq211"}));
    analyze->add_option("--s", s_text);
    analyze->add_option("--lambdas", lambdas_text, "l1,l2,l3,l4,l5 for chka");
    analyze->add_option("--nmax", nmax);

    auto* iter = app.add_subcommand("iterate", "Picard iteration");
    iter->add_option("space", space_path)->required();
    iter->add_option("map", map_path)->required();
    iter->add_option("--from", from)->required();
    iter->add_option("--max-iter", max_iter);
    iter->add_option("--tol", tol_text, "Stopping threshold on p(x_n, x_n+1) for interval spaces");

    auto* certify = app.add_subcommand("certify", "Picard iteration plus a rate certificate");
    certify->add_option("space", space_path)->required();
    certify->add_option("map", map_path)->required();
    certify->add_option("--from", from)->required();
    certify->add_option("--mu", mu_text)->required();
    certify->add_option("--s", s_text);
    certify->add_option("--max-iter", max_iter);
    certify->add_option("--tol", tol_text);

    auto* transform = app.add_subcommand("transform", "Build the weighted orbit-sum metric");
    transform->add_option("space", space_path)->required();
    transform->add_option("map", map_path)->required();
    transform->add_option("--power", power_n);
    transform->add_option("--K", K_text);
    transform->add_option("--lambda", lambda_text)->required();
    transform->add_flag("--series", series, "Sum the full orbit series");
    transform->add_option("--tail-tol", tail_tol);

    auto* stability = app.add_subcommand("stability", "Perturbed Picard sequence towards a fixed point");
    stability->add_option("space", space_path)->required();
    stability->add_option("map", map_path)->required();
    stability->add_option("--schedule", schedule)->check(CLI::IsMember({"geometric", "scaled"}));
    stability->add_option("--steps", steps);
    stability->add_option("--tol", tol_text);
    stability->add_option("--r", r_text, "Noise magnitude (geometric)");
    stability->add_option("--start", start_text, "First point (geometric)");
    stability->add_option("--q", q_text, "Fixed point (default: found by iteration)");
    stability->add_option("--lambdas", lambdas_text, "Coefficients for the recurrence ledger");

    auto* pprop = app.add_subcommand("pproperty", "Compare F(T) with F(T^n)");
    pprop->add_option("space", space_path)->required();
    pprop->add_option("map", map_path)->required();
    pprop->add_option("--nmax", nmax);

    auto* search = app.add_subcommand("search", "Randomized probe of a statement");
    search->add_option("--target", target);
    search->add_option("--trials", trials);
    search->add_option("--points", points);
    search->add_option("--seed", seed);
    search->add_option("--max-value", max_value);
    search->add_option("--max-den", max_den);
    search->add_option("--nmax", nmax);
    search->add_option("--threads", threads);
    search->add_flag("--no-reference", no_reference, "Do not inject the four-point instance");

    auto* examples = app.add_subcommand("examples", "Reproduce the worked examples");
    examples->add_option("--which", which)->check(CLI::IsMember({1, 2}));

    CommandOutcome outcome;
    Json report;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return outcome;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n';
            outcome.status = input_error;
            return outcome;
        }

        if (verify->parsed()) {
            const AnySpace space = space_from_json(read_json_file(space_path));
            std::visit(
                [&](const auto& sp) {
                    const auto s = s_text.empty() ? sp.declared_s() : detail::parse_scalar(sp, s_text, "--s");
                    const auto r = verify_axioms(sp, s);
                    report = to_json(sp, r);
                    if (!r.all_pass()) outcome.status = falsified;
                },
                space);
        } else if (minimal->parsed()) {
            const AnySpace space = space_from_json(read_json_file(space_path));
            std::visit([&](const auto& sp) { report = to_json(sp, minimal_coefficient(sp)); }, space);
        } else if (ultra->parsed()) {
            const AnySpace space = space_from_json(read_json_file(space_path));
            std::visit([&](const auto& sp) { report = to_json(sp, is_ultra(sp)); }, space);
        } else if (equiv->parsed()) {
            const auto a = finite_space_from_json(read_json_file(space_path));
            const auto b = finite_space_from_json(read_json_file(space2_path));
            if (a.labels() != b.labels()) throw FormatError("second: field 'points' differs from the first space");
            report = to_json(a, equivalence_constants(MetricPair(a, b)));
        } else if (analyze->parsed()) {
            const auto loaded = detail::load(space_path, map_path);
            detail::visit_pair(loaded, [&](const auto& sp, const auto& map) {
                const auto s = s_text.empty() ? sp.declared_s() : detail::parse_scalar(sp, s_text, "--s");
                if (condition == "banach") report = to_json(sp, check_banach(sp, map));
                else if (condition == "power") report = to_json(sp, check_power_banach(sp, map, nmax == 0 ? 8 : nmax));
                else if (condition == "chatterjea") report = to_json(sp, check_chatterjea(sp, map, s));
                else if (condition == "ch2") report = to_json(sp, check_ch2(sp, map, s));
                else if (condition == "eq211") report = to_json(sp, check_eq211(sp, map));
                else {
                    using Params = ChkaParams<scalar_t<std::decay_t<decltype(sp)>>>;
                    const Params params = lambdas_text.empty() ? Params{} : detail::parse_lambdas(sp, lambdas_text);
                    report = to_json(sp, check_chka(sp, map, params, s));
                }
            });
        } else if (iter->parsed() || certify->parsed()) {
            const auto loaded = detail::load(space_path, map_path);
            detail::visit_pair(loaded, [&](const auto& sp, const auto& map) {
                using Scalar = scalar_t<std::decay_t<decltype(sp)>>;
                const auto x0 = detail::parse_point(sp, from, "--from");
                const Scalar tol = tol_text.empty() ? Scalar(sp.tolerance()) : detail::parse_scalar(sp, tol_text, "--tol");
                const auto trace = iterate(sp, map, x0, max_iter, tol);
                report = Json{{"trace", to_json(sp, trace)}};
                if (certify->parsed()) {
                    const Scalar mu = detail::parse_scalar(sp, mu_text, "--mu");
                    const Scalar s = s_text.empty() ? Scalar(sp.declared_s()) : detail::parse_scalar(sp, s_text, "--s");
                    if (mu < 0 || !(mu < 1)) throw FormatError("--mu: must lie in [0, 1)");
                    const auto cert = certify_rate(sp, trace, mu, s);
                    report["certificate"] = to_json(cert);
                    if (!cert.all_pass) outcome.status = falsified;
                }
            });
        } else if (transform->parsed()) {
            const auto loaded = detail::load(space_path, map_path);
            const FiniteSpace& sp = detail::finite(loaded.space, "transform");
            const FiniteMap& map = std::get<FiniteMap>(loaded.map);
            const Rational lambda = detail::parse_scalar(sp, lambda_text, "--lambda");
            if (series) {
                const auto h = build_h_series(sp, map, lambda, detail::parse_scalar(sp, tail_tol, "--tail-tol"));
                report = to_json(h);
            } else {
                if (power_n == 0) throw FormatError("--power: required unless --series is given");
                if (K_text.empty()) throw FormatError("--K: required unless --series is given");
                const auto t = build_pprime(sp, map, power_n, detail::parse_scalar(sp, K_text, "--K"), lambda);
                const auto check = verify_transform_contraction(t);
                const auto axioms = verify_axioms(t.space, sp.declared_s());
                const auto h = build_h_series(t, Rational(detail::parse_scalar(sp, tail_tol, "--tail-tol")));
                report = to_json(t);
                report["verification"] = Json{{"axioms", to_json(t.space, axioms)},
                                              {"contraction", to_json(t.space, check)},
                                              {"sandwich", to_json(t.space, h.sandwich)}};
                if (!check.pass() || !axioms.all_pass() || !h.sandwich.holds) outcome.status = falsified;
            }
        } else if (stability->parsed()) {
            const auto loaded = detail::load(space_path, map_path);
            detail::visit_pair(loaded, [&](const auto& sp, const auto& map) {
                using S = std::decay_t<decltype(sp)>;
                using Scalar = scalar_t<S>;
                point_t<S> q{};
                if (!q_text.empty()) {
                    q = detail::parse_point(sp, q_text, "--q");
                } else {
                    point_t<S> x0{};
                    if constexpr (S::is_exact) x0 = 0;
                    else x0 = sp.hi();
                    const auto trace = iterate(sp, map, x0, 10000, Scalar(sp.tolerance() * sp.tolerance()));
                    if (trace.verdict != Verdict::fixed_point_found)
                        throw PreconditionError("no fixed point found by iteration; pass --q");
                    q = *trace.fixed_point;
                }
                std::vector<point_t<S>> y;
                if (schedule == "scaled") {
                    if constexpr (S::is_exact) throw FormatError("--schedule: 'scaled' needs an interval space");
                    else y = scaled_fixed_point_schedule(q, steps);
                } else {
                    const auto start = start_text.empty() ? q : detail::parse_point(sp, start_text, "--start");
                    Scalar r = 1;
                    if (!r_text.empty()) r = detail::parse_scalar(sp, r_text, "--r");
                    if constexpr (S::is_exact) y = geometric_noise_schedule(sp, map, start, r, steps);
                    else y = geometric_noise_schedule(sp, map, start, r, steps);
                }
                std::optional<ChkaParams<Scalar>> params;
                if (!lambdas_text.empty()) params = detail::parse_lambdas(sp, lambdas_text);
                const Scalar tol =
                    tol_text.empty() ? default_stability_tolerance<Scalar>() : detail::parse_scalar(sp, tol_text, "--tol");
                const auto trial = run_perturbed(sp, map, q, y, steps, params, tol);
                report = to_json(sp, trial);
                if (trial.recurrence && trial.recurrence->failures != 0) outcome.status = falsified;
            });
        } else if (pprop->parsed()) {
            const auto loaded = detail::load(space_path, map_path);
            const FiniteSpace& sp = detail::finite(loaded.space, "pproperty");
            const auto r = p_property(sp, std::get<FiniteMap>(loaded.map), nmax == 0 ? default_pproperty_nmax(sp) : nmax);
            report = to_json(sp, r);
            if (r.falsified) outcome.status = falsified;
        } else if (search->parsed()) {
            GenConfig config;
            config.target = parse_probe_target(target);
            config.trials = trials;
            config.n_points = points;
            config.seed = seed;
            config.max_value = max_value;
            config.max_den = max_den;
            if (nmax != 0) config.n_max = nmax;
            config.threads = threads;
            config.inject_reference = !no_reference;
            const auto r = probe(config);
            report = to_json(r);
            if (!r.counterexamples.empty()) outcome.status = falsified;
        } else if (examples->parsed()) {
            report = which == 1 ? to_json(reproduce_example1()) : to_json(reproduce_example2());
        }
    } catch (const AxiomViolation& e) {
        err << "falsified: " << e.what() << '\n';
        outcome.status = falsified;
        return outcome;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        outcome.status = input_error;
        return outcome;
    }

    std::ostringstream text;
    if (format == "structured") text << report.dump(2) << '\n';
    else render_text(report, text);

    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) {
            err << "error: --out: cannot write '" << out_path << "'\n";
            outcome.status = input_error;
            return outcome;
        }
        file << text.str();
        outcome.payload = out_path;
        outcome.written_to_file = true;
    } else {
        out << text.str();
        outcome.payload = text.str();
    }
    return outcome;
}

} // namespace pbm::cli
