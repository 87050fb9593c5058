#pragma once

#include "axioms.hpp"
#include "contraction.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "picard.hpp"
#include "pproperty.hpp"
#include "rational.hpp"
#include "reference_instances.hpp"
#include "self_map.hpp"
#include "space.hpp"
#include "stability.hpp"
#include "transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace pbm {

enum class ProbeTarget {
    theorem_3,
    theorem_5,
    theorem_6,
    theorem_7,
    theorem_8,
    theorem_9,
    corollary_1,
    s_window,
    chka_pproperty_conjecture,
};

inline std::string_view to_string(ProbeTarget t)
{
    switch (t) {
    case ProbeTarget::theorem_3: return "theorem-3";
    case ProbeTarget::theorem_5: return "theorem-5";
    case ProbeTarget::theorem_6: return "theorem-6";
    case ProbeTarget::theorem_7: return "theorem-7";
    case ProbeTarget::theorem_8: return "theorem-8";
    case ProbeTarget::theorem_9: return "theorem-9";
    case ProbeTarget::corollary_1: return "corollary-1";
    case ProbeTarget::s_window: return "s-window";
    case ProbeTarget::chka_pproperty_conjecture: return "chka-pproperty-conjecture";
    }
    return "unknown";
}

inline ProbeTarget parse_probe_target(std::string_view name)
{
    for (auto t : {ProbeTarget::theorem_3, ProbeTarget::theorem_5, ProbeTarget::theorem_6, ProbeTarget::theorem_7,
                   ProbeTarget::theorem_8, ProbeTarget::theorem_9, ProbeTarget::corollary_1, ProbeTarget::s_window,
                   ProbeTarget::chka_pproperty_conjecture})
        if (to_string(t) == name) return t;
    throw ParameterError("unknown probe target '" + std::string(name) + "'");
}

/// Proved statements must never yield counterexamples; open ones may.
inline bool is_proved(ProbeTarget t)
{
    return t != ProbeTarget::s_window && t != ProbeTarget::chka_pproperty_conjecture;
}

struct GenConfig {
    std::size_t n_points = 4;
    /// Off-diagonal entries are k/d with 1 <= d <= max_den and 0 < k/d <= max_value.
    long max_value = 8;
    long max_den = 16;
    std::uint64_t seed = 1;
    std::size_t trials = 0;
    ProbeTarget target = ProbeTarget::theorem_5;
    /// Largest power examined by the power-contraction and P-property probes.
    unsigned n_max = 8;
    /// Resampling budget for pm1 collisions.
    unsigned resample_budget = 1000;
    /// Place the four-point reference instance at trial 0 (s-window probe).
    bool inject_reference = true;
    unsigned threads = 0;  ///< 0: hardware concurrency

    void validate() const
    {
        if (n_points < 1) throw ParameterError("n_points must be >= 1");
        if (max_value < 1 || max_den < 1) throw ParameterError("value grid must be non-empty");
        if (n_max < 2) throw ParameterError("n_max must be >= 2");
    }
};

using Rng = std::mt19937_64;

/// Per-trial seed: splitmix64 of (master seed, trial index), so trials can
/// run in any order.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace detail {

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational grid_value(Rng& rng, const GenConfig& config)
{
    const long d = uniform(rng, 1, config.max_den);
    const long k = uniform(rng, 1, config.max_value * d);
    Rational v(k, d);
    v.canonicalize();
    return v;
}

/// Zero half of the time, otherwise a grid value.
inline Rational self_value(Rng& rng, const GenConfig& config)
{
    return uniform(rng, 0, 1) == 0 ? Rational(0) : grid_value(rng, config);
}

} // namespace detail

inline FiniteSpace random_space(const GenConfig& config, Rng& rng)
{
    config.validate();
    const std::size_t n = config.n_points;
    std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) table[i][j] = table[j][i] = detail::grid_value(rng, config);

    auto row_min = [&](std::size_t i) {
        std::optional<Rational> m;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && (!m || table[i][j] < *m)) m = table[i][j];
        return m;
    };
    auto draw_self = [&](std::size_t i) {
        Rational v = detail::self_value(rng, config);
        if (auto m = row_min(i); m && v > *m) v = *m;
        table[i][i] = v;
    };
    for (std::size_t i = 0; i < n; ++i) draw_self(i);

    // pm1: distinct points never share all three values.
    for (unsigned attempt = 0;; ++attempt) {
        bool clash = false;
        for (std::size_t i = 0; i < n && !clash; ++i) {
            for (std::size_t j = i + 1; j < n && !clash; ++j) {
                if (table[i][j] == table[i][i] && table[i][j] == table[j][j]) {
                    clash = true;
                    draw_self(detail::uniform(rng, 0, 1) == 0 ? i : j);
                }
            }
        }
        if (!clash) break;
        if (attempt >= config.resample_budget)
            throw GenerationError("pm1 resampling budget exhausted (seed " + std::to_string(config.seed) + ")");
    }

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    FiniteSpace space(std::move(labels), table, Rational(1));
    return space.with_declared_s(minimal_coefficient(space).value);
}

inline FiniteSpace random_space(const GenConfig& config)
{
    Rng rng(config.seed);
    return random_space(config, rng);
}

inline FiniteMap random_map(const FiniteSpace& space, Rng& rng)
{
    std::vector<std::size_t> image(space.size());
    for (auto& v : image) v = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<long>(space.size()) - 1));
    return FiniteMap(space, std::move(image));
}

inline FiniteMap random_map(const FiniteSpace& space, std::uint64_t seed)
{
    Rng rng(seed);
    return random_map(space, rng);
}

} // namespace pbm
