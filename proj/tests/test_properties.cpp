#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace pbm;
using pbm::test::q;

namespace {

constexpr std::size_t instances = 600;

struct Instance {
    FiniteSpace space;
    FiniteMap map;
};

Instance draw(std::size_t index)
{
    GenConfig config;
    config.n_points = 2 + index % 4;
    Rng rng(trial_seed(20261017, index));
    auto space = random_space(config, rng);
    auto map = random_map(space, rng);
    return {std::move(space), std::move(map)};
}

TEST(PropertyTest, MinimalCoefficientIsTight)
{
    for (std::size_t i = 0; i < instances; ++i) {
        const auto [space, map] = draw(i);
        const auto s = minimal_coefficient(space).value;
        ASSERT_TRUE(verify_axioms(space, s).all_pass()) << "instance " << i;
        if (s > 1) {
            const auto below = verify_axioms(space, Rational(s - q(1, 1000)));
            ASSERT_FALSE(below.pm4.pass) << "instance " << i;
            ASSERT_TRUE(below.pm1.pass && below.pm2.pass && below.pm3.pass);
        }
    }
}

TEST(PropertyTest, UltraImpliesUnitCoefficient)
{
    for (std::size_t i = 0; i < instances; ++i) {
        const auto [space, map] = draw(i);
        if (is_ultra(space).ultra) {
            ASSERT_EQ(minimal_coefficient(space).value, 1) << "instance " << i;
        }
    }
}

TEST(PropertyTest, BanachConstantBoundsEveryRatioAndIsAttained)
{
    for (std::size_t i = 0; i < instances; ++i) {
        const auto [space, map] = draw(i);
        const auto r = check_banach(space, map);
        bool zero_denominator = false;
        for (std::size_t x = 0; x < space.size(); ++x)
            for (std::size_t y = 0; y < space.size(); ++y)
                zero_denominator = zero_denominator || (space(x, y) == 0 && space(map(x), map(y)) > 0);
        ASSERT_EQ(r.finite, !zero_denominator) << "instance " << i;
        if (!r.finite) {
            ASSERT_FALSE(r.admissible);
            continue;
        }
        for (std::size_t x = 0; x < space.size(); ++x)
            for (std::size_t y = 0; y < space.size(); ++y)
                ASSERT_LE(space(map(x), map(y)), r.constant * space(x, y)) << "instance " << i;
        if (r.witness) {
            const auto [x, y] = *r.witness;
            ASSERT_EQ(space(map(x), map(y)), r.constant * space(x, y));
        }
    }
}

TEST(PropertyTest, FixedPointsOfTAreFixedByEveryPower)
{
    for (std::size_t i = 0; i < instances; ++i) {
        const auto [space, map] = draw(i);
        const auto r = p_property(space, map, 6);
        ASSERT_TRUE(r.inclusion_holds) << "instance " << i;
        const auto base = fixed_points(space, map).points;
        for (unsigned n = 2; n <= 6; ++n)
            for (auto u : base) ASSERT_EQ(map.power(n)(u), u);
    }
}

TEST(PropertyTest, BanachContractionsConvergeWithCertifiedRate)
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < 4 * instances; ++i) {
        const auto [space, map] = draw(i);
        const auto r = check_banach(space, map);
        if (!r.admissible) continue;
        ++seen;
        const auto fixed = fixed_points(space, map);
        ASSERT_TRUE(fixed.unique()) << "instance " << i;
        ASSERT_EQ(fixed.self_distances.front(), 0);
        const Rational s = minimal_coefficient(space).value;
        for (std::size_t x = 0; x < space.size(); ++x) {
            const auto trace = iterate(space, map, x, space.size() + 2);
            ASSERT_EQ(trace.verdict, Verdict::fixed_point_found);
            ASSERT_EQ(*trace.fixed_point, fixed.points.front());
            const auto cert = certify_rate(space, trace, r.constant, s);
            for (const auto& c : cert.step_checks) ASSERT_TRUE(c.pass) << "instance " << i;
            if (s * r.constant < 1) {
                ASSERT_TRUE(cert.all_pass) << "instance " << i;
            }
        }
    }
    EXPECT_GT(seen, 20U);
}

TEST(PropertyTest, ChatterjeaAdmissibleMapsHaveOneFixedPoint)
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < 4 * instances; ++i) {
        const auto [space, map] = draw(i);
        const Rational s = std::max(Rational(2), minimal_coefficient(space).value);
        if (!check_chatterjea(space, map, s).admissible) continue;
        ++seen;
        ASSERT_TRUE(fixed_points(space, map).unique()) << "instance " << i;
    }
    EXPECT_GT(seen, 0U);
}

TEST(PropertyTest, ChkaWithOnlyFirstCoefficientMatchesBanach)
{
    for (std::size_t i = 0; i < instances; ++i) {
        const auto [space, map] = draw(i);
        const auto banach = check_banach(space, map);
        ChkaParams<Rational> params;
        const auto chka = check_chka(space, map, params, minimal_coefficient(space).value);
        ASSERT_EQ(chka.constant, banach.constant) << "instance " << i;
    }
}

TEST(PropertyTest, TransformIdentityAndContraction)
{
    std::size_t seen = 0;
    for (std::size_t i = 0; i < 4 * instances; ++i) {
        const auto [space, map] = draw(i);
        const auto power = check_power_banach(space, map, 6);
        if (!power.least_admissible) continue;
        const unsigned n = *power.least_admissible;
        Rational K = power.entries[n - 2].report.constant;
        if (K == 0) K = q(1, 4);
        const Rational lambda = detail::pick_transform_lambda(K, n);
        const auto t = build_pprime(space, map, n, K, lambda);
        const auto check = verify_transform_contraction(t);
        ASSERT_TRUE(check.pass()) << "instance " << i;
        const auto h = build_h_series(t, q(1, 1000000));
        ASSERT_TRUE(h.sandwich.holds) << "instance " << i;
        ++seen;
    }
    EXPECT_GT(seen, 100U);
}

} // namespace
