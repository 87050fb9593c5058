#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pbm;
using pbm::test::pt;
using pbm::test::q;

namespace {

std::vector<Rational> lemma_a(std::size_t n)
{
    std::vector<Rational> a;
    for (std::size_t k = 0; k <= n; ++k) {
        Rational v(static_cast<long>(k + 1));
        v /= ipow(Rational(2), static_cast<unsigned>(k));
        a.push_back(v);
    }
    return a;
}

std::vector<Rational> lemma_c(std::size_t n)
{
    std::vector<Rational> c;
    for (std::size_t k = 0; k <= n; ++k) c.push_back(1 / ipow(Rational(2), static_cast<unsigned>(k)));
    return c;
}

TEST(SequenceBoundTest, PolynomialTimesGeometricSequence)
{
    const Rational tol = q(1, 1000000);
    for (std::size_t n = 30; n <= 60; n += 6) {
        const auto r = check_lemma_sequences(lemma_a(n), lemma_c(n), q(1, 2), tol);
        EXPECT_TRUE(r.premise_holds);
        EXPECT_TRUE(r.bound_holds);
        EXPECT_TRUE(r.c_vanishes);
        EXPECT_EQ(r.status, LemmaStatus::limit_zero) << n;
        EXPECT_LT(r.a_last, tol);
    }
    EXPECT_EQ(check_lemma_sequences(lemma_a(30), lemma_c(30), q(1, 2), tol).a_last, q(31, 1073741824));
}

TEST(SequenceBoundTest, ShortPrefixIsInconclusive)
{
    const auto r = check_lemma_sequences(lemma_a(10), lemma_c(10), q(1, 2), q(1, 1000000));
    EXPECT_TRUE(r.premise_holds);
    EXPECT_EQ(r.status, LemmaStatus::inconclusive);
}

TEST(SequenceBoundTest, PremiseFailureNamesTheIndex)
{
    const std::vector<Rational> a{1, 1, 2};
    const std::vector<Rational> c{q(1, 2), 0};
    const auto r = check_lemma_sequences(a, c, q(1, 2), q(1, 100));
    EXPECT_EQ(r.status, LemmaStatus::premise_failed);
    EXPECT_EQ(*r.witness_index, 1U);
}

TEST(SequenceBoundTest, RejectsBadArguments)
{
    const std::vector<Rational> a{1, 0};
    const std::vector<Rational> c{0};
    EXPECT_THROW(check_lemma_sequences(a, c, Rational(1), q(1, 100)), ParameterError);
    EXPECT_THROW(check_lemma_sequences(a, std::vector<Rational>{}, q(1, 2), q(1, 100)), ParameterError);
    EXPECT_THROW(check_lemma_sequences(std::vector<Rational>{-1}, c, q(1, 2), q(1, 100)), ParameterError);
}

TEST(StabilityConditionTest, BoundaryCases)
{
    ChkaParams<Rational> p;
    p[0] = q(3, 4);
    const auto inside = main3_condition(p, Rational(1));
    EXPECT_TRUE(inside.holds);
    EXPECT_EQ(inside.lhs, q(3, 2));
    EXPECT_EQ(*inside.step_factor, q(3, 4));

    p[0] = q(1, 2);
    const auto edge = main3_condition(p, Rational(2));
    EXPECT_FALSE(edge.holds);
    EXPECT_EQ(edge.lhs, 2);
    EXPECT_EQ(*edge.step_factor, 1);
}

TEST(StabilityConditionTest, ExponentialExample)
{
    ChkaParams<double> p;
    p[0] = std::exp(-2.0);
    EXPECT_TRUE(main3_condition(p, 4.0).holds);
    EXPECT_TRUE(main3_condition(p, 2.0).holds);
    EXPECT_NEAR(main3_condition(p, 4.0).lhs, 8 * std::exp(-2.0), 1e-15);
}

TEST(PerturbedTest, FourPointGeometricNoise)
{
    const auto space = reference::four_point_space();
    const auto map = reference::four_point_map();
    const std::size_t one = pt(space, "1");
    ChkaParams<Rational> params;
    params[0] = q(3, 4);
    for (std::size_t start = 0; start < 4; ++start) {
        const auto y = geometric_noise_schedule(space, map, start, Rational(13), 64);
        const auto trial = run_perturbed(space, map, one, y, 64, std::optional{params});
        EXPECT_EQ(trial.verdict, StabilityVerdict::converged_to_q) << start;
        ASSERT_TRUE(trial.recurrence);
        EXPECT_EQ(trial.recurrence->failures, 0U);
        EXPECT_EQ(trial.recurrence->ratio, q(3, 4));
        EXPECT_EQ(trial.a.back(), 0);
    }
}

TEST(PerturbedTest, NoiseLeavesTheOrbitEarly)
{
    const auto space = reference::four_point_space();
    const auto map = reference::four_point_map();
    // from 1 the ball B'(1, 4) holds 2 (p = 3 < 4): the first step is perturbed
    const auto y = geometric_noise_schedule(space, map, 0, Rational(4), 6);
    EXPECT_EQ(y[1], pt(space, "2"));
    EXPECT_EQ(y.back(), pt(space, "1"));
}

TEST(PerturbedTest, Preconditions)
{
    const auto space = reference::four_point_space();
    const auto map = reference::four_point_map();
    const std::vector<std::size_t> y(8, 0);
    EXPECT_THROW(run_perturbed(space, map, pt(space, "2"), y, 8), PreconditionError);
    EXPECT_THROW(run_perturbed(space, FiniteMap::identity(4), pt(space, "3"), y, 8), PreconditionError);
    EXPECT_THROW(run_perturbed(space, map, 0, y, 1), ParameterError);
    EXPECT_THROW(run_perturbed(space, map, 0, y, 9), ParameterError);
    EXPECT_THROW(geometric_noise_schedule(space, map, 0, Rational(0), 4), ParameterError);
}

TEST(PerturbedTest, ExponentialScaledSchedule)
{
    const auto space = reference::interval_space(2.0);
    const auto map = reference::interval_map(2.0);
    const double u = *iterate(space, map, 1.0, 200, 1e-24).fixed_point;
    const std::size_t n = 10000;
    const auto trial = run_perturbed(space, map, u, scaled_fixed_point_schedule(u, n), n);
    EXPECT_EQ(trial.verdict, StabilityVerdict::converged_to_q);
    for (std::size_t k = tail_start(trial.drift.size()); k < trial.drift.size(); ++k) EXPECT_LT(trial.drift[k], 1e-8);
    EXPECT_LT(std::abs(trial.y.back() - u), 1e-4);
    EXPECT_LT(trial.a.back(), 1e-6);
}

TEST(PerturbedTest, ExponentialGeometricSchedule)
{
    const auto space = reference::interval_space(2.0);
    const auto map = reference::interval_map(2.0);
    const double u = *iterate(space, map, 1.0, 200, 1e-24).fixed_point;
    ChkaParams<double> params;
    params[0] = std::exp(-2.0);
    const auto y = geometric_noise_schedule(space, map, 1.0, 0.5, 80);
    const auto trial = run_perturbed(space, map, u, y, 80, std::optional{params});
    EXPECT_EQ(trial.verdict, StabilityVerdict::converged_to_q);
    EXPECT_EQ(trial.recurrence->failures, 0U);
}

TEST(PerturbedTest, ConstantOffsetIsInconclusive)
{
    const auto space = reference::interval_space(2.0);
    const auto map = reference::interval_map(2.0);
    const double u = *iterate(space, map, 1.0, 200, 1e-24).fixed_point;
    const std::vector<double> y(100, u + 0.1);
    EXPECT_EQ(run_perturbed(space, map, u, y, 100).verdict, StabilityVerdict::inconclusive);
}

} // namespace
