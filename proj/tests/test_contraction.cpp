#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pbm;
using pbm::test::labels;
using pbm::test::q;

namespace {

using Strings = std::vector<std::string>;

class FourPoint : public ::testing::Test {
protected:
    FiniteSpace space = reference::four_point_space();
    FiniteMap map = reference::four_point_map();
};

TEST_F(FourPoint, BanachConstant)
{
    const auto r = check_banach(space, map);
    EXPECT_EQ(r.constant, q(3, 4));
    EXPECT_TRUE(r.finite);
    EXPECT_TRUE(r.admissible);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(labels(space, *r.witness), (Strings{"2", "3"}));
    EXPECT_FALSE(r.sampled);
}

TEST_F(FourPoint, BanachOnPrintedMapIsNotAContraction)
{
    // p(T2,T3) = p(1,3) = 7 against p(2,3) = 4
    const auto r = check_banach(space, reference::four_point_map_as_printed());
    EXPECT_EQ(r.constant, q(7, 4));
    EXPECT_EQ(labels(space, *r.witness), (Strings{"2", "3"}));
    EXPECT_FALSE(r.admissible);
}

TEST_F(FourPoint, PowerConstants)
{
    const auto r = check_power_banach(space, map, 4);
    ASSERT_EQ(r.entries.size(), 3U);
    EXPECT_EQ(r.entries[0].n, 2U);
    EXPECT_EQ(r.entries[0].report.constant, 0);  // T^2 is constant at 1
    EXPECT_LE(r.entries[0].report.constant, q(9, 16));
    ASSERT_TRUE(r.least_admissible);
    EXPECT_EQ(*r.least_admissible, 2U);
    EXPECT_THROW(check_power_banach(space, map, 1), ParameterError);
}

TEST_F(FourPoint, Chatterjea)
{
    const auto r = check_chatterjea(space, map, Rational(4));
    EXPECT_EQ(r.constant, q(1, 3));
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(labels(space, *r.witness), (Strings{"2", "3"}));
    ASSERT_TRUE(r.threshold);
    EXPECT_EQ(*r.threshold, q(1, 16));
    EXPECT_FALSE(r.admissible);
}

TEST_F(FourPoint, ChatterjeaBelowTwoIsNeverAdmissible)
{
    // 1/3 < 121/225 but the statement needs s >= 2
    const auto r = check_chatterjea(space, map, q(15, 11));
    EXPECT_EQ(*r.threshold, q(121, 225));
    EXPECT_LT(r.constant, *r.threshold);
    EXPECT_FALSE(r.admissible);
    ASSERT_TRUE(r.sharp);
    EXPECT_FALSE(*r.sharp);
}

TEST_F(FourPoint, MaxCondition)
{
    const auto r = check_ch2(space, map, Rational(4));
    EXPECT_EQ(r.constant, q(1, 2));
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(labels(space, *r.witness), (Strings{"3", "3"}));
    EXPECT_FALSE(r.admissible);

    const auto tight = check_ch2(space, map, q(15, 11));
    EXPECT_EQ(*tight.threshold, q(11, 15));
    EXPECT_TRUE(tight.admissible);
}

TEST_F(FourPoint, RationalConditionWithBanachCoefficient)
{
    ChkaParams<Rational> params;
    params[0] = q(3, 4);
    const auto r = check_chka(space, map, params, Rational(4));
    EXPECT_EQ(r.constant, q(3, 4));
    ASSERT_TRUE(r.holds_on_all_pairs);
    EXPECT_TRUE(*r.holds_on_all_pairs);
    EXPECT_EQ(*r.parameter_sum, q(3, 4));
    EXPECT_TRUE(r.admissible);
    ASSERT_TRUE(r.rate);
    EXPECT_EQ(*r.rate, q(3, 4));
}

TEST_F(FourPoint, RationalConditionReportsViolation)
{
    ChkaParams<Rational> params;
    params[0] = q(1, 2);
    const auto r = check_chka(space, map, params, Rational(4));
    EXPECT_FALSE(*r.holds_on_all_pairs);
    EXPECT_TRUE(r.violation);
    EXPECT_FALSE(r.admissible);
}

TEST_F(FourPoint, SelfMapStepCondition)
{
    const auto r = check_eq211(space, map);
    EXPECT_EQ(r.constant, q(3, 4));
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(labels(space, *r.witness), (Strings{"3", "3"}));
    EXPECT_TRUE(r.admissible);
}

TEST(ChkaParamsTest, PicardRateFormula)
{
    ChkaParams<Rational> p;
    p[1] = q(9, 10);
    EXPECT_EQ(p.parameter_sum(Rational(2)), q(9, 10));
    ASSERT_TRUE(p.picard_rate(Rational(2)));
    EXPECT_EQ(*p.picard_rate(Rational(2)), 0);

    ChkaParams<Rational> r;
    r[0] = q(1, 10);
    r[2] = q(1, 20);
    r[3] = q(1, 30);
    r[4] = q(1, 40);
    // (2/10 + 2*2/20 + 2/30 + 2/40) / (2 - 0 - 2*2/20 - 2/30 - 2/40) = (31/60) / (101/60)
    EXPECT_EQ(*r.picard_rate(Rational(2)), q(31, 101));
    EXPECT_EQ(r.parameter_sum(Rational(2)), q(1, 10) + q(4, 20) + q(2, 30) + q(2, 40));

    ChkaParams<Rational> big;
    big[1] = 1;
    EXPECT_FALSE(big.picard_rate(Rational(1)));
}

TEST(ChainTest, PowerLiftsContraction)
{
    const auto space = reference::three_point_chain();
    const auto map = reference::three_point_chain_map();
    const auto banach = check_banach(space, map);
    EXPECT_EQ(banach.constant, 1);
    ASSERT_TRUE(banach.witness);
    // first pair attaining 1 in scan order
    EXPECT_EQ(space(map(banach.witness->first), map(banach.witness->second)),
              space(banach.witness->first, banach.witness->second));
    EXPECT_FALSE(banach.admissible);
    const auto power = check_power_banach(space, map, 3);
    EXPECT_EQ(power.entries[0].report.constant, 0);
    EXPECT_EQ(*power.least_admissible, 2U);
}

TEST(InfiniteConstantTest, ZeroDenominatorWithPositiveImage)
{
    // p(a,a) = 0 yet T a = b with p(b,b) > 0: no finite Banach constant
    const FiniteSpace space({"a", "b"}, {{0, 2}, {2, 1}}, Rational(1));
    const FiniteMap map({1, 1});
    const auto r = check_banach(space, map);
    EXPECT_FALSE(r.finite);
    EXPECT_FALSE(r.admissible);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(labels(space, *r.witness), (Strings{"a", "a"}));
}

TEST(SampledTest, BanachIsALabelledLowerBound)
{
    const auto space = reference::interval_space(2.0, 101);
    const auto r = check_banach(space, reference::interval_map(2.0));
    EXPECT_TRUE(r.sampled);
    EXPECT_NE(r.note.find("sampled lower bound"), std::string::npos);
    EXPECT_LE(r.constant, std::exp(-2.0) + 1e-12);
    EXPECT_GT(r.constant, 0.13);
    EXPECT_TRUE(r.admissible);
}

} // namespace
