#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace pbm;
using pbm::test::labels;
using pbm::test::q;

namespace {

using Strings = std::vector<std::string>;

TEST(PPropertyTest, FourPointMapHasIt)
{
    const auto space = reference::four_point_space();
    const auto r = p_property(space, reference::four_point_map(), 8);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(labels(space, r.base), (Strings{"1"}));
    ASSERT_EQ(r.powers.size(), 7U);
    for (const auto& p : r.powers) EXPECT_EQ(labels(space, p.points), (Strings{"1"}));
    EXPECT_EQ(r.eq211_lambda, q(3, 4));
    EXPECT_TRUE(r.sufficient_condition_applies);
    EXPECT_FALSE(r.falsified);
    EXPECT_TRUE(r.inclusion_holds);
}

TEST(PPropertyTest, PrintedMapKeepsBothFixedPoints)
{
    const auto space = reference::four_point_space();
    const auto r = p_property(space, reference::four_point_map_as_printed(), 4);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(labels(space, r.base), (Strings{"1", "3"}));
    for (const auto& p : r.powers) EXPECT_EQ(labels(space, p.points), (Strings{"1", "3"}));
}

TEST(PPropertyTest, TwoCycleBreaksIt)
{
    const auto space = reference::discrete_metric({"a", "b", "c"});
    const auto r = p_property(space, FiniteMap({0, 2, 1}), 4);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.first_violation);
    EXPECT_EQ(r.first_violation->first, 2U);
    EXPECT_EQ(space.label(r.first_violation->second), "b");
    EXPECT_TRUE(r.inclusion_holds);
    EXPECT_EQ(r.eq211_lambda, 1);
    EXPECT_FALSE(r.sufficient_condition_applies);
    EXPECT_FALSE(r.falsified);
}

TEST(PPropertyTest, EmptyFixedSetSkipsTheSufficientCondition)
{
    const auto space = reference::discrete_metric({"a", "b"});
    const auto r = p_property(space, FiniteMap({1, 0}));
    EXPECT_TRUE(r.base.empty());
    EXPECT_FALSE(r.sufficient_condition_applies);
    EXPECT_FALSE(r.notice.empty());
    EXPECT_FALSE(r.holds);  // F(T^2) is everything
}

TEST(PPropertyTest, DefaultsAndErrors)
{
    const auto space = reference::four_point_space();
    EXPECT_EQ(default_pproperty_nmax(space), 4U);
    EXPECT_EQ(p_property(space, reference::four_point_map()).powers.size(), 3U);
    EXPECT_THROW(p_property(space, reference::four_point_map(), 1), ParameterError);
    EXPECT_THROW(p_property(space, FiniteMap({0, 1}), 3), Error);
}

} // namespace
