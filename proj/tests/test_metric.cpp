#include "qifrow/metric.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qifrow;

TEST(L1Distance, KnownValues) {
    EXPECT_DOUBLE_EQ(l1_distance(Vec{1, 0}, Vec{0, 1}), 2.0);
    Vec p{0.3, 0.7};
    EXPECT_DOUBLE_EQ(l1_distance(p, p), 0.0);
    EXPECT_NEAR(l1_distance(Vec{0.29, 0.71}, Vec{0.05, 0.95}), 0.48, 1e-15);
    EXPECT_THROW(l1_distance(Vec{1, 0}, Vec{1, 0, 0}), ValidationError);
}

TEST(Diameter, KnownValues) {
    auto d = diameter({{1, 0}, {0, 1}});
    EXPECT_DOUBLE_EQ(d.value, 2.0);
    EXPECT_EQ(d.first, 0u);
    EXPECT_EQ(d.second, 1u);

    EXPECT_DOUBLE_EQ(diameter({{0.4, 0.6}}).value, 0.0);

    auto d3 = diameter({{0.05, 0.95}, {0.58, 0.42}, {0.29, 0.71}});
    EXPECT_NEAR(d3.value, 1.06, 1e-12);  // brute force over the 3 pairs
    EXPECT_EQ(d3.first, 0u);
    EXPECT_EQ(d3.second, 1u);

    EXPECT_THROW(diameter({}), ValidationError);
}

TEST(MaxDist, KnownValues) {
    std::vector<Vec> a{{0.05, 0.95}, {0.58, 0.42}, {0.29, 0.71}};
    EXPECT_DOUBLE_EQ(max_dist(a, a).value, diameter(a).value);
    EXPECT_DOUBLE_EQ(max_dist({{1, 0}}, {{0, 1}}).value, 2.0);
    auto d = max_dist({{0.29, 0.71}}, {{0.05, 0.95}, {0.58, 0.42}});
    EXPECT_NEAR(d.value, 0.58, 1e-12);
    EXPECT_EQ(d.second, 1u);
    EXPECT_THROW(max_dist({}, a), ValidationError);
}

TEST(MaxDist, TiesGoToLowestIndices) {
    // identical rows: the first pair wins
    auto d = max_dist({{0.5, 0.5}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, 0.5}});
    EXPECT_EQ(d.first, 0u);
    EXPECT_EQ(d.second, 0u);
}
