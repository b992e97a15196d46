#include "qifrow/feasible.hpp"

#include <gtest/gtest.h>

#include "qifrow/rng.hpp"
#include "oracles.hpp"

using namespace qifrow;
namespace oracle = qifrow::testing;

namespace {

// LP-only feasibility check of the transport block, independent of the
// prefix-dominance shortcut.
bool lp_feasible(const Vec& q_hat, const Vec& q) {
    lp::Problem p;
    std::vector<int> q_vars(q.size());
    for (std::size_t o = 0; o < q.size(); ++o)
        q_vars[o] = p.add_variable("q" + std::to_string(o), q[o], q[o]);
    append_padding_constraints(p, q_vars, q_hat);
    p.set_objective({});
    return lp::solve(p).status == lp::Status::Optimal;
}

}  // namespace

TEST(PaddingPrefix, KnownCases) {
    EXPECT_TRUE(is_feasible_padding({0.5, 0.5, 0.0}, {0.5, 0.5, 0.0}));
    EXPECT_FALSE(is_feasible_padding({0.0, 1.0}, {1.0, 0.0}));
    EXPECT_TRUE(is_feasible_padding({0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}));
    EXPECT_FALSE(is_feasible_padding({0.5, 0.5, 0.0}, {0.6, 0.4, 0.0}));
    // point mass at the top admits only itself
    EXPECT_TRUE(is_feasible_padding({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}));
    EXPECT_FALSE(is_feasible_padding({0.0, 0.0, 1.0}, {0.0, 0.1, 0.9}));
    // point mass at the bottom admits everything
    EXPECT_TRUE(is_feasible_padding({1.0, 0.0, 0.0}, {0.2, 0.3, 0.5}));
    EXPECT_THROW(is_feasible_padding({1.0}, {0.5, 0.5}), ValidationError);
}

TEST(PaddingPrefix, AgreesWithLpOnRandomPairs) {
    Rng rng(808);
    int feasible_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t m = 2 + static_cast<std::size_t>(rng.next_int(0, 3));
        Vec base = oracle::random_sparse_distribution(rng, m);
        Vec target = oracle::random_sparse_distribution(rng, m);
        bool prefix = is_feasible_padding(base, target);
        EXPECT_EQ(prefix, lp_feasible(base, target));
        prefix ? ++feasible_seen : ++infeasible_seen;
    }
    EXPECT_GT(feasible_seen, 50);
    EXPECT_GT(infeasible_seen, 50);
}

TEST(PaddingConstraints, ComposableIntoLargerPrograms) {
    // the block plus an objective over q behaves like any other LP piece
    lp::Problem p;
    std::vector<int> q_vars;
    for (int o = 0; o < 3; ++o) q_vars.push_back(p.add_variable("q" + std::to_string(o), 0.0));
    append_padding_constraints(p, q_vars, {0.5, 0.5, 0.0});
    // maximize mass on the last observable
    p.set_objective({{q_vars[2], -1.0}});
    auto sol = lp::solve(p);
    ASSERT_EQ(sol.status, lp::Status::Optimal);
    EXPECT_NEAR(sol.values[q_vars[2]], 1.0, 1e-9);
}

TEST(ExtractStrategy, IdentityWhenNothingMoves) {
    Vec q{0.5, 0.3, 0.2};
    PaddingStrategy t = extract_strategy(q, q, {1, 2, 3});
    for (std::size_t o = 0; o < 3; ++o) {
        EXPECT_NEAR(t.transport[o][o], q[o], 1e-9);
        for (std::size_t o2 = 0; o2 < 3; ++o2) {
            if (o2 != o) EXPECT_NEAR(t.transport[o][o2], 0.0, 1e-9);
        }
    }
    Vec row = t.row_distribution(1);
    EXPECT_NEAR(row[1], 1.0, 1e-9);
}

TEST(ExtractStrategy, ForcedMove) {
    PaddingStrategy t = extract_strategy({1.0, 0.0}, {0.0, 1.0}, {1, 2});
    Vec row = t.row_distribution(0);
    EXPECT_NEAR(row[1], 1.0, 1e-12);
    EXPECT_THROW(t.row_distribution(1), ValidationError);
    EXPECT_THROW(extract_strategy({0.0, 1.0}, {1.0, 0.0}, {1, 2}), ValidationError);
}

TEST(ExtractStrategy, MarginalsReproduce) {
    Rng rng(4321);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 2 + static_cast<std::size_t>(rng.next_int(0, 4));
        Vec base = oracle::random_sparse_distribution(rng, m);
        // build a feasible target by pushing mass upward through a random coupling
        Vec target(m, 0.0);
        for (std::size_t o = 0; o < m; ++o) {
            if (base[o] == 0.0) continue;
            Vec split = oracle::random_distribution(rng, m - o);
            for (std::size_t k = 0; k < split.size(); ++k)
                target[o + k] += base[o] * split[k];
        }
        ASSERT_TRUE(is_feasible_padding(base, target, 1e-9));

        std::vector<ObsId> obs;
        for (std::size_t o = 0; o < m; ++o) obs.push_back(static_cast<ObsId>(o + 1));
        PaddingStrategy t = extract_strategy(base, target, obs);
        Vec got_base = t.base(), got_target = t.target();
        for (std::size_t o = 0; o < m; ++o) {
            EXPECT_NEAR(got_base[o], base[o], 1e-8);
            EXPECT_NEAR(got_target[o], target[o], 1e-8);
            for (std::size_t o2 = 0; o2 < o; ++o2)
                EXPECT_EQ(t.transport[o][o2], 0.0);  // never downward
        }
    }
}

TEST(ExtractStrategy, DegenerateSupports) {
    // all mass already at the top: the only transport is the identity there
    PaddingStrategy top = extract_strategy({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {1, 2, 3});
    EXPECT_NEAR(top.transport[2][2], 1.0, 1e-12);
    EXPECT_THROW(top.row_distribution(0), ValidationError);

    // a single source spreading everywhere above it
    PaddingStrategy spread = extract_strategy({1.0, 0.0, 0.0}, {0.2, 0.3, 0.5}, {1, 2, 3});
    Vec row = spread.row_distribution(0);
    EXPECT_NEAR(row[0], 0.2, 1e-9);
    EXPECT_NEAR(row[1], 0.3, 1e-9);
    EXPECT_NEAR(row[2], 0.5, 1e-9);
}

TEST(FeasibleSet, ContainsChecks) {
    FeasibleSet simplex = FeasibleSet::full_simplex();
    EXPECT_TRUE(simplex.contains({0.5, 0.5}));
    EXPECT_FALSE(simplex.contains({0.7, 0.5}));
    EXPECT_FALSE(simplex.contains({1.2, -0.2}));

    FeasibleSet sys = FeasibleSet::linear_system({{{1.0, 0.0}, lp::Relation::Le, 0.3}});
    EXPECT_TRUE(sys.contains({0.25, 0.75}));
    EXPECT_FALSE(sys.contains({0.4, 0.6}));

    FeasibleSet pad = FeasibleSet::non_negative_padding({0.5, 0.5, 0.0});
    EXPECT_TRUE(pad.contains({0.0, 0.5, 0.5}));
    EXPECT_FALSE(pad.contains({0.6, 0.4, 0.0}));
    EXPECT_THROW(FeasibleSet::non_negative_padding({0.5, 0.6}), ValidationError);
}
