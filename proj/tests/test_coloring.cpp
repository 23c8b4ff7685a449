#include "continua/coloring.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace continua;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

void expect_valid_four_coloring(const Graph& g, const Coloring& c) {
    ASSERT_EQ(c.colors.size(), g.vertex_count());
    for (const auto& [v, col] : c.colors) {
        ASSERT_GE(col, 0);
        ASSERT_LT(col, 4);
    }
    ASSERT_TRUE(verify_coloring(g, c).valid);
}

}  // namespace

TEST(Coloring, WorkedExamples) {
    expect_valid_four_coloring(make_path(10), color_distance2(make_path(10)));
    expect_valid_four_coloring(make_cycle(6), color_distance2(make_cycle(6)));
    expect_valid_four_coloring(make_cycle(7), color_distance2(make_cycle(7)));
    Graph spider = make_spider(3, 5);
    Coloring c = color_distance2(spider);
    expect_valid_four_coloring(spider, c);
    EXPECT_EQ(c.at(0), 3);
}

TEST(Coloring, CycleOfFiveIsRejected) {
    Graph c5 = make_cycle(5);
    EXPECT_FALSE(check_coloring_precondition(c5).ok);
    EXPECT_EQ(kind_of([&] { color_distance2(c5); }), ErrorKind::PreconditionViolated);
    EXPECT_FALSE(coloring_feasible_oracle(c5, 4));
    EXPECT_TRUE(coloring_feasible_oracle(c5, 5));
}

TEST(Coloring, PreconditionFailures) {
    EXPECT_FALSE(check_coloring_precondition(make_star(4)).ok);
    EXPECT_FALSE(check_coloring_precondition(make_cycle(4)).ok);
    // Two hubs at distance 5.
    Graph two_hubs({0, 1, 2, 3, 4, 5, 6, 7, 8, 9},
                   {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 6}, {0, 7}, {5, 8}, {5, 9}});
    EXPECT_FALSE(check_coloring_precondition(two_hubs).ok);
    Graph disconnected({0, 1, 2}, {{0, 1}});
    EXPECT_FALSE(check_coloring_precondition(disconnected).ok);
    EXPECT_TRUE(check_coloring_precondition(make_spider(3, 1)).ok);
}

TEST(Coloring, VerifyReportsFirstViolation) {
    Graph p = make_path(3);
    Coloring bad{{{0, 0}, {1, 1}, {2, 0}}};
    auto check = verify_coloring(p, bad);
    EXPECT_FALSE(check.valid);
    EXPECT_EQ(check.violation, std::make_pair(0, 2));
    Coloring missing{{{0, 0}, {1, 1}}};
    EXPECT_EQ(kind_of([&] { verify_coloring(p, missing); }), ErrorKind::InvalidColoring);
}

TEST(Coloring, OracleAgreesWithEnumeration) {
    for (const Graph& g : oracle::graphs_up_to_seven()) {
        if (g.vertex_count() > 6) continue;
        for (int k : {3, 4}) ASSERT_EQ(coloring_feasible_oracle(g, k), oracle::coloring_exists_by_enumeration(g, k));
    }
}

TEST(Coloring, OracleCap) {
    EXPECT_EQ(kind_of([] { coloring_feasible_oracle(make_path(70), 4); }), ErrorKind::CapExceeded);
    EXPECT_TRUE(coloring_feasible_oracle(make_path(70), 4, {100}));
}

TEST(Coloring, GeneratedPreconditionGraphs) {
    std::mt19937 rng(2024);
    int generated = 0;
    int small = 0;
    while (generated < 200) {
        Graph g = oracle::precondition_graph(rng, 60);
        ASSERT_TRUE(check_coloring_precondition(g).ok);
        ++generated;
        Coloring c = color_distance2(g);
        expect_valid_four_coloring(g, c);
        if (g.vertex_count() <= 15) {
            ++small;
            ASSERT_TRUE(coloring_feasible_oracle(g, 4));
        }
    }
    EXPECT_GT(small, 10);
}

TEST(Coloring, ExhaustiveSmallPreconditionGraphs) {
    // All precondition graphs on at most 7 vertices (paths, cycles C6 and C7, small spiders).
    for (const Graph& g : oracle::graphs_up_to_seven()) {
        if (!check_coloring_precondition(g).ok) continue;
        expect_valid_four_coloring(g, color_distance2(g));
        ASSERT_TRUE(coloring_feasible_oracle(g, 4));
    }
    for (int n = 6; n <= 15; ++n) {
        Graph c = make_cycle(n);
        expect_valid_four_coloring(c, color_distance2(c));
        ASSERT_TRUE(coloring_feasible_oracle(c, 4));
    }
}
