#include "continua/models.hpp"
#include "continua/pl_map.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace continua;

namespace {

GeometricPoint at(VertexId v) { return GeometricPoint::at_vertex(v); }
GeometricPoint on(VertexId a, VertexId b, Rational t) { return GeometricPoint::on_edge(a, b, std::move(t)); }

/// Reflection of C_n fixing vertex 0.
PLMap reflection(const PLMap::GraphPtr& c) {
    const int n = static_cast<int>(c->vertex_count());
    std::map<VertexId, VertexId> m;
    for (int i = 0; i < n; ++i) m.emplace(i, (n - i) % n);
    return PLMap::simplicial(c, c, m);
}

/// C3 -> C3 wrapping each edge once around the whole circle.
PLMap triple_wrap(const PLMap::GraphPtr& c) {
    std::map<VertexId, GeometricPoint> images{{0, at(0)}, {1, at(0)}, {2, at(0)}};
    std::vector<std::vector<Breakpoint>> tracks;
    for (const Edge& e : c->edges()) {
        // Edge lo -> hi runs 0 -> 1 -> 2 -> 0 when lo < hi in canonical order, except {0,2} which runs backwards.
        bool forward = !(e.lo == 0 && e.hi == 2);
        std::vector<VertexId> route = forward ? std::vector<VertexId>{0, 1, 2, 0} : std::vector<VertexId>{0, 2, 1, 0};
        std::vector<Breakpoint> bp;
        for (int k = 0; k <= 3; ++k) bp.push_back({Rational(k, 3), at(route[static_cast<std::size_t>(k)])});
        tracks.push_back(std::move(bp));
    }
    return PLMap(c, c, std::move(images), std::move(tracks));
}

}  // namespace

TEST(PLMap, EvaluateInterpolatesTracks) {
    auto p = share(make_path(3));
    auto q = share(make_path(2));
    // Fold the path 0-1-2 onto the edge 0-1 with a breakpoint at the middle of {0,1}.
    std::map<VertexId, GeometricPoint> images{{0, at(0)}, {1, at(0)}, {2, at(1)}};
    std::vector<std::vector<Breakpoint>> tracks{{{0, at(0)}, {Rational(1, 2), at(1)}, {1, at(0)}}, {{0, at(0)}, {1, at(1)}}};
    PLMap m(p, q, images, tracks);
    EXPECT_EQ(m.evaluate(on(0, 1, Rational(1, 4))), on(0, 1, Rational(1, 2)));
    EXPECT_EQ(m.evaluate(on(0, 1, Rational(3, 4))), on(0, 1, Rational(1, 2)));
    EXPECT_EQ(m.evaluate(on(1, 2, Rational(1, 3))), on(0, 1, Rational(1, 3)));
    EXPECT_FALSE(is_locally_injective(m).locally_injective);
}

TEST(PLMap, RejectsInvalidTracks) {
    auto p = share(make_path(2));
    auto c = share(make_cycle(4));
    // Consecutive breakpoints on non-adjacent vertices.
    std::map<VertexId, GeometricPoint> images{{0, at(0)}, {1, at(2)}};
    std::vector<std::vector<Breakpoint>> tracks{{{0, at(0)}, {1, at(2)}}};
    EXPECT_THROW(PLMap(p, c, images, tracks), Error);
    EXPECT_THROW(PLMap::simplicial(p, c, {{0, 0}}), Error);
}

TEST(PLMap, CompositionEvaluatesPointwise) {
    auto sys = knaster_stage(4);
    PLMap two = compose(sys.bonds[0], sys.bonds[1]);
    PLMap three = sys.projection(3, 0);
    for (const Edge& e : sys.stage(3).edges()) {
        for (int k = 0; k <= 6; ++k) {
            auto x = on(e.lo, e.hi, Rational(k, 6));
            EXPECT_EQ(three.evaluate(x), sys.bonds[0].evaluate(sys.bonds[1].evaluate(sys.bonds[2].evaluate(x))));
        }
    }
    for (const Edge& e : sys.stage(2).edges()) {
        auto x = on(e.lo, e.hi, Rational(1, 3));
        EXPECT_EQ(two.evaluate(x), sys.bonds[0].evaluate(sys.bonds[1].evaluate(x)));
    }
}

TEST(PLMap, WindingWorkedExamples) {
    auto c = share(make_cycle(6));
    EXPECT_EQ(winding_number(PLMap::identity(c)), 1);
    EXPECT_EQ(winding_number(PLMap::constant(c, c, on(2, 3, Rational(1, 2)))), 0);
    EXPECT_EQ(winding_number(reflection(c)), -1);
    auto c3 = share(make_cycle(3));
    EXPECT_EQ(winding_number(triple_wrap(c3)), 3);
    EXPECT_THROW(winding_number(PLMap::identity(share(make_path(4)))), Error);
}

TEST(PLMap, SolenoidBondsWindP) {
    for (int p : {2, 3}) {
        auto sys = solenoid_stage(3, p);
        long power = 1;
        for (std::size_t i = 0; i < sys.bonds.size(); ++i) {
            EXPECT_EQ(winding_number(sys.bonds[i]), p);
            power *= p;
            EXPECT_EQ(winding_number(sys.projection(i + 1, 0)), power);
        }
    }
}

TEST(PLMap, WindingIsMultiplicative) {
    auto c = share(make_cycle(6));
    PLMap r = reflection(c);
    auto sys = solenoid_stage(1, 2);
    PLMap bond = sys.bonds[0];
    auto onto = share(sys.stage(0));
    PLMap flip = PLMap::simplicial(onto, onto, {{0, 0}, {1, 5}, {2, 4}, {3, 3}, {4, 2}, {5, 1}});
    EXPECT_EQ(winding_number(compose(flip, bond)), -2);
    EXPECT_EQ(winding_number(compose(r, r)), 1);
}

TEST(PLMap, WindingIsSubdivisionInvariant) {
    auto sys = solenoid_stage(2, 2);
    for (const PLMap& m : {sys.bonds[0], sys.projection(2, 0), PLMap::identity(sys.stages[1])}) {
        long base = winding_number(m);
        for (int parts : {1, 2, 4}) {
            Subdivision dom(m.domain(), parts);
            Subdivision cod(m.codomain(), parts);
            EXPECT_EQ(winding_number(pull_to_subdivided_domain(m, dom)), base);
            EXPECT_EQ(winding_number(push_to_subdivided_codomain(m, cod)), base);
            EXPECT_EQ(winding_number(push_to_subdivided_codomain(pull_to_subdivided_domain(m, dom), cod)), base);
        }
    }
}

TEST(PLMap, WindingAlongExplicitLoop) {
    auto f8 = share(make_figure_eight(3));
    auto c = share(make_cycle(3));
    // Loop one (0,1,2) wraps once, loop two (0,3,4) collapses to vertex 0.
    PLMap m = PLMap::simplicial(f8, c, {{0, 0}, {1, 1}, {2, 2}, {3, 0}, {4, 0}});
    std::vector<VertexId> loop1{0, 1, 2};
    std::vector<VertexId> loop2{0, 3, 4};
    std::vector<VertexId> loop1_rev{0, 2, 1};
    EXPECT_EQ(winding_number(m, loop1), 1);
    EXPECT_EQ(winding_number(m, loop1_rev), -1);
    EXPECT_EQ(winding_number(m, loop2), 0);
}

TEST(PLMap, LocalInjectivity) {
    auto c = share(make_cycle(6));
    EXPECT_TRUE(is_locally_injective(PLMap::identity(c)).locally_injective);
    EXPECT_TRUE(is_locally_injective(solenoid_stage(1, 2).bonds[0]).locally_injective);
    EXPECT_FALSE(is_locally_injective(PLMap::constant(c, c, at(0))).locally_injective);
    EXPECT_FALSE(is_locally_injective(knaster_stage(2).bonds[0]).locally_injective);
    auto star = share(make_star(3));
    auto path = share(make_path(3));
    // Two arms of the star folded onto the same edge.
    EXPECT_FALSE(is_locally_injective(PLMap::simplicial(star, path, {{0, 1}, {1, 0}, {2, 0}, {3, 2}})).locally_injective);
}

TEST(PLMap, FibersOfTheTentMap) {
    auto sys = knaster_stage(2);
    const PLMap& tent = sys.bonds[0];
    FiniteSpace x = FiniteSpace::sampled(sys.stage(1), 4);
    auto f = fiber(tent, x, at(0));
    EXPECT_EQ(f.preimage.size(), 2u);
    EXPECT_EQ(f.diameter, Rational(2));
    auto mid = fiber(tent, x, at(1));
    EXPECT_EQ(mid.preimage.size(), 1u);
    EXPECT_EQ(mid.diameter, Rational(0));
}

TEST(PLMap, UMapExamples) {
    auto sys = knaster_stage(2);
    const PLMap& tent = sys.bonds[0];
    FiniteSpace x = FiniteSpace::sampled(sys.stage(1), 2);
    // Unit balls around vertices: the fold pairs points at distance up to 2.
    std::vector<CoverMember> small;
    for (VertexId v : sys.stage(1).vertices()) small.push_back({"B", x.ball(at(v), Rational(1))});
    auto rep = is_u_map(tent, x, Cover(x, small));
    EXPECT_FALSE(rep.is_u_map);
    ASSERT_TRUE(rep.first_failure.has_value());
    EXPECT_EQ(rep.worst.diameter, Rational(2));
    // One member holding everything.
    Cover whole(x, {{"X", x.full_set()}});
    EXPECT_TRUE(is_u_map(tent, x, whole).is_u_map);
    // The identity is a U-map for any cover.
    PLMap id = PLMap::identity(sys.stages[1]);
    EXPECT_TRUE(is_u_map(id, x, Cover(x, small)).is_u_map);
}

TEST(PLMap, UMapNeedsGridAlignedBreakpoints) {
    auto p = share(make_path(2));
    std::map<VertexId, GeometricPoint> images{{0, at(0)}, {1, at(0)}};
    std::vector<std::vector<Breakpoint>> tracks{{{0, at(0)}, {Rational(1, 3), at(1)}, {1, at(0)}}};
    PLMap m(p, p, images, tracks);
    FiniteSpace x = FiniteSpace::sampled(*p, 2);
    Cover whole(x, {{"X", x.full_set()}});
    try {
        is_u_map(m, x, whole);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResolutionTooCoarse);
    }
    FiniteSpace fine = FiniteSpace::sampled(*p, 3);
    EXPECT_TRUE(is_u_map(m, fine, Cover(fine, {{"X", fine.full_set()}})).is_u_map);
}

TEST(PLMap, ProductSeparatesFolds) {
    auto sys = knaster_stage(2);
    const PLMap& tent = sys.bonds[0];
    PLMap id = PLMap::identity(sys.stages[1]);
    ProductMap prod = diagonal_product(tent, id);
    auto a = on(0, 1, Rational(1, 2));
    auto b = on(1, 2, Rational(1, 2));
    EXPECT_EQ(tent.evaluate(a), tent.evaluate(b));
    EXPECT_NE(prod.evaluate(a), prod.evaluate(b));
}

TEST(PLMap, RandomSimplicialCompositionsAreConsistent) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = share(oracle::random_connected(rng, 6, 3, 2));
        auto h = share(make_cycle(5));
        // Random vertex map into C5 sending adjacent vertices to equal or adjacent vertices.
        std::map<VertexId, VertexId> vm;
        std::vector<int> label(g->vertex_count(), -1);
        label[0] = 0;
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t w : g->neighbor_indices(u)) {
                if (label[w] >= 0) continue;
                label[w] = (label[u] + std::uniform_int_distribution<int>(4, 6)(rng)) % 5;
                stack.push_back(w);
            }
        }
        for (std::size_t i = 0; i < label.size(); ++i) vm.emplace(g->vertex_at(i), label[i]);
        std::optional<PLMap> m;
        try {
            m = PLMap::simplicial(g, h, vm);
        } catch (const Error&) {
            continue;  // a non-tree edge joined non-adjacent labels
        }
        PLMap twice = compose(PLMap::identity(h), *m);
        for (const Edge& e : g->edges()) {
            auto x = on(e.lo, e.hi, Rational(2, 5));
            EXPECT_EQ(twice.evaluate(x), m->evaluate(x));
        }
    }
}
