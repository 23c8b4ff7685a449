#include "continua/hat.hpp"
#include "continua/models.hpp"

#include <gtest/gtest.h>

using namespace continua;

namespace {

GeometricPoint at(VertexId v) { return GeometricPoint::at_vertex(v); }
GeometricPoint on(VertexId a, VertexId b, Rational t) { return GeometricPoint::on_edge(a, b, std::move(t)); }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

Cover unit_balls(const FiniteSpace& x) {
    std::vector<CoverMember> ms;
    for (VertexId v : x.graph().vertices()) ms.push_back({"B" + std::to_string(v), x.ball(at(v), Rational(1))});
    return Cover(x, std::move(ms));
}

Coloring coloring_of(std::initializer_list<std::pair<const VertexId, int>> c) { return Coloring{std::map<VertexId, int>(c)}; }

}  // namespace

// ---------------------------------------------------------------------------
// Fineness

TEST(Hat, WholeCoverNeedsNoSubdivision) {
    auto p = share(make_path(4));
    FiniteSpace x = FiniteSpace::sampled(*p, 4);
    Cover whole(x, {{"X", x.full_set()}});
    auto fine = fine_triangulation(PLMap::identity(p), x, whole);
    EXPECT_EQ(fine.parts, 1);
}

TEST(Hat, HalfArcsOfTheSquare) {
    auto c = share(make_cycle(4));
    FiniteSpace x = FiniteSpace::sampled(*c, 8);
    Cover halves(x, {{"A", x.ball(at(0), Rational(3, 2), false)}, {"B", x.ball(at(2), Rational(3, 2), false)}});
    auto fine = fine_triangulation(PLMap::identity(c), x, halves);
    EXPECT_EQ(fine.parts, 4);
    ASSERT_EQ(fine.inscribed_in.size(), fine.gamma.graph().vertex_count());
    // Every 2-ball preimage fits in its recorded member.
    const Graph& gk = fine.gamma.graph();
    for (std::size_t v = 0; v < gk.vertex_count(); ++v) {
        auto centre = fine.gamma.to_coarse(at(gk.vertex_at(v)));
        PointSet ball = x.ball(centre, Rational(2, fine.parts));
        EXPECT_TRUE(ball.is_subset_of(halves.member(fine.inscribed_in[v]).points));
    }
}

TEST(Hat, CloseHubsForceSixParts) {
    // Two adjacent degree-3 vertices.
    auto g = share(Graph({0, 1, 2, 3, 4, 5}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}}));
    FiniteSpace x = FiniteSpace::sampled(*g, 6);
    Cover whole(x, {{"X", x.full_set()}});
    auto fine = fine_triangulation(PLMap::identity(g), x, whole);
    EXPECT_EQ(fine.parts, 6);
    EXPECT_TRUE(check_coloring_precondition(fine.gamma.graph()).ok);
}

TEST(Hat, FinenessErrors) {
    auto star = share(make_star(4));
    FiniteSpace xs = FiniteSpace::sampled(*star, 2);
    Cover whole(xs, {{"X", xs.full_set()}});
    EXPECT_EQ(kind_of([&] { fine_triangulation(PLMap::identity(star), xs, whole); }), ErrorKind::PreconditionViolated);
    // A fold never separates its fiber, whatever the fineness.
    auto sys = knaster_stage(3);
    FiniteSpace x = FiniteSpace::sampled(sys.stage(2), 8);
    EXPECT_EQ(kind_of([&] { fine_triangulation(sys.bonds[1], x, unit_balls(x), 64); }), ErrorKind::NoFinenessAtCap);
}

// ---------------------------------------------------------------------------
// Monochrome covers

TEST(Hat, MonochromeCoverOfPath) {
    Graph p = make_path(3);
    auto mc = monochrome_cover(p, coloring_of({{0, 0}, {1, 1}, {2, 2}}));
    EXPECT_EQ(mc.cover.size(), 3u);
    EXPECT_EQ(mc.colors, (std::vector<int>{0, 1, 2}));
}

TEST(Hat, MonochromeCoverOfHexagon) {
    Graph c = make_cycle(6);
    auto mc = monochrome_cover(c, coloring_of({{0, 0}, {1, 1}, {2, 2}, {3, 0}, {4, 1}, {5, 2}}));
    ASSERT_EQ(mc.cover.size(), 3u);
    for (const auto& m : mc.cover.members()) {
        // Two disjoint open unit balls: a vertex and two midpoints each.
        EXPECT_EQ(m.points.count(), 6u);
        const FiniteSpace& sub = mc.space;
        // Components of the member on the sample graph.
        std::size_t comps = 0;
        PointSet left = m.points;
        while (left.any()) {
            ++comps;
            std::vector<std::size_t> stack{left.find_first()};
            left.reset(stack.back());
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                for (std::size_t w : sub.cell_neighbors(u))
                    if (left.test(w)) {
                        left.reset(w);
                        stack.push_back(w);
                    }
            }
        }
        EXPECT_EQ(comps, 2u);
    }
    EXPECT_EQ(cover_order(mc.space, mc.cover), 2u);
}

TEST(Hat, MonochromeCoverOfSpider) {
    Graph s = make_spider(3, 3);
    Coloring chi = color_distance2(s);
    auto mc = monochrome_cover(s, chi);
    auto it = std::find(mc.colors.begin(), mc.colors.end(), 3);
    ASSERT_NE(it, mc.colors.end());
    const auto& hub = mc.cover.member(static_cast<std::size_t>(it - mc.colors.begin()));
    EXPECT_EQ(hub.points, mc.space.ball(at(0), Rational(1)));
    EXPECT_EQ(kind_of([&] { monochrome_cover(s, coloring_of({{0, 0}, {1, 0}})); }), ErrorKind::InvalidColoring);
}

// ---------------------------------------------------------------------------
// Rectangles

TEST(Hat, RectangleCounts) {
    Graph p = make_path(4);
    Coloring chi = coloring_of({{0, 0}, {1, 1}, {2, 2}, {3, 0}});
    FiniteSpace one = FiniteSpace::discrete({0});
    Cover single(one, {{"W", one.full_set()}});
    std::vector<int> xi{0};
    EXPECT_EQ(build_rectangles(one, single, xi, p, chi).size(), 2u);

    Graph c = make_cycle(9);
    Coloring chi9;
    for (int v = 0; v < 9; ++v) chi9.colors.emplace(v, v % 3);
    FiniteSpace two = FiniteSpace::discrete({0, 1, 2});
    Cover overlap = Cover::from_ids(two, {{"W0", {0, 1}}, {"W1", {1, 2}}});
    std::vector<int> same{1, 1};
    EXPECT_EQ(build_rectangles(two, overlap, same, c, chi9).size(), 6u);

    Cover thick = Cover::from_ids(two, {{"W0", {0, 1}}, {"W1", {1, 2}}, {"W2", {1}}});
    std::vector<int> three{0, 1, 2};
    EXPECT_EQ(kind_of([&] { build_rectangles(two, thick, three, c, chi9); }), ErrorKind::OrderViolation);
}

TEST(Hat, KnasterRectangleCountIsAProductSum) {
    auto sys = knaster_stage(3);
    Graph fine = subdivide(sys.stage(2), 2).graph();
    Coloring chi = color_distance2(fine);
    StarCover w(sys.stage(0), 2);
    std::vector<int> xi;
    for (std::size_t m = 0; m < w.size(); ++m) xi.push_back(static_cast<int>(m % 4));
    HatMachinery hm(w, fine, chi, xi);
    std::size_t want = 0;
    for (int c : xi)
        for (const auto& [v, col] : chi.colors) want += col == c;
    EXPECT_EQ(hm.rectangles().size(), want);
}

// ---------------------------------------------------------------------------
// lambda_R and pi on a single edge

class TwoStars : public ::testing::Test {
protected:
    // Y is one edge with stars W0, W1; Gamma is one edge with colors 0, 1.
    TwoStars() : hm(StarCover(make_path(2), 1), make_path(2), coloring_of({{0, 0}, {1, 1}}), {0, 1}) {}
    HatMachinery hm;
};

TEST_F(TwoStars, Rectangles) {
    ASSERT_EQ(hm.rectangles().size(), 2u);
    EXPECT_EQ(hm.rectangles()[0], (Rectangle{0, 0}));
    EXPECT_EQ(hm.rectangles()[1], (Rectangle{1, 1}));
    EXPECT_EQ(rectangles_at(hm, 0, at(0)), (std::vector<std::size_t>{0}));
    EXPECT_EQ(rectangles_at(hm, 0, on(0, 1, Rational(1, 3))), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(kind_of([&] { rectangles_at(hm, 0, at(1)); }), ErrorKind::NotInW);
}

TEST_F(TwoStars, LambdaEndpointsAndMidpoint) {
    EXPECT_EQ(lambda_r(hm, 0, at(0)), at(0));
    EXPECT_EQ(lambda_r(hm, 1, at(1)), at(1));
    EXPECT_EQ(lambda_r(hm, 0, on(0, 1, Rational(1, 2))), on(0, 1, Rational(1, 2)));
    EXPECT_EQ(lambda_r(hm, 1, on(0, 1, Rational(1, 2))), on(0, 1, Rational(1, 2)));
    // Weights (1/4 on W1) put lambda a quarter of the way to v_S.
    EXPECT_EQ(lambda_r(hm, 0, on(0, 1, Rational(1, 4))), on(0, 1, Rational(1, 4)));
}

TEST_F(TwoStars, PiIsARetraction) {
    for (int k = 0; k <= 8; ++k) {
        auto y = on(0, 1, Rational(k, 8));
        for (std::size_t r = 0; r < hm.rectangles().size(); ++r) {
            if (!hm.stars().contains(hm.rectangles()[r].w, y)) continue;
            auto l = lambda_r(hm, r, y);
            EXPECT_EQ(project_pi(hm, y, l), l);
        }
    }
}

TEST_F(TwoStars, PiAgreesOnOverlaps) {
    for (int k = 1; k < 8; ++k) {
        auto y = on(0, 1, Rational(k, 8));
        for (int j = 1; j < 8; ++j) {
            auto t = on(0, 1, Rational(j, 8));
            auto rs = hm.containing(y, t);
            ASSERT_EQ(rs.size(), 2u);
            EXPECT_EQ(hm.lambda(rs[0], y), hm.lambda(rs[1], y));
            EXPECT_EQ(project_pi(hm, y, t), on(0, 1, Rational(k, 8)));
        }
    }
}

TEST(Hat, ConstantCaseAndOutsideRectangles) {
    // Both stars carry color 0: every rectangle uses v = 0, so R_{R,y} = {R} in Gamma terms.
    HatMachinery hm(StarCover(make_path(2), 1), make_path(3), coloring_of({{0, 0}, {1, 1}, {2, 2}}), {0, 0});
    auto y = on(0, 1, Rational(1, 3));
    EXPECT_EQ(project_pi(hm, y, on(0, 1, Rational(1, 2))), at(0));
    EXPECT_EQ(project_pi(hm, y, at(0)), at(0));
    EXPECT_EQ(kind_of([&] { project_pi(hm, y, at(2)); }), ErrorKind::OutsideRectangles);
}

TEST(Hat, WeightsFormAPartitionOfUnity) {
    StarCover w(make_spider(3, 2), 2);
    auto sc = w.sampled();
    for (std::size_t i = 0; i < sc.space.size(); ++i) {
        // Sample points live on Y_m itself.
        const GeometricPoint& fine_y = sc.space.point(i);
        Rational sum(0);
        for (std::size_t m = 0; m < w.size(); ++m) {
            Rational lam = w.weight(m, fine_y);
            EXPECT_GE(lam, 0);
            if (!w.contains(m, fine_y)) EXPECT_EQ(lam, 0);
            sum += lam;
        }
        EXPECT_EQ(sum, 1);
    }
    EXPECT_EQ(cover_order(sc.space, sc.cover), 2u);
}

// ---------------------------------------------------------------------------
// The whole pipeline

TEST(Hat, CircleIdentity) {
    auto c = share(make_cycle(6));
    FiniteSpace x = FiniteSpace::sampled(*c, 4);
    Cover whole(x, {{"X", x.full_set()}});
    auto r = build_hat_map(PLMap::identity(c), PLMap::identity(c), x, whole);
    for (const auto& f : r.audit.failures) ADD_FAILURE() << f;
    EXPECT_EQ(r.audit.min_multiplicity, 1u);
    EXPECT_EQ(r.audit.max_multiplicity, 1u);
    EXPECT_EQ(r.l_class.kind, CoverClass::CircleLike);
}

TEST(Hat, SolenoidDoubling) {
    auto sys = solenoid_stage(1, 2);
    FiniteSpace x = FiniteSpace::sampled(sys.stage(1), 8);
    auto r = build_hat_map(PLMap::identity(sys.stages[1]), sys.bonds[0], x, unit_balls(x));
    for (const auto& f : r.audit.failures) ADD_FAILURE() << f;
    EXPECT_TRUE(r.audit.passed());
    EXPECT_LE(r.audit.max_claim_set, 2u);
    EXPECT_TRUE(r.audit.weights_ok);
    EXPECT_TRUE(r.audit.pi_agrees);
    EXPECT_TRUE(r.audit.pi_preimage_ok);
    EXPECT_TRUE(r.audit.u_map);
    EXPECT_TRUE(r.audit.pr_y_locally_injective);
    EXPECT_EQ(r.audit.min_multiplicity, 2u);
    EXPECT_EQ(r.audit.max_multiplicity, 2u);
    EXPECT_EQ(r.l_class.kind, CoverClass::CircleLike);
}

TEST(Hat, ArcIsBijective) {
    auto p = share(make_path(5));
    FiniteSpace x = FiniteSpace::sampled(*p, 8);
    auto r = build_hat_map(PLMap::identity(p), PLMap::identity(p), x, unit_balls(x));
    for (const auto& f : r.audit.failures) ADD_FAILURE() << f;
    EXPECT_EQ(r.audit.min_multiplicity, 1u);
    EXPECT_EQ(r.audit.max_multiplicity, 1u);
    EXPECT_EQ(r.l_class.kind, CoverClass::ChainLike);
}

TEST(Hat, SpiderIsBijective) {
    auto s = share(make_spider(3, 3));
    FiniteSpace x = FiniteSpace::sampled(*s, 8);
    auto r = build_hat_map(PLMap::identity(s), PLMap::identity(s), x, unit_balls(x));
    for (const auto& f : r.audit.failures) ADD_FAILURE() << f;
    EXPECT_EQ(r.audit.min_multiplicity, 1u);
    EXPECT_EQ(r.audit.max_multiplicity, 1u);
    EXPECT_EQ(r.l_class.kind, CoverClass::TreeLike);
}

TEST(Hat, SamplesLieInRectanglesAndOnLambdaGraphs) {
    auto sys = solenoid_stage(1, 2);
    FiniteSpace x = FiniteSpace::sampled(sys.stage(1), 8);
    auto r = build_hat_map(PLMap::identity(sys.stages[1]), sys.bonds[0], x, unit_balls(x));
    const auto& hm = r.machinery;
    ASSERT_EQ(r.samples.size(), x.size());
    for (const auto& lp : r.samples) {
        auto rs = hm.containing(lp.y, lp.lambda);
        ASSERT_FALSE(rs.empty());
        // pi fixes points of the form (y, lambda_R(y)).
        EXPECT_EQ(hm.project(lp.y, lp.lambda), lp.lambda);
    }
}

TEST(Hat, FoldOverYHasNoColorAssignment) {
    auto sys = knaster_stage(3);
    FiniteSpace x = FiniteSpace::sampled(sys.stage(2), 8);
    EXPECT_EQ(kind_of([&] { build_hat_map(PLMap::identity(sys.stages[2]), sys.bonds[1], x, unit_balls(x), {64, {}, {}}); }),
              ErrorKind::NoXiAssignment);
}

TEST(Hat, DomainsMustAgree) {
    auto a = share(make_path(3));
    auto b = share(make_path(4));
    FiniteSpace x = FiniteSpace::sampled(*a, 2);
    Cover whole(x, {{"X", x.full_set()}});
    EXPECT_EQ(kind_of([&] { build_hat_map(PLMap::identity(a), PLMap::identity(b), x, whole); }), ErrorKind::DomainMismatch);
}
