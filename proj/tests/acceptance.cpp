// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "continua/hat.hpp"
#include "continua/models.hpp"
#include "continua/refinement.hpp"
#include "continua/surgery.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace continua;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

Cover unit_balls(const FiniteSpace& x) {
    std::vector<CoverMember> ms;
    for (VertexId v : x.graph().vertices())
        ms.push_back({"B" + std::to_string(v), x.ball(GeometricPoint::at_vertex(v), Rational(1))});
    return Cover(x, std::move(ms));
}

bool four_colored(const Graph& g, const Coloring& c) {
    for (VertexId v : g.vertices()) {
        auto it = c.colors.find(v);
        if (it == c.colors.end() || it->second < 0 || it->second > 3) return false;
    }
    return verify_coloring(g, c).valid;
}

Outcome classifier_matches_brute_force() {
    auto start = std::chrono::steady_clock::now();
    auto graphs = oracle::graphs_up_to_seven();
    std::size_t mismatches = 0;
    for (const Graph& g : graphs) {
        auto nc = oracle::cover_with_nerve(g);
        if (classify_cover(nc.space, nc.cover).kind != oracle::brute_force_class(nc.cover)) ++mismatches;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream d;
    d << graphs.size() << " nerves, " << mismatches << " mismatches, " << secs << " s";
    return {mismatches == 0 && secs < 60.0, d.str()};
}

Outcome three_arc_order() {
    SampledCover c = three_arc_cover(360);
    std::size_t order = cover_order(c.space, c.cover);
    CoverClass kind = classify_cover(c.space, c.cover).kind;
    return {order == 2 && c.cover.size() == 3 && kind == CoverClass::CircleLike,
            "order " + std::to_string(order) + ", " + std::string(to_string(kind))};
}

Outcome coloring() {
    std::mt19937 rng(2024);
    int colored = 0, small = 0, oracle_ok = 0;
    for (int i = 0; i < 200; ++i) {
        Graph g = oracle::precondition_graph(rng, 60);
        bool success = check_coloring_precondition(g).ok && four_colored(g, color_distance2(g));
        if (success) ++colored;
        if (g.vertex_count() <= 15) {
            ++small;
            if (success == coloring_feasible_oracle(g, 4)) ++oracle_ok;
        }
    }
    Graph c5 = make_cycle(5);
    bool rejected = false;
    try {
        color_distance2(c5);
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::PreconditionViolated;
    }
    bool c5_ok = rejected && !coloring_feasible_oracle(c5, 4) && coloring_feasible_oracle(c5, 5);
    std::ostringstream d;
    d << colored << "/200 colored, oracle " << oracle_ok << "/" << small << ", C5 " << (c5_ok ? "rejected" : "wrong");
    return {colored == 200 && oracle_ok == small && small > 0 && c5_ok, d.str()};
}

bool surgery_holds(const Graph& g) {
    std::size_t excess = 0;
    for (VertexId v : g.vertices())
        if (g.degree(v) > 3) excess += g.degree(v) - 3;
    SurgeryResult r = reduce_degree(g);
    if (r.graph.max_degree() > 3 || !r.graph.is_connected() || betti1(r.graph) != betti1(g)) return false;
    if (r.graph.vertex_count() != g.vertex_count() + excess || r.graph.edge_count() != g.edge_count() + excess) return false;
    if (r.links.size() != excess) return false;
    std::size_t longest = 1;
    for (const auto& s : r.split_log) {
        longest = std::max(longest, s.path.size());
        for (VertexId v : s.path)
            if (r.collapse.evaluate(GeometricPoint::at_vertex(v)) != GeometricPoint::at_vertex(s.original)) return false;
    }
    FiniteSpace space = FiniteSpace::sampled(r.graph, 2);
    Cover unit = rescaled_ball_cover(r, space, Rational(1), Rational(1, static_cast<unsigned long>(2 * longest)));
    return collapse_is_u_map(r, space, unit);
}

Outcome surgery() {
    std::mt19937 rng(99);
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        int n = std::uniform_int_distribution<int>(2, 30)(rng);
        int extra = std::uniform_int_distribution<int>(0, n)(rng);
        if (surgery_holds(oracle::random_connected(rng, n, 6, extra))) ++ok;
    }
    return {ok == 100, std::to_string(ok) + "/100 graphs"};
}

Outcome solenoid_hat() {
    auto sys = solenoid_stage(1, 2);
    FiniteSpace x = FiniteSpace::sampled(sys.stage(1), 8);
    HatResult r = build_hat_map(PLMap::identity(sys.stages[1]), sys.bonds[0], x, unit_balls(x));
    const HatAudit& a = r.audit;
    bool ok = a.passed() && a.max_claim_set <= 2 && a.weights_ok && a.pi_agrees && a.pi_preimage_ok && a.u_map &&
              a.pr_y_locally_injective && a.min_multiplicity == 2 && a.max_multiplicity == 2 &&
              r.l_class.kind == CoverClass::CircleLike;
    std::ostringstream d;
    d << "claim set " << a.max_claim_set << ", multiplicity " << a.min_multiplicity << ".." << a.max_multiplicity << ", L "
      << to_string(r.l_class.kind) << ", " << a.failures.size() << " audit failures";
    return {ok, d.str()};
}

Outcome bijective_hats() {
    std::string detail;
    bool ok = true;
    for (auto [name, graph, want] : {std::tuple{"arc", make_path(5), CoverClass::ChainLike},
                                     std::tuple{"tree", make_spider(3, 3), CoverClass::TreeLike}}) {
        auto g = share(graph);
        FiniteSpace x = FiniteSpace::sampled(*g, 8);
        HatResult r = build_hat_map(PLMap::identity(g), PLMap::identity(g), x, unit_balls(x));
        bool one = r.audit.passed() && r.audit.min_multiplicity == 1 && r.audit.max_multiplicity == 1 && r.l_class.kind == want;
        ok = ok && one;
        detail += std::string(detail.empty() ? "" : ", ") + name + (one ? " bijective" : " not bijective");
    }
    return {ok, detail};
}

Outcome winding() {
    auto c = share(make_cycle(6));
    bool ok = winding_number(PLMap::identity(c)) == 1 &&
              winding_number(PLMap::constant(c, c, GeometricPoint::on_edge(2, 3, Rational(1, 2)))) == 0;
    for (int p : {2, 3}) {
        auto sys = solenoid_stage(3, p);
        long power = 1;
        for (std::size_t i = 0; i < sys.bonds.size(); ++i) {
            power *= p;
            ok = ok && winding_number(sys.bonds[i]) == p && winding_number(sys.projection(i + 1, 0)) == power;
        }
    }
    auto sys = solenoid_stage(2, 2);
    for (const PLMap& m : {sys.bonds[0], sys.projection(2, 0), PLMap::identity(sys.stages[1])}) {
        long base = winding_number(m);
        for (int parts : {1, 2, 4}) {
            Subdivision dom(m.domain(), parts);
            Subdivision cod(m.codomain(), parts);
            ok = ok && winding_number(pull_to_subdivided_domain(m, dom)) == base &&
                 winding_number(push_to_subdivided_codomain(m, cod)) == base &&
                 winding_number(push_to_subdivided_codomain(pull_to_subdivided_domain(m, dom), cod)) == base;
        }
    }
    return {ok, "identity, constant, p, p^n, subdivision {1, 2, 4}"};
}

Outcome sweeps() {
    auto knaster = empirical_k_likeness(knaster_stage(3).last_stage(), 4, CoverClass::ChainLike);
    auto again = empirical_k_likeness(knaster_stage(3).last_stage(), 4, CoverClass::ChainLike);
    bool deterministic = again.verdicts.size() == knaster.verdicts.size();
    for (std::size_t i = 0; deterministic && i < again.verdicts.size(); ++i)
        deterministic = again.verdicts[i].description == knaster.verdicts[i].description &&
                        again.verdicts[i].status == knaster.verdicts[i].status && again.verdicts[i].nodes == knaster.verdicts[i].nodes;
    auto solenoid = empirical_k_likeness(solenoid_stage(1, 2).last_stage(), 4, CoverClass::CircleLike);
    auto circle = empirical_k_likeness(make_cycle(12), 3, CoverClass::ChainLike);
    SampledCover arcs = three_arc_cover(12);
    auto pool = connected_pool(arcs.space, static_cast<int>(arcs.space.size()));
    auto chain = find_refinement(arcs.space, arcs.cover, CoverClass::ChainLike, pool);
    bool ok = knaster.generated > 0 && knaster.all_passed() && solenoid.generated > 0 && solenoid.all_passed() &&
              circle.generated > 0 && circle.passed == 0 && circle.budget_exceeded == 0 &&
              chain.status == SearchStatus::NotFound && deterministic;
    std::ostringstream d;
    d << "knaster chain " << knaster.passed << "/" << knaster.generated << ", solenoid circle " << solenoid.passed << "/"
      << solenoid.generated << ", circle 3-cover chain " << circle.passed << "/" << circle.generated
      << ", three arcs chain " << to_string(chain.status) << " (pool " << pool.size() << ")"
      << (deterministic ? ", deterministic" : ", nondeterministic");
    return {ok, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"nerve classifier matches brute force on nerves up to 7 vertices", classifier_matches_brute_force},
        {"three-arc cover of a 360-sample circle has order 2", three_arc_order},
        {"distance-2 four-coloring of 200 generated graphs; C5 rejected", coloring},
        {"degree reduction on 100 random graphs", surgery},
        {"hat audit for the doubling solenoid bond", solenoid_hat},
        {"hat maps for arc and tree are bijective", bijective_hats},
        {"winding numbers", winding},
        {"empirical refinement sweeps", sweeps},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failed;
        std::printf("%s %zu: %s (%s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
