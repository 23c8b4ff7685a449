#pragma once

// Finite inverse-limit stages of classical continua and the empirical
// n-K-likeness sweep over a deterministic family of small covers.

#include "continua/cover.hpp"
#include "continua/graph.hpp"
#include "continua/pl_map.hpp"
#include "continua/refinement.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace continua {

/// stages[0] is the coarsest stage; bonds[i] maps stages[i+1] onto stages[i].
struct InverseSystem {
    std::vector<PLMap::GraphPtr> stages;
    std::vector<PLMap> bonds;

    const Graph& stage(std::size_t i) const { return *stages.at(i); }
    const Graph& last_stage() const { return *stages.back(); }

    /// Composite bond from stage `from` down to stage `to` (from >= to).
    PLMap projection(std::size_t from, std::size_t to) const {
        if (from < to || from >= stages.size()) throw Error(ErrorKind::InvalidArgument, "bad projection indices");
        PLMap out = PLMap::identity(stages[from]);
        for (std::size_t k = from; k > to; --k) out = compose(bonds[k - 1], out);
        return out;
    }
};

/// Knaster bucket-handle stages: stage k (1-based) is a path with 2^(k-1)
/// unit edges modelling [0,1]; bonds are tent maps x -> 1 - |2x - 1|.
inline InverseSystem knaster_stage(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "stage count must be >= 1");
    if (n > 8) throw Error(ErrorKind::CapExceeded, "knaster stages are capped at 8");
    InverseSystem sys;
    for (int k = 1; k <= n; ++k) sys.stages.push_back(share(make_path((1 << (k - 1)) + 1)));
    for (int k = 1; k < n; ++k) {
        const int half = 1 << (k - 1);
        std::map<VertexId, VertexId> vm;
        for (int j = 0; j <= 2 * half; ++j) vm.emplace(j, j <= half ? j : 2 * half - j);
        sys.bonds.push_back(PLMap::simplicial(sys.stages[k], sys.stages[k - 1], vm));
    }
    return sys;
}

/// p-adic solenoid stages C_{base}, C_{base p}, ..., C_{base p^n} with
/// degree-p covering bonds i -> i mod |previous stage|.
inline InverseSystem solenoid_stage(int n, int p, int base = 6) {
    if (n < 1 || p < 2) throw Error(ErrorKind::InvalidArgument, "need n >= 1 and p >= 2");
    long total = 1;
    for (int k = 0; k < n; ++k) {
        total *= p;
        if (total > 512) throw Error(ErrorKind::CapExceeded, "p^n exceeds 512");
    }
    InverseSystem sys;
    int size = base;
    sys.stages.push_back(share(make_cycle(size)));
    for (int k = 0; k < n; ++k) {
        int next = size * p;
        sys.stages.push_back(share(make_cycle(next)));
        std::map<VertexId, VertexId> vm;
        for (int i = 0; i < next; ++i) vm.emplace(i, i % size);
        sys.bonds.push_back(PLMap::simplicial(sys.stages.back(), sys.stages[sys.stages.size() - 2], vm));
        size = next;
    }
    return sys;
}

struct SampledCover {
    FiniteSpace space;
    Cover cover;
};

/// Open balls of `radius` around every vertex, on the grid of the given resolution.
inline SampledCover canonical_cover(const Graph& stage, const Rational& radius, int resolution = 2) {
    if (radius <= Rational(1, 2)) {
        throw Error(ErrorKind::RadiusTooSmall, "open balls of radius " + to_string(radius) + " do not cover unit edges");
    }
    FiniteSpace space = FiniteSpace::sampled(stage, resolution);
    std::vector<CoverMember> members;
    for (VertexId v : stage.vertices()) {
        members.push_back({"B(" + std::to_string(v) + ")", space.ball(GeometricPoint::at_vertex(v), radius)});
    }
    Cover cover(space, std::move(members));
    return {std::move(space), std::move(cover)};
}

/// Discretized circle C_points at unit resolution covered by three arcs of
/// `points/3 + 1` consecutive points, consecutive arcs sharing one point.
inline SampledCover three_arc_cover(int points) {
    if (points < 6 || points % 3 != 0) throw Error(ErrorKind::InvalidArgument, "point count must be a multiple of 3, >= 6");
    FiniteSpace space = FiniteSpace::sampled(make_cycle(points), 1);
    const int third = points / 3;
    std::vector<CoverMember> members;
    for (int a = 0; a < 3; ++a) {
        PointSet s = space.empty_set();
        for (int j = 0; j <= third; ++j) s.set(space.index_of((a * third + j) % points));
        members.push_back({"arc" + std::to_string(a), std::move(s)});
    }
    Cover cover(space, std::move(members));
    return {std::move(space), std::move(cover)};
}

struct GeneratedCover {
    std::string description;
    Cover cover;
};

/// Deterministic cover family: for each radius in {1, 3/2, 2} and each start
/// vertex, balls are placed greedily until every point and cell is covered (the
/// first uncovered item in BFS order from the start is covered by the ball that
/// covers the most new items); the balls are then grouped into members of at most two balls by
/// three patterns (consecutive pairs, interleaved, folded). Covers with more
/// than `max_members` members and duplicates are dropped.
inline std::vector<GeneratedCover> generate_covers(const FiniteSpace& space, std::size_t max_members) {
    const Graph& g = space.graph();
    std::vector<GeneratedCover> out;
    std::vector<std::vector<PointSet>> seen;
    const std::vector<Rational> radii{Rational(1), Rational(3, 2), Rational(2)};
    for (const Rational& r : radii) {
        std::vector<PointSet> ball_of(g.vertex_count());
        for (std::size_t i = 0; i < g.vertex_count(); ++i) ball_of[i] = space.ball(GeometricPoint::at_vertex(g.vertex_at(i)), r);
        for (std::size_t s = 0; s < g.vertex_count(); ++s) {
            auto dist = bfs_distances(g, s);
            std::vector<std::size_t> order(g.vertex_count());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
            // Items are sample points followed by cells, ranked by BFS distance from s.
            PointSet covered = space.empty_set();
            boost::dynamic_bitset<> covered_cells(space.cells().size());
            std::vector<boost::dynamic_bitset<>> cells_of(g.vertex_count());
            for (std::size_t v = 0; v < g.vertex_count(); ++v) cells_of[v] = space.cells_within(ball_of[v]);
            std::vector<std::size_t> centers;
            while (!covered.all() || !covered_cells.all()) {
                // First uncovered item in BFS order of its nearest vertex.
                std::optional<std::size_t> need_point, need_cell;
                for (std::size_t v : order) {
                    for (std::size_t i = 0; i < space.size() && !need_point; ++i)
                        if (!covered.test(i) && ball_of[v].test(i)) need_point = i;
                    for (std::size_t c = 0; c < space.cells().size() && !need_point && !need_cell; ++c)
                        if (!covered_cells.test(c) && cells_of[v].test(c)) need_cell = c;
                    if (need_point || need_cell) break;
                }
                std::optional<std::size_t> best;
                std::size_t best_gain = 0;
                for (std::size_t v : order) {
                    bool hits = need_point ? ball_of[v].test(*need_point) : cells_of[v].test(*need_cell);
                    if (!hits) continue;
                    std::size_t gain = (ball_of[v] - covered).count() + (cells_of[v] - covered_cells).count();
                    if (!best || gain > best_gain) {
                        best = v;
                        best_gain = gain;
                    }
                }
                if (!best) break;
                centers.push_back(*best);
                covered |= ball_of[*best];
                covered_cells |= cells_of[*best];
                if (centers.size() > 2 * max_members) break;
            }
            if (!covered.all() || !covered_cells.all()) continue;
            const std::size_t q = centers.size();
            if (q > 2 * max_members) continue;

            std::vector<std::pair<std::string, std::vector<std::vector<std::size_t>>>> patterns;
            std::vector<std::vector<std::size_t>> pairs, fold, interleave;
            for (std::size_t i = 0; i < q; i += 2) {
                std::vector<std::size_t> m{centers[i]};
                if (i + 1 < q) m.push_back(centers[i + 1]);
                pairs.push_back(m);
            }
            for (std::size_t i = 0; i < (q + 1) / 2; ++i) {
                std::vector<std::size_t> m{centers[i]};
                if (q - 1 - i != i) m.push_back(centers[q - 1 - i]);
                fold.push_back(m);
            }
            const std::size_t groups = std::min(max_members, q);
            interleave.assign(groups, {});
            for (std::size_t i = 0; i < q; ++i) interleave[i % groups].push_back(centers[i]);
            patterns.push_back({"pairs", pairs});
            patterns.push_back({"interleave", interleave});
            patterns.push_back({"fold", fold});

            for (const auto& [name, groups_of] : patterns) {
                if (groups_of.size() > max_members) continue;
                std::vector<CoverMember> members;
                std::vector<PointSet> key;
                for (const auto& grp : groups_of) {
                    if (grp.size() > 2) {
                        members.clear();
                        break;
                    }
                    PointSet u = space.empty_set();
                    std::string label;
                    for (std::size_t c : grp) {
                        u |= ball_of[c];
                        label += (label.empty() ? "" : "+") + std::to_string(g.vertex_at(c));
                    }
                    key.push_back(u);
                    members.push_back({"B_r(" + label + ")", std::move(u)});
                }
                if (members.empty()) continue;
                std::sort(key.begin(), key.end());
                if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
                seen.push_back(key);
                std::string desc = "r=" + to_string(r) + " start=" + std::to_string(g.vertex_at(s)) + " " + name;
                out.push_back({desc, Cover(space, std::move(members))});
            }
        }
    }
    return out;
}

struct CoverVerdict {
    std::string description;
    std::size_t members{0};
    SearchStatus status{SearchStatus::NotFound};
    std::size_t nodes{0};
};

struct KLikenessReport {
    std::size_t generated{0};
    std::size_t passed{0};
    std::size_t failed{0};
    std::size_t budget_exceeded{0};
    int resolution{0};
    std::vector<CoverVerdict> verdicts;

    bool all_passed() const { return generated > 0 && passed == generated; }
};

struct SweepOptions {
    int resolution = 2;
    int max_hops = 4;
    SearchLimits limits{};
};

/// Runs find_refinement for every generated cover with at most `n_members`
/// members. Verdicts are resolution-bounded: a failure means "not found in the
/// connected pool at this grid", not nonexistence.
inline KLikenessReport empirical_k_likeness(const Graph& stage, std::size_t n_members, CoverClass target,
                                            SweepOptions options = {}) {
    if (n_members != 3 && n_members != 4) throw Error(ErrorKind::InvalidArgument, "n_members must be 3 or 4");
    FiniteSpace space = FiniteSpace::sampled(stage, options.resolution);
    auto pool = connected_pool(space, options.max_hops);
    KLikenessReport report;
    report.resolution = options.resolution;
    for (const auto& gc : generate_covers(space, n_members)) {
        auto result = find_refinement(space, gc.cover, target, pool, options.limits);
        ++report.generated;
        if (result.status == SearchStatus::Found) ++report.passed;
        else if (result.status == SearchStatus::BudgetExceeded) ++report.budget_exceeded;
        else ++report.failed;
        report.verdicts.push_back({gc.description, gc.cover.size(), result.status, result.nodes});
    }
    return report;
}

}  // namespace continua
