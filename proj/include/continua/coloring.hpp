#pragma once

// Distance-2 four-colorings of subcubic graphs.

#include "continua/error.hpp"
#include "continua/graph.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace continua {

struct Coloring {
    std::map<VertexId, int> colors;

    int at(VertexId v) const {
        auto it = colors.find(v);
        if (it == colors.end()) throw Error(ErrorKind::InvalidColoring, "vertex " + std::to_string(v) + " is uncolored");
        return it->second;
    }
};

struct ColoringCheck {
    bool valid{true};
    /// First offending pair (u < v) in ascending order.
    std::optional<std::pair<VertexId, VertexId>> violation;
};

/// Dense indices of vertices at distance 1 or 2 from each vertex.
inline std::vector<std::vector<std::size_t>> distance2_neighbors(const Graph& g) {
    std::vector<std::vector<std::size_t>> out(g.vertex_count());
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        auto& row = out[u];
        for (std::size_t w : g.neighbor_indices(u)) {
            row.push_back(w);
            for (std::size_t x : g.neighbor_indices(w))
                if (x != u) row.push_back(x);
        }
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return out;
}

inline ColoringCheck verify_coloring(const Graph& g, const Coloring& c) {
    auto near = distance2_neighbors(g);
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        int cu = c.at(g.vertex_at(u));
        for (std::size_t w : near[u]) {
            if (w > u && c.at(g.vertex_at(w)) == cu) return {false, std::make_pair(g.vertex_at(u), g.vertex_at(w))};
        }
    }
    return {};
}

namespace detail {

/// Completes `color` (dense, -1 = free) by backtracking over the free vertices in `order`.
inline bool backtrack_distance2(const std::vector<std::vector<std::size_t>>& near, int palette,
                                const std::vector<std::size_t>& order, std::vector<int>& color, std::size_t k = 0) {
    if (k == order.size()) return true;
    std::size_t u = order[k];
    for (int c = 0; c < palette; ++c) {
        bool clash = std::any_of(near[u].begin(), near[u].end(), [&](std::size_t w) { return color[w] == c; });
        if (clash) continue;
        color[u] = c;
        if (backtrack_distance2(near, palette, order, color, k + 1)) return true;
    }
    color[u] = -1;
    return false;
}

/// Length of some cycle shorter than `bound`, with its vertices, if any exists.
inline std::optional<std::vector<VertexId>> short_cycle(const Graph& g, std::size_t bound) {
    // BFS from every vertex; a non-tree edge closing at depths du, dw gives a closed walk of
    // length du + dw + 1 that contains a cycle no longer than it.
    std::optional<std::vector<VertexId>> best;
    for (std::size_t s = 0; s < g.vertex_count(); ++s) {
        std::vector<int> depth(g.vertex_count(), -1);
        std::vector<std::size_t> parent(g.vertex_count(), s);
        std::vector<std::size_t> queue{s};
        depth[s] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::size_t u = queue[qi];
            for (std::size_t w : g.neighbor_indices(u)) {
                if (depth[w] < 0) {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u] && u < w) {
                    std::size_t len = static_cast<std::size_t>(depth[u] + depth[w] + 1);
                    if (len >= bound || (best && best->size() <= len)) continue;
                    std::vector<std::size_t> left{u}, right{w};
                    while (left.back() != s) left.push_back(parent[left.back()]);
                    while (right.back() != s) right.push_back(parent[right.back()]);
                    // Both branches end at s; trim the common suffix except their meeting point.
                    while (left.size() > 1 && right.size() > 1 && left[left.size() - 2] == right[right.size() - 2]) {
                        left.pop_back();
                        right.pop_back();
                    }
                    std::vector<VertexId> cyc;
                    for (std::size_t x : left) cyc.push_back(g.vertex_at(x));
                    for (auto it = right.rbegin() + 1; it != right.rend(); ++it) cyc.push_back(g.vertex_at(*it));
                    if (cyc.size() < bound && (!best || cyc.size() < best->size())) best = std::move(cyc);
                }
            }
        }
    }
    return best;
}

}  // namespace detail

struct ColoringPrecondition {
    bool ok{true};
    std::string reason;
};

/// Connected, max degree 3, degree-3 vertices pairwise at distance >= 6, girth >= 6.
inline ColoringPrecondition check_coloring_precondition(const Graph& g) {
    auto join = [](const std::vector<VertexId>& vs) {
        std::string s;
        for (VertexId v : vs) s += (s.empty() ? "" : ",") + std::to_string(v);
        return s;
    };
    if (g.vertex_count() == 0) return {false, "graph is empty"};
    if (!g.is_connected()) return {false, "graph is disconnected"};
    if (g.max_degree() > 3) return {false, "max degree " + std::to_string(g.max_degree()) + " exceeds 3"};
    std::vector<std::size_t> hubs;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (g.neighbor_indices(i).size() == 3) hubs.push_back(i);
    for (std::size_t a : hubs) {
        auto d = bfs_distances(g, a);
        for (std::size_t b : hubs) {
            if (b > a && d[b] < 6) {
                return {false, "degree-3 vertices " + std::to_string(g.vertex_at(a)) + " and " +
                                   std::to_string(g.vertex_at(b)) + " are at distance " + std::to_string(d[b]) +
                                   " < 6"};
            }
        }
    }
    if (auto cyc = detail::short_cycle(g, 6)) {
        std::string msg = "cycle of length " + std::to_string(cyc->size()) + " < 6 through vertices " + join(*cyc);
        if (cyc->size() == 5) msg += " (C5 has all vertices pairwise within distance 2 and needs 5 colors)";
        return {false, msg};
    }
    return {};
}

/// Four-coloring with distinct colors on every pair at distance <= 2.
///
/// Phase one colors each closed ball around a degree-3 vertex injectively, all
/// hubs sharing color 3. Phase two walks the remaining strands greedily, smallest
/// admissible color first. If a strand gets stuck the strand vertices are
/// recolored by backtracking with phase-one colors fixed, and as a last resort
/// the whole graph is searched; only a failed whole-graph search is reported
/// as Infeasible.
inline Coloring color_distance2(const Graph& g) {
    if (auto pre = check_coloring_precondition(g); !pre.ok) throw Error(ErrorKind::PreconditionViolated, pre.reason);

    constexpr int palette = 4;
    constexpr int hub_color = 3;
    const std::size_t n = g.vertex_count();
    auto near = distance2_neighbors(g);
    std::vector<int> color(n, -1);

    for (std::size_t v = 0; v < n; ++v) {
        if (g.neighbor_indices(v).size() != 3) continue;
        color[v] = hub_color;
        int next = 0;
        for (std::size_t w : g.neighbor_indices(v)) color[w] = next++;
    }
    const std::vector<int> phase_one = color;

    // Strand order: repeatedly start at the smallest uncolored vertex that touches the colored
    // region (or the smallest uncolored vertex if none does) and walk along uncolored neighbors.
    std::vector<std::size_t> order;
    std::vector<bool> queued(n, false);
    for (std::size_t v = 0; v < n; ++v) queued[v] = color[v] >= 0;
    while (true) {
        std::optional<std::size_t> start;
        for (std::size_t v = 0; v < n && !start; ++v) {
            if (queued[v]) continue;
            for (std::size_t w : g.neighbor_indices(v))
                if (queued[w]) {
                    start = v;
                    break;
                }
        }
        if (!start) {
            for (std::size_t v = 0; v < n; ++v)
                if (!queued[v]) {
                    start = v;
                    break;
                }
        }
        if (!start) break;
        std::size_t cur = *start;
        while (true) {
            queued[cur] = true;
            order.push_back(cur);
            std::optional<std::size_t> next;
            for (std::size_t w : g.neighbor_indices(cur))
                if (!queued[w]) {
                    next = w;
                    break;
                }
            if (!next) break;
            cur = *next;
        }
    }

    bool greedy_ok = true;
    for (std::size_t v : order) {
        int chosen = -1;
        for (int c = 0; c < palette && chosen < 0; ++c) {
            bool clash = std::any_of(near[v].begin(), near[v].end(), [&](std::size_t w) { return color[w] == c; });
            if (!clash) chosen = c;
        }
        if (chosen < 0) {
            greedy_ok = false;
            break;
        }
        color[v] = chosen;
    }

    if (!greedy_ok) {
        color = phase_one;
        if (!detail::backtrack_distance2(near, palette, order, color)) {
            std::vector<std::size_t> all(n);
            std::iota(all.begin(), all.end(), 0);
            color.assign(n, -1);
            if (!detail::backtrack_distance2(near, palette, all, color)) {
                throw Error(ErrorKind::Infeasible, "no distance-2 coloring with 4 colors exists");
            }
        }
    }

    Coloring out;
    for (std::size_t v = 0; v < n; ++v) out.colors.emplace(g.vertex_at(v), color[v]);
    return out;
}

struct OracleLimits {
    std::size_t max_vertices = 64;
};

/// Exact feasibility of a distance-2 coloring with `colors` colors by complete
/// backtracking in ascending vertex order.
inline bool coloring_feasible_oracle(const Graph& g, int colors, OracleLimits limits = {}) {
    if (colors < 1) throw Error(ErrorKind::InvalidArgument, "color count must be positive");
    if (g.vertex_count() > limits.max_vertices) {
        throw Error(ErrorKind::CapExceeded, std::to_string(g.vertex_count()) + " vertices exceed the oracle cap of " +
                                                std::to_string(limits.max_vertices));
    }
    auto near = distance2_neighbors(g);
    std::vector<std::size_t> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> color(g.vertex_count(), -1);
    return detail::backtrack_distance2(near, colors, order, color);
}

}  // namespace continua
