#pragma once

// Degree reduction: every vertex of degree d >= 4 is split into a path of
// d - 2 vertices of degree <= 3, and a collapse map folds each such path back
// onto its original vertex.

#include "continua/cover.hpp"
#include "continua/graph.hpp"
#include "continua/pl_map.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

namespace continua {

struct VertexSplit {
    VertexId original{};
    /// Replacement path; the first vertex keeps the original id.
    std::vector<VertexId> path;
    /// Neighbors attached to each path vertex, in path order.
    std::vector<std::vector<VertexId>> attached;
};

struct SurgeryResult {
    Graph graph;
    PLMap collapse;
    std::vector<VertexSplit> split_log;
    /// Edges joining consecutive replacement vertices.
    std::set<Edge> links;
};

/// Splits high-degree vertices in ascending id order. Incident edges are
/// sorted by the opposite endpoint and dealt two to each path end and one to
/// each interior path vertex.
inline SurgeryResult reduce_degree(const Graph& g) {
    if (!g.is_connected()) throw Error(ErrorKind::DisconnectedInput, "surgery expects a connected graph");
    std::map<VertexId, std::set<VertexId>> adj;
    for (VertexId v : g.vertices()) adj[v];
    for (const Edge& e : g.edges()) {
        adj[e.lo].insert(e.hi);
        adj[e.hi].insert(e.lo);
    }
    std::map<VertexId, VertexId> origin;
    for (VertexId v : g.vertices()) origin.emplace(v, v);
    VertexId next = g.max_vertex_id() + 1;
    std::vector<VertexSplit> log;
    std::set<Edge> links;

    for (VertexId v : g.vertices()) {
        const std::size_t d = adj[v].size();
        if (d < 4) continue;
        std::vector<VertexId> nbrs(adj[v].begin(), adj[v].end());
        VertexSplit split{v, {v}, {}};
        for (std::size_t i = 1; i + 2 < d; ++i) {
            split.path.push_back(next);
            origin.emplace(next, v);
            adj[next];
            ++next;
        }
        const std::size_t len = split.path.size();  // d - 2
        split.attached.assign(len, {});
        split.attached[0] = {nbrs[0], nbrs[1]};
        for (std::size_t i = 1; i + 1 < len; ++i) split.attached[i] = {nbrs[i + 1]};
        split.attached[len - 1] = {nbrs[d - 2], nbrs[d - 1]};

        for (VertexId w : nbrs) {
            adj[v].erase(w);
            adj[w].erase(v);
        }
        for (std::size_t i = 0; i < len; ++i) {
            for (VertexId w : split.attached[i]) {
                adj[split.path[i]].insert(w);
                adj[w].insert(split.path[i]);
            }
            if (i + 1 < len) {
                adj[split.path[i]].insert(split.path[i + 1]);
                adj[split.path[i + 1]].insert(split.path[i]);
                links.insert(Edge::between(split.path[i], split.path[i + 1]));
            }
        }
        log.push_back(std::move(split));
    }

    std::vector<VertexId> vertices;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& [v, nb] : adj) {
        vertices.push_back(v);
        for (VertexId w : nb)
            if (v < w) edges.emplace_back(v, w);
    }
    auto fine = share(Graph(std::move(vertices), edges));
    auto coarse = share(g);
    PLMap collapse = PLMap::simplicial(fine, coarse, origin);
    return SurgeryResult{*fine, std::move(collapse), std::move(log), std::move(links)};
}

/// Sample points of the surgery graph that the collapse sends to one original
/// vertex, for every split vertex; trivial fibers are omitted.
inline std::vector<PointSet> collapse_fibers(const SurgeryResult& result, const FiniteSpace& space) {
    if (!(space.graph() == result.graph)) throw Error(ErrorKind::InvalidCover, "space is not sampled on the surgery graph");
    std::vector<PointSet> out;
    for (const auto& split : result.split_log) {
        PointSet s = space.empty_set();
        for (std::size_t i = 0; i < space.size(); ++i) {
            GeometricPoint y = result.collapse.evaluate(space.point(i));
            if (y == GeometricPoint::at_vertex(split.original)) s.set(i);
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// True iff every nontrivial collapse fiber lies inside one cover member.
inline bool collapse_is_u_map(const SurgeryResult& result, const FiniteSpace& space, const Cover& cover) {
    check_cover(space, cover);
    for (const PointSet& fiber : collapse_fibers(result, space)) {
        bool inside = std::any_of(cover.members().begin(), cover.members().end(),
                                  [&](const CoverMember& m) { return fiber.is_subset_of(m.points); });
        if (!inside) return false;
    }
    return true;
}

/// Distances between sample points when link edges have length `link_length`
/// and every other edge has length 1.
inline std::vector<Rational> rescaled_distances(const SurgeryResult& result, const FiniteSpace& space,
                                                std::size_t source, const Rational& link_length) {
    const Graph& fine = space.sampling().graph();
    const Rational step(1, space.resolution());
    auto weight = [&](std::size_t a, std::size_t b) {
        // Both endpoints lie on the same original edge of the surgery graph.
        const GeometricPoint& pa = space.point(a);
        const GeometricPoint& pb = space.point(b);
        Edge e = !pa.is_vertex() ? pa.edge() : !pb.is_vertex() ? pb.edge() : Edge::between(pa.vertex(), pb.vertex());
        return result.links.contains(e) ? Rational(step * link_length) : step;
    };
    std::vector<Rational> dist(space.size(), Rational(-1));
    using Entry = std::pair<Rational, std::size_t>;
    auto cmp = [](const Entry& x, const Entry& y) { return x.first > y.first; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);
    dist[source] = 0;
    queue.push({Rational(0), source});
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (std::size_t w : fine.neighbor_indices(fine.index_of(space.id_at(u)))) {
            std::size_t wi = space.index_of(fine.vertex_at(w));
            Rational nd = d + weight(u, wi);
            if (dist[wi] < 0 || nd < dist[wi]) {
                dist[wi] = nd;
                queue.push({nd, wi});
            }
        }
    }
    return dist;
}

/// Open balls of `radius` around every sample point, measured with link edges
/// rescaled to `link_length`.
inline Cover rescaled_ball_cover(const SurgeryResult& result, const FiniteSpace& space, const Rational& radius,
                                 const Rational& link_length) {
    std::vector<CoverMember> members;
    for (std::size_t p = 0; p < space.size(); ++p) {
        auto d = rescaled_distances(result, space, p, link_length);
        PointSet s = space.empty_set();
        for (std::size_t q = 0; q < space.size(); ++q)
            if (d[q] >= 0 && d[q] < radius) s.set(q);
        members.push_back({"ball" + std::to_string(space.id_at(p)), std::move(s)});
    }
    return Cover(space, std::move(members));
}

}  // namespace continua
