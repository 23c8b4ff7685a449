#pragma once

// Finite simple graphs, their geometric realizations with the unit-edge
// path metric, metric balls, subdivision and the first Betti number.

#include "continua/error.hpp"
#include "continua/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace continua {

using VertexId = int;

/// Unordered edge stored with `lo < hi`.
struct Edge {
    VertexId lo{};
    VertexId hi{};

    static Edge between(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

    bool contains(VertexId v) const { return v == lo || v == hi; }
    VertexId other(VertexId v) const { return v == lo ? hi : lo; }

    auto operator<=>(const Edge&) const = default;
};

class Graph {
public:
    Graph() = default;

    /// Validates: no loops, no parallel edges, every endpoint is a listed vertex.
    Graph(std::vector<VertexId> vertices, const std::vector<std::pair<VertexId, VertexId>>& edges) {
        std::sort(vertices.begin(), vertices.end());
        if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
            throw Error(ErrorKind::InvalidGraph, "duplicate vertex id");
        }
        vertices_ = std::move(vertices);
        for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);

        edges_.reserve(edges.size());
        for (auto [a, b] : edges) {
            if (a == b) throw Error(ErrorKind::InvalidGraph, "loop at vertex " + std::to_string(a));
            if (!contains(a) || !contains(b)) {
                throw Error(ErrorKind::InvalidGraph,
                            "edge {" + std::to_string(a) + "," + std::to_string(b) + "} references an unknown vertex");
            }
            edges_.push_back(Edge::between(a, b));
        }
        std::sort(edges_.begin(), edges_.end());
        if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end()) {
            throw Error(ErrorKind::InvalidGraph,
                        "parallel edge {" + std::to_string(it->lo) + "," + std::to_string(it->hi) + "}");
        }

        adjacency_.assign(vertices_.size(), {});
        adjacency_idx_.assign(vertices_.size(), {});
        for (const Edge& e : edges_) {
            adjacency_[index_.at(e.lo)].push_back(e.hi);
            adjacency_[index_.at(e.hi)].push_back(e.lo);
        }
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            std::sort(adjacency_[i].begin(), adjacency_[i].end());
            for (VertexId w : adjacency_[i]) adjacency_idx_[i].push_back(index_.at(w));
        }
    }

    std::span<const VertexId> vertices() const { return vertices_; }
    std::span<const Edge> edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    bool contains(VertexId v) const { return index_.contains(v); }

    /// Dense index of a vertex in ascending-id order.
    std::size_t index_of(VertexId v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw Error(ErrorKind::InvalidPoint, "unknown vertex " + std::to_string(v));
        return it->second;
    }

    VertexId vertex_at(std::size_t index) const { return vertices_.at(index); }

    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[index_of(v)]; }
    std::span<const std::size_t> neighbor_indices(std::size_t index) const { return adjacency_idx_[index]; }

    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& adj : adjacency_) d = std::max(d, adj.size());
        return d;
    }

    bool has_edge(VertexId a, VertexId b) const { return edge_index(a, b).has_value(); }

    std::optional<std::size_t> edge_index(VertexId a, VertexId b) const {
        if (a == b) return std::nullopt;
        Edge e = Edge::between(a, b);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    VertexId max_vertex_id() const { return vertices_.empty() ? -1 : vertices_.back(); }

    /// Component label per dense vertex index, labels 0..k-1 in order of first appearance.
    std::vector<int> component_labels() const {
        std::vector<int> label(vertices_.size(), -1);
        int next = 0;
        for (std::size_t s = 0; s < vertices_.size(); ++s) {
            if (label[s] >= 0) continue;
            std::vector<std::size_t> stack{s};
            label[s] = next;
            while (!stack.empty()) {
                std::size_t u = stack.back();
                stack.pop_back();
                for (std::size_t w : adjacency_idx_[u]) {
                    if (label[w] < 0) {
                        label[w] = next;
                        stack.push_back(w);
                    }
                }
            }
            ++next;
        }
        return label;
    }

    std::size_t component_count() const {
        auto labels = component_labels();
        return labels.empty() ? 0 : static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()) + 1);
    }

    bool is_connected() const { return component_count() <= 1; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<VertexId, std::size_t> index_;
    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<std::vector<std::size_t>> adjacency_idx_;
};

inline std::size_t betti1(const Graph& g) {
    return g.edge_count() + g.component_count() - g.vertex_count();
}

/// Point of |G|. Vertex points are stored as `lo == hi`, `t == 0`; interior
/// points carry the edge oriented lo -> hi and `t` strictly inside (0,1).
class GeometricPoint {
public:
    GeometricPoint() = default;

    static GeometricPoint at_vertex(VertexId v) { return GeometricPoint(v, v, Rational(0)); }

    /// Point at parameter `t` measured from `from` towards `to`.
    static GeometricPoint on_edge(VertexId from, VertexId to, Rational t) {
        if (from == to) throw Error(ErrorKind::InvalidPoint, "degenerate edge");
        t.canonicalize();
        if (t < 0 || t > 1) throw Error(ErrorKind::InvalidPoint, "edge parameter " + to_string(t) + " outside [0,1]");
        if (from > to) {
            std::swap(from, to);
            t = 1 - t;
        }
        if (t == 0) return at_vertex(from);
        if (t == 1) return at_vertex(to);
        return GeometricPoint(from, to, std::move(t));
    }

    bool is_vertex() const { return lo_ == hi_; }
    VertexId vertex() const { return lo_; }
    Edge edge() const { return Edge{lo_, hi_}; }
    const Rational& t() const { return t_; }

    /// True when the point lies on the closed edge `e`.
    bool lies_on(const Edge& e) const { return is_vertex() ? e.contains(lo_) : edge() == e; }

    /// Parameter of the point along closed edge `e` (oriented lo -> hi). Requires lies_on(e).
    Rational position_on(const Edge& e) const {
        if (!is_vertex()) return t_;
        return lo_ == e.lo ? Rational(0) : Rational(1);
    }

    friend bool operator==(const GeometricPoint& a, const GeometricPoint& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.t_ == b.t_;
    }
    friend bool operator<(const GeometricPoint& a, const GeometricPoint& b) {
        if (a.lo_ != b.lo_) return a.lo_ < b.lo_;
        if (a.hi_ != b.hi_) return a.hi_ < b.hi_;
        return a.t_ < b.t_;
    }

    std::string describe() const {
        if (is_vertex()) return "v" + std::to_string(lo_);
        return "(" + std::to_string(lo_) + "," + std::to_string(hi_) + ")@" + to_string(t_);
    }

private:
    GeometricPoint(VertexId lo, VertexId hi, Rational t) : lo_(lo), hi_(hi), t_(std::move(t)) {}

    VertexId lo_{};
    VertexId hi_{};
    Rational t_{0};
};

inline void validate_point(const Graph& g, const GeometricPoint& p) {
    if (p.is_vertex()) {
        if (!g.contains(p.vertex())) throw Error(ErrorKind::InvalidPoint, "point " + p.describe() + " not on graph");
    } else if (!g.has_edge(p.edge().lo, p.edge().hi)) {
        throw Error(ErrorKind::InvalidPoint, "point " + p.describe() + " on unknown edge");
    }
}

/// Unweighted BFS distances indexed densely; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, std::size_t source_index) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<std::size_t> queue;
    dist[source_index] = 0;
    queue.push(source_index);
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop();
        for (std::size_t w : g.neighbor_indices(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
        }
    }
    return dist;
}

/// Exact distances in |G| from a fixed source point to any other point.
class DistanceField {
public:
    DistanceField(const Graph& g, GeometricPoint source) : graph_(&g), source_(std::move(source)) {
        validate_point(g, source_);
        vertex_dist_.assign(g.vertex_count(), Rational(-1));
        auto seed = [&](VertexId v, const Rational& offset) {
            auto d = bfs_distances(g, g.index_of(v));
            for (std::size_t i = 0; i < d.size(); ++i) {
                if (d[i] < 0) continue;
                Rational candidate = offset + d[i];
                if (vertex_dist_[i] < 0 || candidate < vertex_dist_[i]) vertex_dist_[i] = candidate;
            }
        };
        if (source_.is_vertex()) {
            seed(source_.vertex(), Rational(0));
        } else {
            seed(source_.edge().lo, source_.t());
            seed(source_.edge().hi, 1 - source_.t());
        }
    }

    const GeometricPoint& source() const { return source_; }

    /// Distance to a vertex given by dense index; -1 if unreachable.
    const Rational& to_vertex_index(std::size_t index) const { return vertex_dist_[index]; }

    Rational to(const GeometricPoint& p) const {
        validate_point(*graph_, p);
        Rational best(-1);
        auto consider = [&](const Rational& d) {
            if (d >= 0 && (best < 0 || d < best)) best = d;
        };
        if (p.is_vertex()) {
            consider(vertex_dist_[graph_->index_of(p.vertex())]);
        } else {
            const Rational& dlo = vertex_dist_[graph_->index_of(p.edge().lo)];
            const Rational& dhi = vertex_dist_[graph_->index_of(p.edge().hi)];
            if (dlo >= 0) consider(dlo + p.t());
            if (dhi >= 0) consider(dhi + (1 - p.t()));
            if (!source_.is_vertex() && source_.edge() == p.edge()) consider(abs(source_.t() - p.t()));
        }
        if (best < 0) {
            throw Error(ErrorKind::DisconnectedInput,
                        "no path between " + source_.describe() + " and " + p.describe());
        }
        return best;
    }

private:
    const Graph* graph_;
    GeometricPoint source_;
    std::vector<Rational> vertex_dist_;
};

inline Rational path_distance(const Graph& g, const GeometricPoint& a, const GeometricPoint& b) {
    return DistanceField(g, a).to(b);
}

struct DistanceMatrix {
    std::vector<VertexId> order;
    std::vector<std::vector<int>> entries;

    int at(const Graph& g, VertexId u, VertexId v) const { return entries[g.index_of(u)][g.index_of(v)]; }
};

inline DistanceMatrix vertex_distance_matrix(const Graph& g) {
    DistanceMatrix m;
    m.order.assign(g.vertices().begin(), g.vertices().end());
    m.entries.reserve(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        auto row = bfs_distances(g, i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] < 0) {
                throw Error(ErrorKind::DisconnectedInput, "vertices " + std::to_string(g.vertex_at(i)) + " and " +
                                                              std::to_string(g.vertex_at(j)) + " are not connected");
            }
        }
        m.entries.push_back(std::move(row));
    }
    return m;
}

struct MetricBall {
    GeometricPoint center;
    Rational radius{0};
    bool open{true};

    bool contains(const Graph& g, const GeometricPoint& p) const {
        Rational d = path_distance(g, center, p);
        return open ? d < radius : d <= radius;
    }
};

/// Result of replacing every edge by a path of `parts` edges. New vertices get
/// ids above the original maximum, allocated edge by edge in ascending edge order.
class Subdivision {
public:
    Subdivision(const Graph& original, int parts) : original_(original), parts_(parts) {
        if (parts < 1) throw Error(ErrorKind::InvalidArgument, "parts_per_edge must be >= 1");
        std::vector<VertexId> vertices(original.vertices().begin(), original.vertices().end());
        std::vector<std::pair<VertexId, VertexId>> edges;
        VertexId next = original.max_vertex_id() + 1;
        chains_.reserve(original.edge_count());
        for (std::size_t ei = 0; ei < original.edge_count(); ++ei) {
            const Edge& e = original.edges()[ei];
            std::vector<VertexId> chain{e.lo};
            for (int j = 1; j < parts; ++j) {
                vertices.push_back(next);
                chain.push_back(next);
                interior_.emplace(next, std::make_pair(ei, j));
                ++next;
            }
            chain.push_back(e.hi);
            for (int j = 0; j < parts; ++j) {
                edges.emplace_back(chain[j], chain[j + 1]);
                fine_edge_.emplace(Edge::between(chain[j], chain[j + 1]), std::make_pair(ei, j));
            }
            chains_.push_back(std::move(chain));
        }
        fine_ = Graph(std::move(vertices), edges);
    }

    const Graph& original() const { return original_; }
    const Graph& graph() const { return fine_; }
    int parts() const { return parts_; }

    /// Vertices along original edge `edge_index`, from its lo to its hi endpoint.
    const std::vector<VertexId>& chain(std::size_t edge_index) const { return chains_.at(edge_index); }

    GeometricPoint to_fine(const GeometricPoint& p) const {
        validate_point(original_, p);
        if (p.is_vertex()) return p;
        std::size_t ei = *original_.edge_index(p.edge().lo, p.edge().hi);
        Rational scaled = p.t() * parts_;
        long j = floor_to_long(scaled);
        if (j >= parts_) j = parts_ - 1;
        Rational frac = scaled - j;
        const auto& c = chains_[ei];
        return GeometricPoint::on_edge(c[j], c[j + 1], frac);
    }

    GeometricPoint to_coarse(const GeometricPoint& p) const {
        validate_point(fine_, p);
        if (p.is_vertex()) {
            auto it = interior_.find(p.vertex());
            if (it == interior_.end()) return p;
            const Edge& e = original_.edges()[it->second.first];
            return GeometricPoint::on_edge(e.lo, e.hi, Rational(it->second.second, parts_));
        }
        auto [ei, j] = fine_edge_.at(p.edge());
        const auto& c = chains_[ei];
        Rational along = c[j] == p.edge().lo ? p.t() : Rational(1 - p.t());
        const Edge& e = original_.edges()[ei];
        return GeometricPoint::on_edge(e.lo, e.hi, (Rational(j) + along) / parts_);
    }

private:
    Graph original_;
    Graph fine_;
    int parts_;
    std::vector<std::vector<VertexId>> chains_;
    std::unordered_map<VertexId, std::pair<std::size_t, int>> interior_;
    std::map<Edge, std::pair<std::size_t, int>> fine_edge_;
};

inline Subdivision subdivide(const Graph& g, int parts_per_edge) { return Subdivision(g, parts_per_edge); }

// Small named graphs used across tests, models and the CLI.

inline Graph make_path(int vertex_count) {
    std::vector<VertexId> v(static_cast<std::size_t>(vertex_count));
    std::iota(v.begin(), v.end(), 0);
    std::vector<std::pair<VertexId, VertexId>> e;
    for (int i = 0; i + 1 < vertex_count; ++i) e.emplace_back(i, i + 1);
    return Graph(std::move(v), e);
}

inline Graph make_cycle(int vertex_count) {
    if (vertex_count < 3) throw Error(ErrorKind::InvalidGraph, "a simple cycle needs at least 3 vertices");
    std::vector<VertexId> v(static_cast<std::size_t>(vertex_count));
    std::iota(v.begin(), v.end(), 0);
    std::vector<std::pair<VertexId, VertexId>> e;
    for (int i = 0; i < vertex_count; ++i) e.emplace_back(i, (i + 1) % vertex_count);
    return Graph(std::move(v), e);
}

/// Star K1,leaves with hub 0.
inline Graph make_star(int leaves) {
    std::vector<VertexId> v(static_cast<std::size_t>(leaves + 1));
    std::iota(v.begin(), v.end(), 0);
    std::vector<std::pair<VertexId, VertexId>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(std::move(v), e);
}

inline Graph make_complete(int n) {
    std::vector<VertexId> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    std::vector<std::pair<VertexId, VertexId>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(std::move(v), e);
}

/// Star whose arms are paths of `arm_length` edges; hub is vertex 0.
inline Graph make_spider(int arms, int arm_length) {
    std::vector<VertexId> v{0};
    std::vector<std::pair<VertexId, VertexId>> e;
    VertexId next = 1;
    for (int a = 0; a < arms; ++a) {
        VertexId prev = 0;
        for (int j = 0; j < arm_length; ++j) {
            v.push_back(next);
            e.emplace_back(prev, next);
            prev = next++;
        }
    }
    return Graph(std::move(v), e);
}

/// Two cycles of `loop_length` edges sharing vertex 0.
inline Graph make_figure_eight(int loop_length) {
    if (loop_length < 3) throw Error(ErrorKind::InvalidGraph, "loops need at least 3 edges");
    std::vector<VertexId> v{0};
    std::vector<std::pair<VertexId, VertexId>> e;
    VertexId next = 1;
    for (int loop = 0; loop < 2; ++loop) {
        VertexId prev = 0;
        for (int j = 0; j + 1 < loop_length; ++j) {
            v.push_back(next);
            e.emplace_back(prev, next);
            prev = next++;
        }
        e.emplace_back(prev, 0);
    }
    return Graph(std::move(v), e);
}

}  // namespace continua
