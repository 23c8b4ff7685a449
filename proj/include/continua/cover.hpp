#pragma once

// Finite covers of sampled spaces: nerves, order, chain/circle/tree
// classification and refinement checks.

#include "continua/error.hpp"
#include "continua/graph.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <numeric>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace continua {

using PointSet = boost::dynamic_bitset<>;

/// Desk-scale stand-in for a continuum: finitely many labelled points,
/// optionally realized as the vertices of a subdivided graph. Adjacent
/// sample points bound a "cell"; a cover covers a cell when one member
/// holds both of its endpoints.
class FiniteSpace {
public:
    FiniteSpace() = default;

    static FiniteSpace discrete(std::vector<int> ids, std::vector<std::pair<int, int>> cells = {}) {
        if (ids.empty()) throw Error(ErrorKind::InvalidCover, "space must be nonempty");
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            throw Error(ErrorKind::InvalidCover, "duplicate point id in space");
        }
        FiniteSpace s;
        s.ids_ = std::move(ids);
        s.build_index();
        for (auto [a, b] : cells) s.cells_.emplace_back(s.index_of(a), s.index_of(b));
        s.finish_cells();
        return s;
    }

    /// Sample points at parameters j/resolution on every edge of `g`; point ids
    /// are the vertex ids of the subdivided graph.
    static FiniteSpace sampled(const Graph& g, int resolution) {
        if (g.vertex_count() == 0) throw Error(ErrorKind::InvalidCover, "space must be nonempty");
        FiniteSpace s;
        s.sampling_ = std::make_shared<Subdivision>(g, resolution);
        const Graph& fine = s.sampling_->graph();
        s.ids_.assign(fine.vertices().begin(), fine.vertices().end());
        s.build_index();
        s.points_.reserve(s.ids_.size());
        for (VertexId v : s.ids_) {
            GeometricPoint p = s.sampling_->to_coarse(GeometricPoint::at_vertex(v));
            s.lookup_.emplace(p, s.points_.size());
            s.points_.push_back(std::move(p));
        }
        for (const Edge& e : fine.edges()) s.cells_.emplace_back(s.index_of(e.lo), s.index_of(e.hi));
        s.finish_cells();
        return s;
    }

    std::size_t size() const { return ids_.size(); }
    int id_at(std::size_t index) const { return ids_.at(index); }
    std::span<const int> ids() const { return ids_; }

    std::size_t index_of(int id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw Error(ErrorKind::InvalidCover, "unknown point id " + std::to_string(id));
        return it->second;
    }
    bool contains_id(int id) const { return index_.contains(id); }

    bool has_realization() const { return sampling_ != nullptr; }
    const Graph& graph() const { return realization().original(); }
    const Subdivision& sampling() const { return realization(); }
    int resolution() const { return realization().parts(); }
    const GeometricPoint& point(std::size_t index) const { return points_.at(index); }
    std::span<const GeometricPoint> points() const { return points_; }

    /// Index of the sample point equal to `p`, if `p` is on the grid.
    std::optional<std::size_t> find(const GeometricPoint& p) const {
        auto it = lookup_.find(p);
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    std::span<const std::pair<std::size_t, std::size_t>> cells() const { return cells_; }
    std::span<const std::size_t> cell_neighbors(std::size_t index) const { return cell_adj_[index]; }

    PointSet empty_set() const { return PointSet(size()); }
    PointSet full_set() const { return ~PointSet(size()); }

    /// Cells whose two endpoints both lie in `set`.
    boost::dynamic_bitset<> cells_within(const PointSet& set) const {
        boost::dynamic_bitset<> out(cells_.size());
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            if (set.test(cells_[c].first) && set.test(cells_[c].second)) out.set(c);
        }
        return out;
    }

    PointSet set_of_ids(std::span<const int> ids) const {
        PointSet s = empty_set();
        for (int id : ids) s.set(index_of(id));
        return s;
    }

    std::vector<int> ids_of(const PointSet& set) const {
        std::vector<int> out;
        for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) out.push_back(ids_[i]);
        return out;
    }

    /// Sample points within (open) or at most (closed) `radius` of `center`.
    PointSet ball(const GeometricPoint& center, const Rational& radius, bool open = true) const {
        DistanceField field(graph(), center);
        PointSet s = empty_set();
        for (std::size_t i = 0; i < size(); ++i) {
            Rational d = field.to(points_[i]);
            if (open ? d < radius : d <= radius) s.set(i);
        }
        return s;
    }

private:
    const Subdivision& realization() const {
        if (!sampling_) throw Error(ErrorKind::InvalidArgument, "space has no geometric realization");
        return *sampling_;
    }

    void build_index() {
        for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
    }

    void finish_cells() {
        cell_adj_.assign(ids_.size(), {});
        for (auto& [a, b] : cells_) {
            if (a > b) std::swap(a, b);
            cell_adj_[a].push_back(b);
            cell_adj_[b].push_back(a);
        }
        for (auto& adj : cell_adj_) std::sort(adj.begin(), adj.end());
    }

    std::vector<int> ids_;
    std::unordered_map<int, std::size_t> index_;
    std::shared_ptr<const Subdivision> sampling_;
    std::vector<GeometricPoint> points_;
    std::map<GeometricPoint, std::size_t> lookup_;
    std::vector<std::pair<std::size_t, std::size_t>> cells_;
    std::vector<std::vector<std::size_t>> cell_adj_;
};

struct CoverMember {
    std::string name;
    PointSet points;
};

/// Ordered family of named, nonempty point sets whose union is the whole space.
class Cover {
public:
    Cover() = default;

    Cover(const FiniteSpace& space, std::vector<CoverMember> members) : members_(std::move(members)) {
        if (members_.empty()) throw Error(ErrorKind::InvalidCover, "cover has no members");
        PointSet seen = space.empty_set();
        for (const auto& m : members_) {
            if (m.points.size() != space.size()) {
                throw Error(ErrorKind::InvalidCover, "member '" + m.name + "' is sized for a different space");
            }
            if (m.points.none()) throw Error(ErrorKind::InvalidCover, "member '" + m.name + "' is empty");
            seen |= m.points;
        }
        if (!seen.all()) {
            auto missing = (~seen).find_first();
            throw Error(ErrorKind::InvalidCover,
                        "point " + std::to_string(space.id_at(missing)) + " is not covered");
        }
    }

    static Cover from_ids(const FiniteSpace& space, const std::vector<std::pair<std::string, std::vector<int>>>& members) {
        std::vector<CoverMember> out;
        out.reserve(members.size());
        for (const auto& [name, ids] : members) out.push_back({name, space.set_of_ids(ids)});
        return Cover(space, std::move(out));
    }

    std::size_t size() const { return members_.size(); }
    const CoverMember& member(std::size_t i) const { return members_.at(i); }
    std::span<const CoverMember> members() const { return members_; }

private:
    std::vector<CoverMember> members_;
};

/// True when every cell of the space lies inside a single member.
inline bool covers_cells(const FiniteSpace& space, const Cover& cover) {
    for (auto [a, b] : space.cells()) {
        bool ok = std::any_of(cover.members().begin(), cover.members().end(),
                              [&](const CoverMember& m) { return m.points.test(a) && m.points.test(b); });
        if (!ok) return false;
    }
    return true;
}

inline void check_cover(const FiniteSpace& space, const Cover& cover) {
    for (const auto& m : cover.members()) {
        if (m.points.size() != space.size()) {
            throw Error(ErrorKind::InvalidCover, "member '" + m.name + "' references points outside the space");
        }
    }
}

/// 1-skeleton of the nerve; vertex i is cover member i.
struct Nerve {
    Graph graph;
};

inline Nerve nerve(const FiniteSpace& space, const Cover& cover) {
    check_cover(space, cover);
    std::vector<VertexId> v(cover.size());
    std::iota(v.begin(), v.end(), 0);
    std::vector<std::pair<VertexId, VertexId>> e;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (std::size_t j = i + 1; j < cover.size(); ++j) {
            if (cover.member(i).points.intersects(cover.member(j).points)) {
                e.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
            }
        }
    }
    return Nerve{Graph(std::move(v), e)};
}

/// Largest number of members sharing a point.
inline std::size_t cover_order(const FiniteSpace& space, const Cover& cover) {
    check_cover(space, cover);
    std::size_t best = 0;
    for (std::size_t p = 0; p < space.size(); ++p) {
        std::size_t count = 0;
        for (const auto& m : cover.members()) count += m.points.test(p) ? 1 : 0;
        best = std::max(best, count);
    }
    return best;
}

enum class CoverClass { ChainLike, CircleLike, TreeLike, Unstructured };

inline std::string_view to_string(CoverClass c) {
    switch (c) {
        case CoverClass::ChainLike: return "ChainLike";
        case CoverClass::CircleLike: return "CircleLike";
        case CoverClass::TreeLike: return "TreeLike";
        case CoverClass::Unstructured: return "Unstructured";
    }
    return "Unstructured";
}

inline std::optional<CoverClass> parse_cover_class(std::string_view s) {
    if (s == "ChainLike" || s == "chain") return CoverClass::ChainLike;
    if (s == "CircleLike" || s == "circle") return CoverClass::CircleLike;
    if (s == "TreeLike" || s == "tree") return CoverClass::TreeLike;
    if (s == "Unstructured") return CoverClass::Unstructured;
    return std::nullopt;
}

struct Classification {
    CoverClass kind{CoverClass::Unstructured};
    /// Member indices in chain or cycle order; empty for tree-like and unstructured covers.
    std::vector<std::size_t> witness;
};

/// Classifies an intersection graph on vertices 0..n-1.
/// Precedence: path -> ChainLike, cycle of length >= 3 -> CircleLike, forest -> TreeLike.
inline Classification classify_nerve(const Graph& nerve_graph) {
    const std::size_t n = nerve_graph.vertex_count();
    if (n == 0) return {};
    const std::size_t m = nerve_graph.edge_count();
    const std::size_t d = nerve_graph.max_degree();
    const bool connected = nerve_graph.is_connected();

    auto walk = [&](std::size_t start) {
        std::vector<std::size_t> order{start};
        std::vector<bool> seen(n, false);
        seen[start] = true;
        std::size_t cur = start;
        while (true) {
            std::optional<std::size_t> next;
            for (std::size_t w : nerve_graph.neighbor_indices(cur)) {
                if (!seen[w]) {
                    next = w;
                    break;
                }
            }
            if (!next) break;
            seen[*next] = true;
            order.push_back(*next);
            cur = *next;
        }
        std::vector<std::size_t> ids;
        for (std::size_t i : order) ids.push_back(static_cast<std::size_t>(nerve_graph.vertex_at(i)));
        return ids;
    };

    if (connected && d <= 2 && m + 1 == n) {
        std::size_t start = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (nerve_graph.neighbor_indices(i).size() <= 1) {
                start = i;
                break;
            }
        }
        return {CoverClass::ChainLike, walk(start)};
    }
    if (connected && n >= 3 && m == n) {
        bool all_two = true;
        for (std::size_t i = 0; i < n; ++i) all_two = all_two && nerve_graph.neighbor_indices(i).size() == 2;
        if (all_two) return {CoverClass::CircleLike, walk(0)};
    }
    if (m + nerve_graph.component_count() == n) return {CoverClass::TreeLike, {}};
    return {CoverClass::Unstructured, {}};
}

inline Classification classify_cover(const FiniteSpace& space, const Cover& cover) {
    return classify_nerve(nerve(space, cover).graph);
}

struct RefinementCheck {
    bool refines{false};
    /// fine member index -> coarse member index (smallest admissible); -1 where none exists.
    std::vector<long> witness;
};

inline RefinementCheck is_refinement(const FiniteSpace& space, const Cover& fine, const Cover& coarse) {
    check_cover(space, fine);
    check_cover(space, coarse);
    RefinementCheck out{true, {}};
    for (const auto& f : fine.members()) {
        long found = -1;
        for (std::size_t j = 0; j < coarse.size(); ++j) {
            if (f.points.is_subset_of(coarse.member(j).points)) {
                found = static_cast<long>(j);
                break;
            }
        }
        out.witness.push_back(found);
        out.refines = out.refines && found >= 0;
    }
    return out;
}

}  // namespace continua
