#pragma once

// Pool-based search for structured refinements of a cover.
//
// The search branches on the first item (point or cell, in BFS order of the
// sample graph) not yet covered, trying every admissible pool member that
// contains it. Partial families are pruned as soon as their nerve can no
// longer extend to the target class. Families reached this way are exactly
// the irredundant ones (each member was needed when added); for chain and
// tree targets on connected spaces every refinement contains an irredundant
// one of the same class, so an exhausted search is a complete answer for the
// given pool. For circle targets the search is complete only over
// irredundant cycles.

#include "continua/cover.hpp"

#include <algorithm>
#include <numeric>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace continua {

struct SearchLimits {
    std::size_t max_nodes = 2'000'000;
};

enum class SearchStatus { Found, NotFound, BudgetExceeded };

inline std::string_view to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "Found";
        case SearchStatus::NotFound: return "NotFoundAtResolution";
        case SearchStatus::BudgetExceeded: return "BudgetExceeded";
    }
    return "NotFoundAtResolution";
}

struct RefinementSearch {
    SearchStatus status{SearchStatus::NotFound};
    std::optional<Cover> refinement;
    /// Indices into the caller's pool, in the order they were chosen.
    std::vector<std::size_t> pool_indices;
    Classification classification;
    std::size_t nodes{0};
    std::size_t admissible{0};
};

namespace detail {

class RefinementSearcher {
public:
    RefinementSearcher(const FiniteSpace& space, const Cover& cover, CoverClass target,
                       std::span<const PointSet> pool, SearchLimits limits)
        : space_(space), target_(target), limits_(limits) {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const PointSet& s = pool[i];
            if (s.size() != space.size()) throw Error(ErrorKind::InvalidCover, "pool member sized for another space");
            if (s.none()) continue;
            bool inside = std::any_of(cover.members().begin(), cover.members().end(),
                                      [&](const CoverMember& m) { return s.is_subset_of(m.points); });
            if (!inside) continue;
            bool duplicate = std::any_of(elements_.begin(), elements_.end(),
                                         [&](const Element& e) { return e.points == s; });
            if (duplicate) continue;
            elements_.push_back({i, s, space.cells_within(s)});
        }
        const std::size_t n = elements_.size();
        adjacency_.assign(n, boost::dynamic_bitset<>(n));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                if (elements_[a].points.intersects(elements_[b].points)) {
                    adjacency_[a].set(b);
                    adjacency_[b].set(a);
                }
            }
        }
        build_items();
    }

    RefinementSearch run() {
        RefinementSearch out;
        out.admissible = elements_.size();
        covered_points_ = space_.empty_set();
        covered_cells_ = boost::dynamic_bitset<>(space_.cells().size());
        bool found = descend(0);
        out.nodes = nodes_;
        if (found) {
            out.status = SearchStatus::Found;
            std::vector<CoverMember> members;
            for (std::size_t k = 0; k < solution_.size(); ++k) {
                const Element& e = elements_[solution_[k]];
                out.pool_indices.push_back(e.pool_index);
                members.push_back({"pool" + std::to_string(e.pool_index), e.points});
            }
            out.refinement = Cover(space_, std::move(members));
            out.classification = classify_cover(space_, *out.refinement);
        } else {
            out.status = budget_hit_ ? SearchStatus::BudgetExceeded : SearchStatus::NotFound;
        }
        return out;
    }

private:
    struct Element {
        std::size_t pool_index;
        PointSet points;
        boost::dynamic_bitset<> cells;
    };

    struct Item {
        bool is_cell;
        std::size_t index;
    };

    /// Items in BFS order of the sample graph. A point is preceded by the cell
    /// joining it to its BFS parent, so every branch extends the covered region.
    void build_items() {
        std::vector<std::size_t> order;
        std::vector<std::optional<std::size_t>> parent_cell(space_.size());
        std::vector<bool> seen(space_.size(), false);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell_id;
        for (std::size_t c = 0; c < space_.cells().size(); ++c) {
            auto [a, b] = space_.cells()[c];
            cell_id[{std::min(a, b), std::max(a, b)}] = c;
        }
        for (std::size_t s = 0; s < space_.size(); ++s) {
            if (seen[s]) continue;
            std::queue<std::size_t> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty()) {
                std::size_t u = q.front();
                q.pop();
                order.push_back(u);
                for (std::size_t w : space_.cell_neighbors(u)) {
                    if (!seen[w]) {
                        seen[w] = true;
                        parent_cell[w] = cell_id.at({std::min(u, w), std::max(u, w)});
                        q.push(w);
                    }
                }
            }
        }
        std::vector<std::size_t> rank(space_.size());
        for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
        std::vector<std::vector<std::size_t>> cells_at(space_.size());
        for (std::size_t c = 0; c < space_.cells().size(); ++c) {
            auto [a, b] = space_.cells()[c];
            std::size_t later = rank[a] > rank[b] ? a : b;
            if (parent_cell[later] != c) cells_at[later].push_back(c);
        }
        for (std::size_t u : order) {
            if (parent_cell[u]) items_.push_back({true, *parent_cell[u]});
            items_.push_back({false, u});
            for (std::size_t c : cells_at[u]) items_.push_back({true, c});
        }
        // Larger pieces first: they reach a solution in fewer steps.
        std::vector<std::size_t> by_size(elements_.size());
        std::iota(by_size.begin(), by_size.end(), 0);
        std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
            return elements_[a].points.count() > elements_[b].points.count();
        });
        holders_.resize(items_.size());
        for (std::size_t it = 0; it < items_.size(); ++it) {
            for (std::size_t e : by_size) {
                const Element& el = elements_[e];
                bool has = items_[it].is_cell ? el.cells.test(items_[it].index) : el.points.test(items_[it].index);
                if (has) holders_[it].push_back(e);
            }
        }
    }

    bool item_covered(const Item& it) const {
        return it.is_cell ? covered_cells_.test(it.index) : covered_points_.test(it.index);
    }

    /// Checks whether adding `e` keeps the partial nerve extendable to the target.
    bool admissible_addition(std::size_t e, bool& closes_cycle) const {
        closes_cycle = false;
        std::vector<std::size_t> nbrs;
        for (std::size_t k = 0; k < chosen_.size(); ++k) {
            if (adjacency_[e].test(chosen_[k])) nbrs.push_back(k);
        }
        if (cycle_closed_) return false;
        bool distinct_components = true;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (component_[nbrs[i]] == component_[nbrs[j]]) distinct_components = false;
        switch (target_) {
            case CoverClass::TreeLike: return distinct_components;
            case CoverClass::ChainLike:
                if (nbrs.size() > 2 || !distinct_components) return false;
                return std::all_of(nbrs.begin(), nbrs.end(), [&](std::size_t k) { return degree_[k] <= 1; });
            case CoverClass::CircleLike: {
                if (nbrs.size() > 2) return false;
                if (!std::all_of(nbrs.begin(), nbrs.end(), [&](std::size_t k) { return degree_[k] <= 1; })) return false;
                if (distinct_components) return true;
                // Closing a cycle is allowed only if it absorbs every chosen member.
                int c = component_[nbrs[0]];
                bool single = std::all_of(component_.begin(), component_.end(), [&](int x) { return x == c; });
                if (!single || chosen_.size() + 1 < 3) return false;
                closes_cycle = true;
                return true;
            }
            case CoverClass::Unstructured: return false;
        }
        return false;
    }

    /// For chain and circle targets the future of a partial family depends only
    /// on what it covers, the points of its interior (degree-2) members, which
    /// no later member may touch, and its open ends with their components.
    std::string state_key() const {
        PointSet blocked = space_.empty_set();
        std::vector<std::tuple<std::size_t, int, int>> ends;
        std::vector<int> labels;
        for (std::size_t k = 0; k < chosen_.size(); ++k) {
            if (degree_[k] >= 2) blocked |= elements_[chosen_[k]].points;
            else ends.emplace_back(chosen_[k], degree_[k], component_[k]);
            labels.push_back(component_[k]);
        }
        std::sort(ends.begin(), ends.end());
        std::map<int, int> canon;
        for (auto& [e, d, c] : ends) c = canon.try_emplace(c, static_cast<int>(canon.size())).first->second;
        std::sort(labels.begin(), labels.end());
        std::size_t components = static_cast<std::size_t>(std::unique(labels.begin(), labels.end()) - labels.begin());
        std::string key;
        boost::to_string(covered_points_, key);
        std::string part;
        boost::to_string(covered_cells_, part);
        key += '|' + part + '|';
        boost::to_string(blocked, part);
        key += part + '|' + std::to_string(components) + '|' + std::to_string(std::min<std::size_t>(chosen_.size(), 3)) +
               (cycle_closed_ ? "c" : "o");
        for (const auto& [e, d, c] : ends) key += '|' + std::to_string(e) + ',' + std::to_string(d) + ',' + std::to_string(c);
        return key;
    }

    bool descend(std::size_t first_item) {
        std::size_t it = first_item;
        while (it < items_.size() && item_covered(items_[it])) ++it;
        if (it == items_.size()) return accept();
        const bool memo = target_ != CoverClass::TreeLike;
        std::string key;
        if (memo) {
            key = state_key();
            if (failed_.contains(key)) return false;
        }
        for (std::size_t e : holders_[it]) {
            if (budget_hit_) return false;
            if (std::find(chosen_.begin(), chosen_.end(), e) != chosen_.end()) continue;
            bool closes = false;
            if (!admissible_addition(e, closes)) continue;
            if (++nodes_ > limits_.max_nodes) {
                budget_hit_ = true;
                return false;
            }
            auto saved_points = covered_points_;
            auto saved_cells = covered_cells_;
            auto saved_components = component_;
            auto saved_degree = degree_;
            bool saved_closed = cycle_closed_;

            int label = static_cast<int>(chosen_.size());
            std::vector<int> merge;
            for (std::size_t k = 0; k < chosen_.size(); ++k) {
                if (adjacency_[e].test(chosen_[k])) {
                    ++degree_[k];
                    merge.push_back(component_[k]);
                }
            }
            for (int& c : component_)
                if (std::find(merge.begin(), merge.end(), c) != merge.end()) c = label;
            chosen_.push_back(e);
            component_.push_back(label);
            degree_.push_back(static_cast<int>(merge.size()));
            if (closes) cycle_closed_ = true;
            covered_points_ |= elements_[e].points;
            covered_cells_ |= elements_[e].cells;

            if (descend(it + 1)) return true;

            chosen_.pop_back();
            covered_points_ = std::move(saved_points);
            covered_cells_ = std::move(saved_cells);
            component_ = std::move(saved_components);
            degree_ = std::move(saved_degree);
            cycle_closed_ = saved_closed;
        }
        if (memo && !budget_hit_) failed_.insert(std::move(key));
        return false;
    }

    bool accept() {
        std::vector<VertexId> v(chosen_.size());
        std::iota(v.begin(), v.end(), 0);
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::size_t a = 0; a < chosen_.size(); ++a)
            for (std::size_t b = a + 1; b < chosen_.size(); ++b)
                if (adjacency_[chosen_[a]].test(chosen_[b])) edges.emplace_back(a, b);
        CoverClass kind = classify_nerve(Graph(std::move(v), edges)).kind;
        // A chain is a forest, so it satisfies the tree target as well.
        bool ok = kind == target_ || (target_ == CoverClass::TreeLike && kind == CoverClass::ChainLike);
        if (!ok) return false;
        solution_ = chosen_;
        return true;
    }

    const FiniteSpace& space_;
    CoverClass target_;
    SearchLimits limits_;
    std::vector<Element> elements_;
    std::vector<boost::dynamic_bitset<>> adjacency_;
    std::vector<Item> items_;
    std::vector<std::vector<std::size_t>> holders_;

    std::vector<std::size_t> chosen_;
    std::vector<int> component_;
    std::vector<int> degree_;
    bool cycle_closed_{false};
    PointSet covered_points_;
    boost::dynamic_bitset<> covered_cells_;
    std::vector<std::size_t> solution_;
    std::size_t nodes_{0};
    bool budget_hit_{false};
    std::unordered_set<std::string> failed_;
};

}  // namespace detail

/// Searches `pool` for a family that covers every point and cell of `space`,
/// refines `cover` and classifies as `target`. Failure is relative to the pool.
inline RefinementSearch find_refinement(const FiniteSpace& space, const Cover& cover, CoverClass target,
                                        std::span<const PointSet> pool, SearchLimits limits = {}) {
    check_cover(space, cover);
    if (target == CoverClass::Unstructured) {
        throw Error(ErrorKind::InvalidArgument, "refinement target must be chain, circle or tree");
    }
    if (limits.max_nodes == 0) throw Error(ErrorKind::InvalidArgument, "search budget must be positive");
    return detail::RefinementSearcher(space, cover, target, pool, limits).run();
}

/// Sets of points within `hops` cell-steps of a point, or of either endpoint of
/// a cell, for hops = 0..max_hops. On sampled paths and cycles these are all
/// arcs of at most 2*max_hops+2 points. Duplicates are dropped.
inline std::vector<PointSet> connected_pool(const FiniteSpace& space, int max_hops) {
    std::vector<PointSet> out;
    auto push_unique = [&](PointSet s) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    };
    auto grow = [&](std::vector<std::size_t> seeds) {
        PointSet s = space.empty_set();
        for (std::size_t x : seeds) s.set(x);
        std::vector<std::size_t> frontier = seeds;
        push_unique(s);
        for (int h = 1; h <= max_hops; ++h) {
            std::vector<std::size_t> next;
            for (std::size_t u : frontier)
                for (std::size_t w : space.cell_neighbors(u))
                    if (!s.test(w)) {
                        s.set(w);
                        next.push_back(w);
                    }
            if (next.empty()) break;
            push_unique(s);
            frontier = std::move(next);
        }
    };
    for (std::size_t p = 0; p < space.size(); ++p) grow({p});
    for (auto [a, b] : space.cells()) grow({a, b});
    return out;
}

/// Open metric balls of the given radii around every sample point.
inline std::vector<PointSet> ball_pool(const FiniteSpace& space, std::span<const Rational> radii) {
    std::vector<PointSet> out;
    for (std::size_t p = 0; p < space.size(); ++p) {
        for (const Rational& r : radii) {
            PointSet s = space.ball(space.point(p), r);
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
        }
    }
    return out;
}

/// Dyadic radii 2^-k for k = 0..levels-1 (in units of the original edges).
inline std::vector<Rational> dyadic_radii(int levels) {
    std::vector<Rational> r;
    for (int k = 0; k < levels; ++k) r.emplace_back(1, 1u << k);
    return r;
}

}  // namespace continua
