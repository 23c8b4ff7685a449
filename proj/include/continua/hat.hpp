#pragma once

// The hat construction: given f: X -> Gamma (Gamma subcubic) and g: X -> Y,
// build a graph L in Y x Gamma_k whose projection to Y is locally injective,
// together with h: X -> L, from a distance-2 coloring of a fine subdivision of
// Gamma and a partition of unity on a star cover of Y. Every property is
// checked on sample grids.

#include "continua/coloring.hpp"
#include "continua/cover.hpp"
#include "continua/graph.hpp"
#include "continua/models.hpp"
#include "continua/pl_map.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace continua {

// ---------------------------------------------------------------------------
// Fineness

struct FineTriangulation {
    int parts{1};
    Subdivision gamma;
    /// For each vertex of the fine graph (dense order), a U member containing
    /// the sampled preimage of its open 2-ball.
    std::vector<std::size_t> inscribed_in;
};

namespace detail {

/// Vertices v of `g` with d(p, v) < 2, as dense indices.
inline std::vector<std::size_t> vertices_within_two(const Graph& g, const GeometricPoint& p) {
    std::vector<std::size_t> out;
    auto closed = [&](VertexId u) {
        std::size_t ui = g.index_of(u);
        out.push_back(ui);
        for (std::size_t w : g.neighbor_indices(ui)) out.push_back(w);
    };
    if (p.is_vertex()) {
        closed(p.vertex());
    } else {
        closed(p.edge().lo);
        closed(p.edge().hi);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::size_t girth(const Graph& g) {
    if (betti1(g) == 0) return 0;
    auto cyc = short_cycle(g, g.vertex_count() + 1);
    return cyc ? cyc->size() : 0;
}

}  // namespace detail

/// Smallest k = k0 * 2^j <= cap such that in Gamma_k the degree-3 vertices are
/// pairwise at distance >= 6, the girth is >= 6, and for every vertex v the X
/// samples with d(f(x), v) < 2 (plus their grid neighbours) lie in one U member.
inline FineTriangulation fine_triangulation(const PLMap& f, const FiniteSpace& x_space, const Cover& u_cover,
                                            int cap = 1024, std::optional<int> forced_parts = std::nullopt) {
    const Graph& gamma = f.codomain();
    if (!(x_space.graph() == f.domain())) throw Error(ErrorKind::DomainMismatch, "sample space is not on f's domain");
    if (gamma.max_degree() > 3) {
        throw Error(ErrorKind::PreconditionViolated, "target graph has max degree " + std::to_string(gamma.max_degree()) +
                                                         "; apply degree reduction first");
    }
    check_cover(x_space, u_cover);

    int k0 = 1;
    auto raise_to = [&](std::size_t have, std::size_t need) {
        if (have == 0) return;
        k0 = std::max<int>(k0, static_cast<int>((need + have - 1) / have));
    };
    std::vector<std::size_t> hubs;
    for (std::size_t i = 0; i < gamma.vertex_count(); ++i)
        if (gamma.neighbor_indices(i).size() == 3) hubs.push_back(i);
    for (std::size_t a : hubs) {
        auto d = bfs_distances(gamma, a);
        for (std::size_t b : hubs)
            if (b != a && d[b] > 0) raise_to(static_cast<std::size_t>(d[b]), 6);
    }
    raise_to(detail::girth(gamma), 6);

    std::vector<GeometricPoint> images;
    images.reserve(x_space.size());
    for (const auto& p : x_space.points()) images.push_back(f.evaluate(p));

    std::vector<int> candidates;
    if (forced_parts) {
        if (*forced_parts < k0) {
            throw Error(ErrorKind::NoFinenessAtCap, "requested parts " + std::to_string(*forced_parts) +
                                                        " is below the structural minimum " + std::to_string(k0));
        }
        candidates.push_back(*forced_parts);
    } else {
        for (long k = k0; k <= cap; k *= 2) candidates.push_back(static_cast<int>(k));
    }

    for (int k : candidates) {
        Subdivision sub(gamma, k);
        const Graph& fine = sub.graph();
        std::vector<PointSet> reach(fine.vertex_count(), x_space.empty_set());
        for (std::size_t i = 0; i < x_space.size(); ++i) {
            for (std::size_t v : detail::vertices_within_two(fine, sub.to_fine(images[i]))) {
                reach[v].set(i);
                for (std::size_t j : x_space.cell_neighbors(i)) reach[v].set(j);
            }
        }
        std::vector<std::size_t> inscribed(fine.vertex_count(), 0);
        bool ok = true;
        for (std::size_t v = 0; v < fine.vertex_count() && ok; ++v) {
            ok = false;
            for (std::size_t m = 0; m < u_cover.size(); ++m) {
                if (reach[v].is_subset_of(u_cover.member(m).points)) {
                    inscribed[v] = m;
                    ok = true;
                    break;
                }
            }
        }
        if (ok) return FineTriangulation{k, std::move(sub), std::move(inscribed)};
    }
    throw Error(ErrorKind::NoFinenessAtCap, "no subdivision up to " + std::to_string(candidates.empty() ? k0 : candidates.back()) +
                                                " parts per edge inscribes the 2-balls in the cover");
}

// ---------------------------------------------------------------------------
// Monochrome cover of Gamma_k

/// True iff `p` lies in the open unit ball around some vertex of color `color`.
inline bool in_monochrome_member(const Coloring& chi, const GeometricPoint& p, int color) {
    if (p.is_vertex()) return chi.at(p.vertex()) == color;
    return chi.at(p.edge().lo) == color || chi.at(p.edge().hi) == color;
}

struct MonochromeCover {
    FiniteSpace space;
    Cover cover;
    /// Color of each member; colors with no vertex are skipped.
    std::vector<int> colors;
};

/// U_i is the union of open unit balls around color-i vertices, sampled at
/// vertices and edge midpoints.
inline MonochromeCover monochrome_cover(const Graph& fine, const Coloring& chi) {
    if (auto check = verify_coloring(fine, chi); !check.valid) {
        throw Error(ErrorKind::InvalidColoring, "vertices " + std::to_string(check.violation->first) + " and " +
                                                    std::to_string(check.violation->second) + " share a color");
    }
    FiniteSpace space = FiniteSpace::sampled(fine, 2);
    std::vector<CoverMember> members;
    std::vector<int> colors;
    for (int c = 0; c < 4; ++c) {
        PointSet s = space.empty_set();
        for (std::size_t i = 0; i < space.size(); ++i)
            if (in_monochrome_member(chi, space.point(i), c)) s.set(i);
        if (s.none()) continue;
        members.push_back({"U" + std::to_string(c), std::move(s)});
        colors.push_back(c);
    }
    Cover cover(space, std::move(members));
    return {std::move(space), std::move(cover), std::move(colors)};
}

// ---------------------------------------------------------------------------
// Star cover of Y with its partition of unity

/// Open stars of the vertices of Y_m. The weight of the star at u is
/// max(0, 1 - d(u, y)), which equals the distance from y to the complement of
/// the star; the weights already sum to one.
class StarCover {
public:
    StarCover(const Graph& y, int parts) : sub_(y, parts) {}

    const Subdivision& subdivision() const { return sub_; }
    const Graph& graph() const { return sub_.graph(); }
    int parts() const { return sub_.parts(); }
    std::size_t size() const { return graph().vertex_count(); }
    VertexId center(std::size_t w) const { return graph().vertex_at(w); }

    /// Members containing `y` (a point of Y_m) with their weights, by member index.
    std::vector<std::pair<std::size_t, Rational>> weights_at(const GeometricPoint& y) const {
        if (y.is_vertex()) return {{graph().index_of(y.vertex()), Rational(1)}};
        std::vector<std::pair<std::size_t, Rational>> out{{graph().index_of(y.edge().lo), Rational(1 - y.t())},
                                                          {graph().index_of(y.edge().hi), y.t()}};
        std::sort(out.begin(), out.end());
        return out;
    }

    bool contains(std::size_t w, const GeometricPoint& y) const {
        VertexId c = center(w);
        return y.is_vertex() ? y.vertex() == c : y.edge().contains(c);
    }

    Rational weight(std::size_t w, const GeometricPoint& y) const {
        for (const auto& [m, lam] : weights_at(y))
            if (m == w) return lam;
        return Rational(0);
    }

    /// The stars on the grid of vertices and edge midpoints of Y_m.
    SampledCover sampled() const {
        FiniteSpace space = FiniteSpace::sampled(graph(), 2);
        std::vector<CoverMember> members;
        for (std::size_t w = 0; w < size(); ++w) {
            PointSet s = space.empty_set();
            for (std::size_t i = 0; i < space.size(); ++i)
                if (contains(w, space.point(i))) s.set(i);
            members.push_back({"W" + std::to_string(center(w)), std::move(s)});
        }
        Cover cover(space, std::move(members));
        return {std::move(space), std::move(cover)};
    }

private:
    Subdivision sub_;
};

namespace detail {

inline unsigned color_mask(const Coloring& chi, const GeometricPoint& t) {
    if (t.is_vertex()) return 1u << chi.at(t.vertex());
    return (1u << chi.at(t.edge().lo)) | (1u << chi.at(t.edge().hi));
}

}  // namespace detail

/// xi(W) is the smallest color i with g^-1(W) inside f^-1(U_i), judged on the
/// X samples; nullopt if some star admits no color.
inline std::optional<std::vector<int>> assign_xi(const StarCover& w, const Coloring& chi,
                                                 const std::vector<GeometricPoint>& y_images,
                                                 const std::vector<GeometricPoint>& gamma_images) {
    std::vector<unsigned> allowed(w.size(), 0xFu);
    for (std::size_t i = 0; i < y_images.size(); ++i) {
        unsigned mask = detail::color_mask(chi, gamma_images[i]);
        for (const auto& [m, lam] : w.weights_at(y_images[i])) allowed[m] &= mask;
    }
    std::vector<int> xi(w.size());
    for (std::size_t m = 0; m < w.size(); ++m) {
        if (allowed[m] == 0) return std::nullopt;
        xi[m] = std::countr_zero(allowed[m]);
    }
    return xi;
}

// ---------------------------------------------------------------------------
// Rectangles and the projection pi

struct Rectangle {
    std::size_t w{0};
    VertexId v{0};
    auto operator<=>(const Rectangle&) const = default;
};

/// All pairs (W, v) with chi(v) = xi(W), ordered by W then v.
inline std::vector<Rectangle> build_rectangles(const FiniteSpace& y_space, const Cover& w_cover,
                                               std::span<const int> xi, const Graph& fine, const Coloring& chi) {
    if (xi.size() != w_cover.size()) throw Error(ErrorKind::InvalidArgument, "xi must assign one color per member");
    if (std::size_t order = cover_order(y_space, w_cover); order > 2) {
        throw Error(ErrorKind::OrderViolation, "cover of Y has order " + std::to_string(order) + " > 2");
    }
    std::vector<Rectangle> out;
    for (std::size_t w = 0; w < xi.size(); ++w)
        for (VertexId v : fine.vertices())
            if (chi.at(v) == xi[w]) out.push_back({w, v});
    return out;
}

class HatMachinery {
public:
    HatMachinery(StarCover w, Graph fine, Coloring chi, std::vector<int> xi)
        : w_(std::move(w)), fine_(std::move(fine)), chi_(std::move(chi)), xi_(std::move(xi)) {
        auto sc = w_.sampled();
        rects_ = build_rectangles(sc.space, sc.cover, xi_, fine_, chi_);
        for (std::size_t r = 0; r < rects_.size(); ++r) index_.emplace(rects_[r], r);
    }

    const StarCover& stars() const { return w_; }
    const Graph& fine_graph() const { return fine_; }
    const Coloring& coloring() const { return chi_; }
    const std::vector<int>& xi() const { return xi_; }
    const std::vector<Rectangle>& rectangles() const { return rects_; }

    std::optional<std::size_t> find(std::size_t w, VertexId v) const {
        auto it = index_.find({w, v});
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Rectangles S with d(v_S, v_R) <= 1 and y in W_S; at most two.
    std::vector<std::size_t> rectangles_at(std::size_t r, const GeometricPoint& y) const {
        const Rectangle& R = rects_.at(r);
        if (!w_.contains(R.w, y)) {
            throw Error(ErrorKind::NotInW, y.describe() + " is not in the star of " + std::to_string(w_.center(R.w)));
        }
        std::vector<VertexId> near{R.v};
        for (VertexId u : fine_.neighbors(R.v)) near.push_back(u);
        std::vector<std::size_t> out;
        for (const auto& [m, lam] : w_.weights_at(y))
            for (VertexId u : near)
                if (auto s = find(m, u)) out.push_back(*s);
        std::sort(out.begin(), out.end());
        if (out.size() > 2) {
            throw Error(ErrorKind::Claim1Violation, std::to_string(out.size()) + " rectangles near rectangle " +
                                                        std::to_string(r) + " at " + y.describe());
        }
        return out;
    }

    /// The point of Gamma_k that rectangle R assigns to y.
    GeometricPoint lambda(std::size_t r, const GeometricPoint& y) const {
        const Rectangle& R = rects_.at(r);
        for (std::size_t s : rectangles_at(r, y)) {
            const Rectangle& S = rects_[s];
            if (s == r || S.v == R.v) continue;
            return GeometricPoint::on_edge(R.v, S.v, w_.weight(S.w, y));
        }
        return GeometricPoint::at_vertex(R.v);
    }

    /// Rectangles (W, v) with y in W and t in the open unit ball around v.
    std::vector<std::size_t> containing(const GeometricPoint& y, const GeometricPoint& t) const {
        std::vector<VertexId> centers;
        if (t.is_vertex()) centers.push_back(t.vertex());
        else centers = {t.edge().lo, t.edge().hi};
        std::vector<std::size_t> out;
        for (const auto& [m, lam] : w_.weights_at(y))
            for (VertexId v : centers)
                if (auto r = find(m, v)) out.push_back(*r);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// pi(y, t), evaluated through every containing rectangle; all must agree.
    GeometricPoint project(const GeometricPoint& y, const GeometricPoint& t) const {
        auto rs = containing(y, t);
        if (rs.empty()) {
            throw Error(ErrorKind::OutsideRectangles, "(" + y.describe() + ", " + t.describe() + ") is in no rectangle");
        }
        GeometricPoint first = lambda(rs[0], y);
        for (std::size_t i = 1; i < rs.size(); ++i) {
            GeometricPoint other = lambda(rs[i], y);
            if (!(other == first)) {
                throw Error(ErrorKind::ProjectionMismatch, "rectangles disagree at (" + y.describe() + ", " +
                                                               t.describe() + "): " + first.describe() + " vs " +
                                                               other.describe());
            }
        }
        return first;
    }

private:
    StarCover w_;
    Graph fine_;
    Coloring chi_;
    std::vector<int> xi_;
    std::vector<Rectangle> rects_;
    std::map<Rectangle, std::size_t> index_;
};

inline std::vector<std::size_t> rectangles_at(const HatMachinery& hm, std::size_t r, const GeometricPoint& y) {
    return hm.rectangles_at(r, y);
}
inline GeometricPoint lambda_r(const HatMachinery& hm, std::size_t r, const GeometricPoint& y) { return hm.lambda(r, y); }
inline GeometricPoint project_pi(const HatMachinery& hm, const GeometricPoint& y, const GeometricPoint& t) {
    return hm.project(y, t);
}


// ---------------------------------------------------------------------------
// Pipeline

/// A point of L: its Y coordinate (in Y_m) and its Gamma coordinate (in Gamma_k).
struct LPoint {
    GeometricPoint y;
    GeometricPoint lambda;

    friend bool operator==(const LPoint& a, const LPoint& b) { return a.y == b.y && a.lambda == b.lambda; }
    friend bool operator<(const LPoint& a, const LPoint& b) {
        if (!(a.y == b.y)) return a.y < b.y;
        return a.lambda < b.lambda;
    }
};

struct HatOptions {
    int subdivision_cap = 1024;
    std::optional<int> gamma_parts;
    std::optional<int> w_parts;
};

struct HatAudit {
    std::size_t y_samples{0};
    std::size_t pair_samples{0};
    std::size_t max_claim_set{0};
    bool weights_ok{true};
    bool pi_agrees{true};
    bool pi_preimage_ok{true};
    bool u_map{true};
    bool u_map_rectangles{true};
    bool lambda_continuous{true};
    bool pr_y_locally_injective{true};
    bool pr_y_surjective{true};
    std::size_t min_multiplicity{0};
    std::size_t max_multiplicity{0};
    Rational max_step{0};
    Rational max_jump{0};
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

struct HatResult {
    int gamma_parts{1};
    int w_parts{1};
    HatMachinery machinery;
    /// h at every X sample, in sample order.
    std::vector<LPoint> samples;
    /// Graph on the distinct sampled points of L (vertex i is l_vertices[i]),
    /// with an edge wherever adjacent X samples have distinct images.
    Graph l_graph;
    std::vector<LPoint> l_vertices;
    Classification l_class;
    HatAudit audit;
};

namespace detail {

inline bool in_open_unit_ball(const GeometricPoint& p, VertexId v) {
    return p.is_vertex() ? p.vertex() == v : p.edge().contains(v);
}

inline void audit_fail(HatAudit& audit, bool& flag, const std::string& what) {
    if (flag) audit.failures.push_back(what);
    flag = false;
}

}  // namespace detail

/// Builds h: X -> L for f: X -> Gamma and g: X -> Y and audits every property
/// on the sample grids. Structural violations (Claim1Violation, pi mismatch,
/// missing xi) throw; sampled property failures are recorded in the audit.
inline HatResult build_hat_map(const PLMap& f, const PLMap& g, const FiniteSpace& x_space, const Cover& u_cover,
                               HatOptions options = {}) {
    if (!(f.domain() == g.domain())) throw Error(ErrorKind::DomainMismatch, "f and g have different domains");
    FineTriangulation fine = fine_triangulation(f, x_space, u_cover, options.subdivision_cap, options.gamma_parts);
    const Subdivision& gsub = fine.gamma;
    const Graph& gk = gsub.graph();
    Coloring chi = color_distance2(gk);

    const std::size_t n = x_space.size();
    std::vector<GeometricPoint> t_img, y_orig;
    for (const auto& p : x_space.points()) {
        t_img.push_back(gsub.to_fine(f.evaluate(p)));
        y_orig.push_back(g.evaluate(p));
    }

    std::vector<int> candidates;
    if (options.w_parts) candidates.push_back(*options.w_parts);
    else
        for (int m = 1; m <= options.subdivision_cap; m *= 2) candidates.push_back(m);
    std::optional<StarCover> stars;
    std::vector<int> xi;
    std::vector<GeometricPoint> y_img;
    for (int m : candidates) {
        StarCover sc(g.codomain(), m);
        std::vector<GeometricPoint> yi;
        for (const auto& y : y_orig) yi.push_back(sc.subdivision().to_fine(y));
        if (auto a = assign_xi(sc, chi, yi, t_img)) {
            stars.emplace(std::move(sc));
            xi = std::move(*a);
            y_img = std::move(yi);
            break;
        }
    }
    if (!stars) {
        throw Error(ErrorKind::NoXiAssignment, "no star cover of Y up to " + std::to_string(candidates.back()) +
                                                   " parts admits a color assignment");
    }
    const int w_parts = stars->parts();
    HatMachinery hm(std::move(*stars), gk, chi, xi);
    const StarCover& w = hm.stars();
    const Graph& ym = w.graph();

    HatAudit audit;

    // Partition of unity and the two-rectangle claim on Y samples.
    std::set<GeometricPoint> ys(y_img.begin(), y_img.end());
    {
        FiniteSpace grid = FiniteSpace::sampled(ym, 2);
        ys.insert(grid.points().begin(), grid.points().end());
    }
    audit.y_samples = ys.size();
    std::map<std::size_t, std::vector<std::size_t>> rects_of_w;
    for (std::size_t r = 0; r < hm.rectangles().size(); ++r) rects_of_w[hm.rectangles()[r].w].push_back(r);
    for (const auto& y : ys) {
        Rational total(0);
        for (const auto& [m, lam] : w.weights_at(y)) {
            total += lam;
            if (lam <= 0 || !w.contains(m, y)) detail::audit_fail(audit, audit.weights_ok, "weight outside star at " + y.describe());
            for (std::size_t r : rects_of_w[m]) {
                auto near = hm.rectangles_at(r, y);
                audit.max_claim_set = std::max(audit.max_claim_set, near.size());
                if (near.size() == 2) {
                    const Rectangle& a = hm.rectangles()[near[0]];
                    const Rectangle& b = hm.rectangles()[near[1]];
                    if (a.w != b.w && w.weight(a.w, y) + w.weight(b.w, y) != 1) {
                        detail::audit_fail(audit, audit.weights_ok, "paired weights do not sum to 1 at " + y.describe());
                    }
                }
            }
        }
        if (total != 1) detail::audit_fail(audit, audit.weights_ok, "weights sum to " + to_string(total) + " at " + y.describe());
    }

    // pi agreement and pi^-1(W x B(v)) inside W x B_2(v) on sampled pairs.
    auto check_pair = [&](const GeometricPoint& y, const GeometricPoint& t) {
        ++audit.pair_samples;
        GeometricPoint lam;
        try {
            lam = hm.project(y, t);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ProjectionMismatch) throw;
            detail::audit_fail(audit, audit.pi_agrees, e.what());
            return;
        }
        auto reach = detail::vertices_within_two(gk, t);
        for (const auto& [m, weight] : w.weights_at(y)) {
            for (std::size_t r : rects_of_w[m]) {
                VertexId v = hm.rectangles()[r].v;
                if (!detail::in_open_unit_ball(lam, v)) continue;
                if (!std::binary_search(reach.begin(), reach.end(), gk.index_of(v))) {
                    detail::audit_fail(audit, audit.pi_preimage_ok,
                                       "pi(" + y.describe() + ", " + t.describe() + ") is near " + std::to_string(v) +
                                           " but t is not within 2 of it");
                }
            }
        }
    };
    for (const auto& y : ys) {
        std::set<GeometricPoint> ts;
        for (const auto& [m, weight] : w.weights_at(y)) {
            for (std::size_t r : rects_of_w[m]) {
                VertexId v = hm.rectangles()[r].v;
                ts.insert(GeometricPoint::at_vertex(v));
                for (VertexId u : gk.neighbors(v)) ts.insert(GeometricPoint::on_edge(v, u, Rational(1, 2)));
            }
        }
        for (const auto& t : ts) check_pair(y, t);
    }
    for (std::size_t i = 0; i < n; ++i) check_pair(y_img[i], t_img[i]);

    // h on the X samples.
    std::vector<LPoint> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = {y_img[i], hm.project(y_img[i], t_img[i])};

    // U-map: fibers of h and preimages of rectangles lie in single members.
    auto inside_member = [&](const PointSet& s) {
        return std::any_of(u_cover.members().begin(), u_cover.members().end(),
                           [&](const CoverMember& m) { return s.is_subset_of(m.points); });
    };
    {
        std::map<LPoint, PointSet> fibers;
        std::map<std::size_t, PointSet> by_rect;
        for (std::size_t i = 0; i < n; ++i) {
            auto [it, fresh] = fibers.try_emplace(samples[i], x_space.empty_set());
            it->second.set(i);
            for (std::size_t r : hm.containing(samples[i].y, samples[i].lambda)) {
                auto [jt, fresh2] = by_rect.try_emplace(r, x_space.empty_set());
                jt->second.set(i);
            }
        }
        for (const auto& [pt, s] : fibers)
            if (!inside_member(s)) detail::audit_fail(audit, audit.u_map, "fiber over " + pt.lambda.describe() + " leaves every member");
        for (const auto& [r, s] : by_rect)
            if (!inside_member(s)) detail::audit_fail(audit, audit.u_map_rectangles, "preimage of rectangle " + std::to_string(r) + " leaves every member");

        // pr_Y restricted to the sampled L points of each rectangle is injective.
        std::map<std::size_t, std::map<GeometricPoint, GeometricPoint>> seen;
        for (const auto& [pt, s] : fibers) {
            for (std::size_t r : hm.containing(pt.y, pt.lambda)) {
                auto [it, fresh] = seen[r].emplace(pt.y, pt.lambda);
                if (!fresh && !(it->second == pt.lambda)) {
                    detail::audit_fail(audit, audit.pr_y_locally_injective,
                                       "two points of L over " + pt.y.describe() + " in rectangle " + std::to_string(r));
                }
            }
        }
    }

    // Continuity of h: image jumps across grid cells stay within twice the input step.
    for (auto [a, b] : x_space.cells()) {
        Rational step = max(path_distance(gk, t_img[a], t_img[b]), path_distance(ym, y_img[a], y_img[b]));
        audit.max_step = max(audit.max_step, step);
        audit.max_jump = max(audit.max_jump, path_distance(gk, samples[a].lambda, samples[b].lambda));
    }
    if (audit.max_jump > 2 * audit.max_step) {
        detail::audit_fail(audit, audit.lambda_continuous,
                           "h jumps by " + to_string(audit.max_jump) + " across a cell of step " + to_string(audit.max_step));
    }

    // Multiplicity of pr_Y over the Y grid, using exact fibers of g.
    {
        FiniteSpace y_grid = FiniteSpace::sampled(g.codomain(), x_space.resolution());
        detail::FiberIndex index(g, x_space);
        bool first = true;
        for (const auto& y : y_grid.points()) {
            std::set<GeometricPoint> over;
            GeometricPoint yf = w.subdivision().to_fine(y);
            for (const auto& p : index.fiber(y).points) {
                over.insert(hm.project(yf, gsub.to_fine(f.evaluate(p))));
            }
            if (over.empty()) detail::audit_fail(audit, audit.pr_y_surjective, "no point of L over " + y.describe());
            audit.min_multiplicity = first ? over.size() : std::min(audit.min_multiplicity, over.size());
            audit.max_multiplicity = std::max(audit.max_multiplicity, over.size());
            first = false;
        }
    }

    // The graph of L and its canonical-cover class.
    std::vector<LPoint> l_vertices(samples.begin(), samples.end());
    std::sort(l_vertices.begin(), l_vertices.end());
    l_vertices.erase(std::unique(l_vertices.begin(), l_vertices.end()), l_vertices.end());
    auto id_of = [&](const LPoint& p) {
        return static_cast<VertexId>(std::lower_bound(l_vertices.begin(), l_vertices.end(), p) - l_vertices.begin());
    };
    std::set<std::pair<VertexId, VertexId>> l_edges;
    for (auto [a, b] : x_space.cells()) {
        VertexId ia = id_of(samples[a]), ib = id_of(samples[b]);
        if (ia != ib) l_edges.insert({std::min(ia, ib), std::max(ia, ib)});
    }
    std::vector<VertexId> l_ids(l_vertices.size());
    std::iota(l_ids.begin(), l_ids.end(), 0);
    Graph l_graph(std::move(l_ids), {l_edges.begin(), l_edges.end()});
    auto canon = canonical_cover(l_graph, Rational(1));
    Classification l_class = classify_cover(canon.space, canon.cover);

    return HatResult{fine.parts, w_parts, std::move(hm), std::move(samples), std::move(l_graph),
                     std::move(l_vertices), std::move(l_class), std::move(audit)};
}

}  // namespace continua
