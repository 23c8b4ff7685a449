#pragma once

// Piecewise-linear maps between geometric graph realizations.

#include "continua/cover.hpp"
#include "continua/error.hpp"
#include "continua/graph.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace continua {

struct Breakpoint {
    Rational t;
    GeometricPoint image;
};

/// One linear piece of a track: parameters [t0, t1] map linearly onto the
/// closed codomain edge `edge` from position pos0 to pos1. A piece constant at
/// a vertex has no edge.
struct Segment {
    Rational t0, t1;
    std::optional<Edge> edge;
    Rational pos0, pos1;
    GeometricPoint p0, p1;

    bool is_constant() const { return p0 == p1; }

    GeometricPoint at_fraction(const Rational& s) const {
        if (!edge) return p0;
        return GeometricPoint::on_edge(edge->lo, edge->hi, pos0 + s * (pos1 - pos0));
    }
};

/// Closed codomain edge shared by two points, nullopt when both are the same vertex.
inline std::optional<Edge> common_edge(const Graph& codomain, const GeometricPoint& a, const GeometricPoint& b) {
    auto fail = [&]() -> std::optional<Edge> {
        throw Error(ErrorKind::InvalidMap, "consecutive breakpoint images " + a.describe() + " and " + b.describe() +
                                               " do not share a codomain edge");
    };
    if (!a.is_vertex()) {
        if (!b.lies_on(a.edge())) return fail();
        return a.edge();
    }
    if (!b.is_vertex()) {
        if (!a.lies_on(b.edge())) return fail();
        return b.edge();
    }
    if (a == b) return std::nullopt;
    if (!codomain.has_edge(a.vertex(), b.vertex())) return fail();
    return Edge::between(a.vertex(), b.vertex());
}

class PLMap {
public:
    using GraphPtr = std::shared_ptr<const Graph>;

    PLMap(GraphPtr domain, GraphPtr codomain, std::map<VertexId, GeometricPoint> vertex_images,
          std::vector<std::vector<Breakpoint>> tracks)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), vertex_images_(std::move(vertex_images)),
          tracks_(std::move(tracks)) {
        validate();
    }

    /// Maps each vertex to a vertex; every edge goes linearly onto an edge or collapses to a vertex.
    static PLMap simplicial(GraphPtr domain, GraphPtr codomain, const std::map<VertexId, VertexId>& vertex_map) {
        std::map<VertexId, GeometricPoint> images;
        for (VertexId v : domain->vertices()) {
            auto it = vertex_map.find(v);
            if (it == vertex_map.end()) throw Error(ErrorKind::InvalidMap, "vertex " + std::to_string(v) + " has no image");
            images.emplace(v, GeometricPoint::at_vertex(it->second));
        }
        std::vector<std::vector<Breakpoint>> tracks;
        for (const Edge& e : domain->edges()) {
            tracks.push_back({{Rational(0), images.at(e.lo)}, {Rational(1), images.at(e.hi)}});
        }
        return PLMap(std::move(domain), std::move(codomain), std::move(images), std::move(tracks));
    }

    static PLMap identity(GraphPtr g) {
        std::map<VertexId, VertexId> m;
        for (VertexId v : g->vertices()) m.emplace(v, v);
        return simplicial(g, g, m);
    }

    static PLMap constant(GraphPtr domain, GraphPtr codomain, const GeometricPoint& value) {
        validate_point(*codomain, value);
        std::map<VertexId, GeometricPoint> images;
        for (VertexId v : domain->vertices()) images.emplace(v, value);
        std::vector<std::vector<Breakpoint>> tracks;
        for (std::size_t i = 0; i < domain->edge_count(); ++i) tracks.push_back({{Rational(0), value}, {Rational(1), value}});
        return PLMap(std::move(domain), std::move(codomain), std::move(images), std::move(tracks));
    }

    const Graph& domain() const { return *domain_; }
    const Graph& codomain() const { return *codomain_; }
    const GraphPtr& domain_ptr() const { return domain_; }
    const GraphPtr& codomain_ptr() const { return codomain_; }
    const std::map<VertexId, GeometricPoint>& vertex_images() const { return vertex_images_; }
    std::span<const Breakpoint> track(std::size_t edge_index) const { return tracks_.at(edge_index); }
    std::span<const Segment> segments(std::size_t edge_index) const { return segments_.at(edge_index); }

    GeometricPoint evaluate(const GeometricPoint& p) const {
        try {
            validate_point(*domain_, p);
        } catch (const Error& e) {
            throw Error(ErrorKind::InvalidPoint, std::string("point not on domain: ") + e.what());
        }
        if (p.is_vertex()) return vertex_images_.at(p.vertex());
        const auto& segs = segments_[*domain_->edge_index(p.edge().lo, p.edge().hi)];
        auto it = std::lower_bound(segs.begin(), segs.end(), p.t(),
                                   [](const Segment& s, const Rational& t) { return s.t1 < t; });
        const Segment& s = *it;
        return s.at_fraction((p.t() - s.t0) / (s.t1 - s.t0));
    }

    /// Same map with additional breakpoints at the given parameters per domain edge.
    PLMap refined(const std::vector<std::vector<Rational>>& extra) const {
        std::vector<std::vector<Breakpoint>> tracks;
        for (std::size_t ei = 0; ei < tracks_.size(); ++ei) {
            std::set<Rational> ts;
            for (const auto& b : tracks_[ei]) ts.insert(b.t);
            if (ei < extra.size())
                for (const auto& t : extra[ei])
                    if (t > 0 && t < 1) ts.insert(t);
            const Edge& e = domain_->edges()[ei];
            std::vector<Breakpoint> track;
            for (const auto& t : ts) track.push_back({t, evaluate(GeometricPoint::on_edge(e.lo, e.hi, t))});
            tracks.push_back(std::move(track));
        }
        return PLMap(domain_, codomain_, vertex_images_, std::move(tracks));
    }

    /// Breakpoint parameters per domain edge.
    std::vector<std::vector<Rational>> breakpoint_grid() const {
        std::vector<std::vector<Rational>> out;
        for (const auto& tr : tracks_) {
            std::vector<Rational> ts;
            for (const auto& b : tr) ts.push_back(b.t);
            out.push_back(std::move(ts));
        }
        return out;
    }

private:
    void validate() {
        if (!domain_ || !codomain_) throw Error(ErrorKind::InvalidMap, "missing domain or codomain");
        if (tracks_.size() != domain_->edge_count()) {
            throw Error(ErrorKind::InvalidMap, "expected one track per domain edge");
        }
        for (VertexId v : domain_->vertices()) {
            auto it = vertex_images_.find(v);
            if (it == vertex_images_.end()) throw Error(ErrorKind::InvalidMap, "vertex " + std::to_string(v) + " has no image");
            validate_point(*codomain_, it->second);
        }
        if (vertex_images_.size() != domain_->vertex_count()) {
            throw Error(ErrorKind::InvalidMap, "vertex images reference unknown domain vertices");
        }
        for (auto& tr : tracks_)
            for (auto& b : tr) b.t.canonicalize();
        segments_.clear();
        for (std::size_t ei = 0; ei < tracks_.size(); ++ei) {
            const Edge& e = domain_->edges()[ei];
            const auto& tr = tracks_[ei];
            std::string where = "track of edge {" + std::to_string(e.lo) + "," + std::to_string(e.hi) + "}";
            if (tr.size() < 2 || tr.front().t != 0 || tr.back().t != 1) {
                throw Error(ErrorKind::InvalidMap, where + " must run from t=0 to t=1");
            }
            if (!(tr.front().image == vertex_images_.at(e.lo)) || !(tr.back().image == vertex_images_.at(e.hi))) {
                throw Error(ErrorKind::InvalidMap, where + " disagrees with vertex images");
            }
            std::vector<Segment> segs;
            for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
                if (!(tr[k].t < tr[k + 1].t)) throw Error(ErrorKind::InvalidMap, where + " parameters not increasing");
                validate_point(*codomain_, tr[k + 1].image);
                Segment s{tr[k].t, tr[k + 1].t, common_edge(*codomain_, tr[k].image, tr[k + 1].image),
                          Rational(0), Rational(0), tr[k].image, tr[k + 1].image};
                if (s.edge) {
                    s.pos0 = s.p0.position_on(*s.edge);
                    s.pos1 = s.p1.position_on(*s.edge);
                }
                segs.push_back(std::move(s));
            }
            segments_.push_back(std::move(segs));
        }
    }

    GraphPtr domain_;
    GraphPtr codomain_;
    std::map<VertexId, GeometricPoint> vertex_images_;
    std::vector<std::vector<Breakpoint>> tracks_;
    std::vector<std::vector<Segment>> segments_;
};

inline PLMap::GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

inline PLMap compose(const PLMap& outer, const PLMap& inner) {
    if (!(inner.codomain() == outer.domain())) {
        throw Error(ErrorKind::DomainMismatch, "inner codomain differs from outer domain");
    }
    const Graph& mid = outer.domain();
    std::map<VertexId, GeometricPoint> images;
    for (const auto& [v, p] : inner.vertex_images()) images.emplace(v, outer.evaluate(p));
    std::vector<std::vector<Breakpoint>> tracks;
    for (std::size_t ei = 0; ei < inner.domain().edge_count(); ++ei) {
        const Edge& e = inner.domain().edges()[ei];
        std::set<Rational> ts;
        for (const Segment& s : inner.segments(ei)) {
            ts.insert(s.t0);
            ts.insert(s.t1);
            if (!s.edge || s.pos0 == s.pos1) continue;
            const Rational lo = min(s.pos0, s.pos1), hi = max(s.pos0, s.pos1);
            for (const Breakpoint& b : outer.track(*mid.edge_index(s.edge->lo, s.edge->hi))) {
                if (b.t > lo && b.t < hi) ts.insert(s.t0 + (b.t - s.pos0) / (s.pos1 - s.pos0) * (s.t1 - s.t0));
            }
        }
        std::vector<Breakpoint> track;
        for (const auto& t : ts) {
            track.push_back({t, outer.evaluate(inner.evaluate(GeometricPoint::on_edge(e.lo, e.hi, t)))});
        }
        tracks.push_back(std::move(track));
    }
    return PLMap(inner.domain_ptr(), outer.codomain_ptr(), std::move(images), std::move(tracks));
}

/// Map x -> (first(x), second(x)) into the product; both coordinates share one breakpoint grid.
struct ProductMap {
    PLMap first;
    PLMap second;

    std::pair<GeometricPoint, GeometricPoint> evaluate(const GeometricPoint& p) const {
        return {first.evaluate(p), second.evaluate(p)};
    }
};

inline ProductMap diagonal_product(const PLMap& f, const PLMap& g) {
    if (!(f.domain() == g.domain())) throw Error(ErrorKind::DomainMismatch, "diagonal product needs equal domains");
    auto grid = f.breakpoint_grid();
    auto other = g.breakpoint_grid();
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i].insert(grid[i].end(), other[i].begin(), other[i].end());
    return ProductMap{f.refined(grid), g.refined(grid)};
}

/// Coarse -> fine homeomorphism of a subdivision, as a PL map.
inline PLMap subdivision_map(const Subdivision& sub) {
    auto coarse = share(sub.original());
    auto fine = share(sub.graph());
    std::map<VertexId, GeometricPoint> images;
    for (VertexId v : coarse->vertices()) images.emplace(v, GeometricPoint::at_vertex(v));
    std::vector<std::vector<Breakpoint>> tracks;
    for (std::size_t ei = 0; ei < coarse->edge_count(); ++ei) {
        std::vector<Breakpoint> tr;
        const auto& c = sub.chain(ei);
        for (int j = 0; j <= sub.parts(); ++j) tr.push_back({Rational(j, sub.parts()), GeometricPoint::at_vertex(c[j])});
        tracks.push_back(std::move(tr));
    }
    return PLMap(coarse, fine, std::move(images), std::move(tracks));
}

/// Fine -> coarse homeomorphism of a subdivision.
inline PLMap coarsening_map(const Subdivision& sub) {
    auto coarse = share(sub.original());
    auto fine = share(sub.graph());
    std::map<VertexId, GeometricPoint> images;
    for (VertexId v : fine->vertices()) images.emplace(v, sub.to_coarse(GeometricPoint::at_vertex(v)));
    std::vector<std::vector<Breakpoint>> tracks;
    for (const Edge& e : fine->edges()) tracks.push_back({{Rational(0), images.at(e.lo)}, {Rational(1), images.at(e.hi)}});
    return PLMap(fine, coarse, std::move(images), std::move(tracks));
}

/// `m` with its codomain replaced by the subdivided codomain.
inline PLMap push_to_subdivided_codomain(const PLMap& m, const Subdivision& sub) { return compose(subdivision_map(sub), m); }

/// `m` precomposed with the fine -> coarse homeomorphism of a domain subdivision.
inline PLMap pull_to_subdivided_domain(const PLMap& m, const Subdivision& sub) { return compose(m, coarsening_map(sub)); }

// ---------------------------------------------------------------------------
// Fibers and U-maps

struct FiberReport {
    GeometricPoint target;
    std::vector<GeometricPoint> preimage;
    Rational diameter{0};
};

struct UMapReport {
    bool is_u_map{true};
    FiberReport worst;
    std::optional<FiberReport> first_failure;
    std::size_t fibers_checked{0};
    int resolution{0};
};

namespace detail {

/// Exact preimage of `y` on the sample grid of `space`: the listed points map
/// onto `y`, and `support` holds the sample points whose membership decides
/// whether the fiber lies in a cover member (points strictly inside a cell
/// need both cell endpoints).
struct GridFiber {
    std::vector<GeometricPoint> points;
    PointSet support;
};

class FiberIndex {
public:
    FiberIndex(const PLMap& m, const FiniteSpace& space) : map_(m), space_(space) {
        if (!(space.graph() == m.domain())) throw Error(ErrorKind::DomainMismatch, "sample space is not on the map's domain");
        const int res = space.resolution();
        for (std::size_t ei = 0; ei < m.domain().edge_count(); ++ei) {
            for (std::size_t k = 0; k < m.segments(ei).size(); ++k) {
                const Segment& s = m.segments(ei)[k];
                if (!is_integer(s.t1 * res)) {
                    throw Error(ErrorKind::ResolutionTooCoarse,
                                "breakpoint t=" + to_string(s.t1) + " is off the 1/" + std::to_string(res) + " grid");
                }
                if (s.edge) by_edge_[*s.edge].push_back({ei, k});
                else at_vertex_[s.p0.vertex()].push_back({ei, k});
            }
        }
    }

    GridFiber fiber(const GeometricPoint& y) const {
        GridFiber out{{}, space_.empty_set()};
        std::set<GeometricPoint> seen;
        auto add_param = [&](std::size_t ei, const Rational& t) {
            const Edge& e = map_.domain().edges()[ei];
            GeometricPoint p = GeometricPoint::on_edge(e.lo, e.hi, t);
            if (seen.insert(p).second) out.points.push_back(p);
            const int res = space_.resolution();
            Rational scaled = t * res;
            long j = floor_to_long(scaled);
            auto grid_index = [&](long jj) { return *space_.find(GeometricPoint::on_edge(e.lo, e.hi, Rational(jj, res))); };
            out.support.set(grid_index(j));
            if (!is_integer(scaled)) out.support.set(grid_index(j + 1));
        };
        auto add_interval = [&](std::size_t ei, const Rational& t0, const Rational& t1) {
            const int res = space_.resolution();
            for (long j = floor_to_long(t0 * res); j <= floor_to_long(t1 * res); ++j) {
                Rational t(j, res);
                if (t >= t0 && t <= t1) add_param(ei, t);
            }
        };
        auto scan = [&](const std::vector<std::pair<std::size_t, std::size_t>>& refs) {
            for (auto [ei, k] : refs) {
                const Segment& s = map_.segments(ei)[k];
                if (!s.edge) {
                    if (s.p0 == y) add_interval(ei, s.t0, s.t1);
                    continue;
                }
                if (!y.lies_on(*s.edge)) continue;
                Rational pos = y.position_on(*s.edge);
                if (s.pos0 == s.pos1) {
                    if (pos == s.pos0) add_interval(ei, s.t0, s.t1);
                } else if (pos >= min(s.pos0, s.pos1) && pos <= max(s.pos0, s.pos1)) {
                    add_param(ei, s.t0 + (pos - s.pos0) / (s.pos1 - s.pos0) * (s.t1 - s.t0));
                }
            }
        };
        if (y.is_vertex()) {
            if (auto it = at_vertex_.find(y.vertex()); it != at_vertex_.end()) scan(it->second);
            for (VertexId w : map_.codomain().neighbors(y.vertex())) {
                if (auto it = by_edge_.find(Edge::between(y.vertex(), w)); it != by_edge_.end()) scan(it->second);
            }
        } else if (auto it = by_edge_.find(y.edge()); it != by_edge_.end()) {
            scan(it->second);
        }
        std::sort(out.points.begin(), out.points.end());
        return out;
    }

    /// Targets whose fibers determine every fiber: images of sample points and one
    /// point strictly between consecutive critical positions on each codomain edge.
    std::vector<GeometricPoint> critical_targets() const {
        std::set<GeometricPoint> targets;
        std::map<Edge, std::set<Rational>> positions;
        for (const Edge& e : map_.codomain().edges()) positions[e] = {Rational(0), Rational(1)};
        for (const auto& p : space_.points()) {
            GeometricPoint y = map_.evaluate(p);
            targets.insert(y);
            if (!y.is_vertex()) positions[y.edge()].insert(y.t());
        }
        for (const auto& [e, ps] : positions) {
            for (auto it = ps.begin(); std::next(it) != ps.end(); ++it) {
                targets.insert(GeometricPoint::on_edge(e.lo, e.hi, (*it + *std::next(it)) / 2));
            }
        }
        return {targets.begin(), targets.end()};
    }

private:
    const PLMap& map_;
    const FiniteSpace& space_;
    std::map<Edge, std::vector<std::pair<std::size_t, std::size_t>>> by_edge_;
    std::map<VertexId, std::vector<std::pair<std::size_t, std::size_t>>> at_vertex_;
};


}  // namespace detail

inline Rational fiber_diameter(const Graph& domain, const std::vector<GeometricPoint>& points) {
    Rational best(0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        DistanceField field(domain, points[i]);
        for (std::size_t j = i + 1; j < points.size(); ++j) best = max(best, field.to(points[j]));
    }
    return best;
}

/// Exact fiber of `y` restricted to the grid described by `space`.
inline FiberReport fiber(const PLMap& m, const FiniteSpace& space, const GeometricPoint& y) {
    detail::FiberIndex index(m, space);
    auto f = index.fiber(y);
    return {y, f.points, fiber_diameter(m.domain(), f.points)};
}

/// Checks that every fiber lies inside a single member of `cover`, which is a
/// cover of the sample grid `space` of the domain. A point strictly inside a
/// grid cell belongs to a member when both cell endpoints do.
inline UMapReport is_u_map(const PLMap& m, const FiniteSpace& space, const Cover& cover) {
    check_cover(space, cover);
    detail::FiberIndex index(m, space);
    UMapReport report;
    report.resolution = space.resolution();
    bool have_worst = false;
    for (const GeometricPoint& y : index.critical_targets()) {
        auto f = index.fiber(y);
        if (f.points.empty()) continue;
        ++report.fibers_checked;
        bool inside = std::any_of(cover.members().begin(), cover.members().end(),
                                  [&](const CoverMember& mem) { return f.support.is_subset_of(mem.points); });
        Rational diam = fiber_diameter(m.domain(), f.points);
        if (!have_worst || diam > report.worst.diameter) {
            report.worst = {y, f.points, diam};
            have_worst = true;
        }
        if (!inside && !report.first_failure) {
            report.is_u_map = false;
            report.first_failure = FiberReport{y, f.points, diam};
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Local injectivity

struct LocalInjectivityReport {
    bool locally_injective{true};
    std::string witness;
};

namespace detail {

/// Initial direction of a non-constant segment leaving `from` toward `to`.
struct Germ {
    Edge edge;
    int sign;
    bool operator==(const Germ&) const = default;
};

inline Germ germ(const Segment& s, bool forward) {
    const Rational& a = forward ? s.pos0 : s.pos1;
    const Rational& b = forward ? s.pos1 : s.pos0;
    return {*s.edge, b > a ? 1 : -1};
}

}  // namespace detail

/// Every segment must be non-constant, and at every domain vertex and interior
/// breakpoint the outgoing germs must point in pairwise distinct directions.
inline LocalInjectivityReport is_locally_injective(const PLMap& m) {
    const Graph& dom = m.domain();
    for (std::size_t ei = 0; ei < dom.edge_count(); ++ei) {
        const Edge& e = dom.edges()[ei];
        auto segs = m.segments(ei);
        for (const Segment& s : segs) {
            if (s.is_constant()) {
                return {false, "flat segment on edge {" + std::to_string(e.lo) + "," + std::to_string(e.hi) +
                                   "} over t in [" + to_string(s.t0) + "," + to_string(s.t1) + "]"};
            }
        }
        for (std::size_t k = 1; k < segs.size(); ++k) {
            if (detail::germ(segs[k - 1], false) == detail::germ(segs[k], true)) {
                return {false, "fold at t=" + to_string(segs[k].t0) + " on edge {" + std::to_string(e.lo) + "," +
                                   std::to_string(e.hi) + "}"};
            }
        }
    }
    for (VertexId v : dom.vertices()) {
        std::vector<detail::Germ> germs;
        for (VertexId w : dom.neighbors(v)) {
            std::size_t ei = *dom.edge_index(v, w);
            auto segs = m.segments(ei);
            germs.push_back(v == dom.edges()[ei].lo ? detail::germ(segs.front(), true) : detail::germ(segs.back(), false));
        }
        for (std::size_t i = 0; i < germs.size(); ++i)
            for (std::size_t j = i + 1; j < germs.size(); ++j)
                if (germs[i] == germs[j]) return {false, "vertex " + std::to_string(v) + " has coinciding germs"};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Winding numbers

/// Vertices of a cycle graph in canonical order: smallest id first, then its smaller neighbor.
inline std::vector<VertexId> cycle_order(const Graph& g) {
    if (g.vertex_count() < 3 || g.edge_count() != g.vertex_count() || !g.is_connected() || g.max_degree() != 2) {
        throw Error(ErrorKind::NotACycle, "graph is not a single cycle");
    }
    std::vector<VertexId> order{g.vertices().front()};
    VertexId prev = order.front();
    VertexId cur = g.neighbors(prev).front();
    while (cur != order.front()) {
        order.push_back(cur);
        auto nb = g.neighbors(cur);
        VertexId next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
    }
    return order;
}

/// Winding number of `m` along the oriented domain cycle `loop` (consecutive
/// vertices adjacent, last adjacent to first) onto the cycle codomain.
inline long winding_number(const PLMap& m, std::span<const VertexId> loop) {
    auto order = cycle_order(m.codomain());
    const long n = static_cast<long>(order.size());
    std::map<VertexId, long> position;
    for (long i = 0; i < n; ++i) position.emplace(order[static_cast<std::size_t>(i)], i);

    const Graph& dom = m.domain();
    if (loop.size() < 3) throw Error(ErrorKind::NotACycle, "domain loop needs at least 3 vertices");
    std::set<VertexId> distinct(loop.begin(), loop.end());
    if (distinct.size() != loop.size()) throw Error(ErrorKind::NotACycle, "domain loop repeats a vertex");

    Rational total(0);
    for (std::size_t i = 0; i < loop.size(); ++i) {
        VertexId a = loop[i], b = loop[(i + 1) % loop.size()];
        auto ei = dom.edge_index(a, b);
        if (!ei) throw Error(ErrorKind::NotACycle, "loop step " + std::to_string(a) + "->" + std::to_string(b) + " is not an edge");
        Rational along(0);
        for (const Segment& s : m.segments(*ei)) {
            if (!s.edge) continue;
            // +1 when the codomain edge lo -> hi follows the canonical cycle orientation.
            long plo = position.at(s.edge->lo), phi = position.at(s.edge->hi);
            int orient = ((plo + 1) % n == phi) ? 1 : -1;
            along += (s.pos1 - s.pos0) * orient;
        }
        total += (a < b) ? along : Rational(-along);
    }
    Rational w = total / n;
    if (!is_integer(w)) throw Error(ErrorKind::InvalidMap, "loop image does not close up");
    return w.get_num().get_si();
}

/// Winding number when the domain itself is a cycle graph, traversed in canonical order.
inline long winding_number(const PLMap& m) {
    auto loop = cycle_order(m.domain());
    return winding_number(m, loop);
}

}  // namespace continua
