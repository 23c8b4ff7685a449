#pragma once

// JSON encodings of graphs, points, sample spaces, covers and PL maps.
//
//   graph:  {"vertices":[0,1,2], "edges":[[0,1],[1,2]]}
//   point:  {"vertex":3} or {"edge":[a,b], "t":"1/3"}   (t measured from a)
//   space:  {"graph":G, "resolution":k} or {"points":[ids], "cells":[[i,j]]}
//   cover:  {"members":[{"name":"U0", "points":[id or point, ...]}]}
//   map:    {"vertex_images":[{"vertex":v, "image":P}],
//            "tracks":[{"edge":[a,b], "breakpoints":[{"t":"1/2", "image":P}]}]}
// Rationals are strings "p/q" or integers. Edges missing from "tracks" map
// linearly between their vertex images.

#include "continua/cover.hpp"
#include "continua/graph.hpp"
#include "continua/pl_map.hpp"
#include "continua/rational.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace continua::json_io {

using json = nlohmann::json;

inline Error input_error(ErrorKind kind, const std::string& what) { return Error(kind, what); }

inline Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw input_error(ErrorKind::InvalidArgument, e.what());
        }
    }
    throw input_error(ErrorKind::InvalidArgument, "expected a rational, got " + j.dump());
}

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const Graph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.lo, e.hi});
    return {{"vertices", std::vector<VertexId>(g.vertices().begin(), g.vertices().end())}, {"edges", edges}};
}

inline Graph graph_from(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
        throw input_error(ErrorKind::InvalidGraph, "graph needs \"vertices\" and \"edges\"");
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw input_error(ErrorKind::InvalidGraph, "edge must be a pair: " + e.dump());
        edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
    return Graph(j.at("vertices").get<std::vector<VertexId>>(), edges);
}

inline json to_json(const GeometricPoint& p) {
    if (p.is_vertex()) return {{"vertex", p.vertex()}};
    return {{"edge", {p.edge().lo, p.edge().hi}}, {"t", to_string(p.t())}};
}

inline GeometricPoint point_from(const json& j) {
    if (j.is_object() && j.contains("vertex")) return GeometricPoint::at_vertex(j.at("vertex").get<VertexId>());
    if (j.is_object() && j.contains("edge") && j.contains("t")) {
        const auto& e = j.at("edge");
        if (!e.is_array() || e.size() != 2) throw input_error(ErrorKind::InvalidPoint, "point edge must be a pair");
        return GeometricPoint::on_edge(e[0].get<VertexId>(), e[1].get<VertexId>(), rational_from(j.at("t")));
    }
    throw input_error(ErrorKind::InvalidPoint, "cannot read point " + j.dump());
}

inline json to_json(const FiniteSpace& space) {
    if (space.has_realization()) return {{"graph", to_json(space.graph())}, {"resolution", space.resolution()}};
    json cells = json::array();
    for (auto [a, b] : space.cells()) cells.push_back({space.id_at(a), space.id_at(b)});
    return {{"points", std::vector<int>(space.ids().begin(), space.ids().end())}, {"cells", cells}};
}

inline FiniteSpace space_from(const json& j) {
    if (j.is_object() && j.contains("graph")) {
        int res = j.value("resolution", 1);
        return FiniteSpace::sampled(graph_from(j.at("graph")), res);
    }
    if (j.is_object() && j.contains("points")) {
        std::vector<std::pair<int, int>> cells;
        if (j.contains("cells"))
            for (const auto& c : j.at("cells")) cells.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
        return FiniteSpace::discrete(j.at("points").get<std::vector<int>>(), std::move(cells));
    }
    throw input_error(ErrorKind::InvalidArgument, "space needs \"graph\" or \"points\"");
}

inline json to_json(const FiniteSpace& space, const Cover& cover) {
    json members = json::array();
    for (const auto& m : cover.members()) members.push_back({{"name", m.name}, {"points", space.ids_of(m.points)}});
    return {{"members", members}};
}

inline Cover cover_from(const json& j, const FiniteSpace& space) {
    if (!j.is_object() || !j.contains("members")) throw input_error(ErrorKind::InvalidCover, "cover needs \"members\"");
    std::vector<CoverMember> members;
    std::size_t k = 0;
    for (const auto& m : j.at("members")) {
        PointSet s = space.empty_set();
        for (const auto& p : m.at("points")) {
            if (p.is_number_integer()) {
                int id = p.get<int>();
                if (!space.contains_id(id)) throw input_error(ErrorKind::InvalidCover, "unknown point id " + std::to_string(id));
                s.set(space.index_of(id));
            } else {
                if (!space.has_realization()) throw input_error(ErrorKind::InvalidCover, "geometric points need a sampled space");
                auto idx = space.find(point_from(p));
                if (!idx) throw input_error(ErrorKind::InvalidCover, "point " + p.dump() + " is not a sample point");
                s.set(*idx);
            }
        }
        members.push_back({m.value("name", "U" + std::to_string(k)), std::move(s)});
        ++k;
    }
    return Cover(space, std::move(members));
}

inline json to_json(const PLMap& m) {
    json images = json::array();
    for (const auto& [v, p] : m.vertex_images()) images.push_back({{"vertex", v}, {"image", to_json(p)}});
    json tracks = json::array();
    for (std::size_t ei = 0; ei < m.domain().edge_count(); ++ei) {
        const Edge& e = m.domain().edges()[ei];
        json bps = json::array();
        for (const auto& b : m.track(ei)) bps.push_back({{"t", to_string(b.t)}, {"image", to_json(b.image)}});
        tracks.push_back({{"edge", {e.lo, e.hi}}, {"breakpoints", bps}});
    }
    return {{"vertex_images", images}, {"tracks", tracks}};
}

inline PLMap map_from(const json& j, PLMap::GraphPtr domain, PLMap::GraphPtr codomain) {
    if (!j.is_object() || !j.contains("vertex_images")) throw input_error(ErrorKind::InvalidMap, "map needs \"vertex_images\"");
    std::map<VertexId, GeometricPoint> images;
    for (const auto& entry : j.at("vertex_images")) {
        images.insert_or_assign(entry.at("vertex").get<VertexId>(), point_from(entry.at("image")));
    }
    for (VertexId v : domain->vertices()) {
        if (!images.contains(v)) throw input_error(ErrorKind::InvalidMap, "vertex " + std::to_string(v) + " has no image");
    }
    std::vector<std::vector<Breakpoint>> tracks(domain->edge_count());
    if (j.contains("tracks")) {
        for (const auto& tr : j.at("tracks")) {
            VertexId a = tr.at("edge").at(0).get<VertexId>();
            VertexId b = tr.at("edge").at(1).get<VertexId>();
            auto ei = domain->edge_index(a, b);
            if (!ei) throw input_error(ErrorKind::InvalidMap, "track for missing edge " + tr.at("edge").dump());
            std::vector<Breakpoint> bps;
            for (const auto& bp : tr.at("breakpoints")) {
                Rational t = rational_from(bp.at("t"));
                if (a > b) t = 1 - t;
                bps.push_back({t, point_from(bp.at("image"))});
            }
            std::sort(bps.begin(), bps.end(), [](const Breakpoint& x, const Breakpoint& y) { return x.t < y.t; });
            tracks[*ei] = std::move(bps);
        }
    }
    for (std::size_t ei = 0; ei < tracks.size(); ++ei) {
        if (!tracks[ei].empty()) continue;
        const Edge& e = domain->edges()[ei];
        tracks[ei] = {{Rational(0), images.at(e.lo)}, {Rational(1), images.at(e.hi)}};
    }
    return PLMap(std::move(domain), std::move(codomain), std::move(images), std::move(tracks));
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error(ErrorKind::InvalidArgument, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(ErrorKind::InvalidArgument, path + ": " + e.what());
    }
}

/// SHA-256 of a file's bytes, as lowercase hex.
inline std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(ErrorKind::InvalidArgument, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return hex.str();
}

}  // namespace continua::json_io
