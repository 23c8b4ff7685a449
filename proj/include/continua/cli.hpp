#pragma once

// Command-line front end. Every subcommand reads JSON files, writes one JSON
// report to `out` and returns 0 on success, 2 when a checked property fails
// and 1 on input or usage errors.

#include "continua/coloring.hpp"
#include "continua/cover.hpp"
#include "continua/hat.hpp"
#include "continua/json_io.hpp"
#include "continua/models.hpp"
#include "continua/refinement.hpp"
#include "continua/surgery.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace continua::cli {

using json = nlohmann::json;

enum ExitCode : int { Success = 0, InputError = 1, PropertyFailed = 2 };

inline bool is_input_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidGraph:
        case ErrorKind::InvalidPoint:
        case ErrorKind::DisconnectedInput:
        case ErrorKind::InvalidCover:
        case ErrorKind::CapExceeded:
        case ErrorKind::DomainMismatch:
        case ErrorKind::InvalidMap:
        case ErrorKind::ResolutionTooCoarse:
        case ErrorKind::NotACycle:
        case ErrorKind::RadiusTooSmall:
        case ErrorKind::InvalidArgument: return true;
        default: return false;
    }
}

inline json verdict(std::string_view operation, std::string_view module, json result) {
    return {{"operation", operation}, {"module", module}, {"result", std::move(result)}};
}

class Manifest {
public:
    explicit Manifest(std::string command) : command_(std::move(command)) {}

    json read(const std::string& path) {
        inputs_[path] = json_io::digest_file(path);
        return json_io::read_file(path);
    }
    void param(const std::string& key, json value) { params_[key] = std::move(value); }

    json to_json(json verdicts) const {
        return {{"command", command_}, {"inputs", inputs_}, {"parameters", params_}, {"verdicts", std::move(verdicts)}};
    }

private:
    std::string command_;
    json inputs_ = json::object();
    json params_ = json::object();
};

inline json schemas() {
    json rational = {{"oneOf", {{{"type", "integer"}}, {{"type", "string"}, {"pattern", "^-?[0-9]+(/[0-9]+)?$"}}}}};
    json pair = {{"type", "array"}, {"items", {{"type", "integer"}}}, {"minItems", 2}, {"maxItems", 2}};
    json graph = {{"type", "object"},
                  {"required", {"vertices", "edges"}},
                  {"properties", {{"vertices", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
                                  {"edges", {{"type", "array"}, {"items", pair}}}}}};
    json point = {{"oneOf",
                   {{{"type", "object"}, {"required", {"vertex"}}, {"properties", {{"vertex", {{"type", "integer"}}}}}},
                    {{"type", "object"}, {"required", {"edge", "t"}}, {"properties", {{"edge", pair}, {"t", rational}}}}}}};
    json space = {{"oneOf",
                   {{{"type", "object"}, {"required", {"graph"}},
                     {"properties", {{"graph", {{"$ref", "#/graph"}}}, {"resolution", {{"type", "integer"}, {"minimum", 1}}}}}},
                    {{"type", "object"}, {"required", {"points"}},
                     {"properties", {{"points", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
                                     {"cells", {{"type", "array"}, {"items", pair}}}}}}}}};
    json cover = {{"type", "object"},
                  {"required", {"members"}},
                  {"properties",
                   {{"members",
                     {{"type", "array"},
                      {"items", {{"type", "object"},
                                 {"required", {"points"}},
                                 {"properties", {{"name", {{"type", "string"}}},
                                                 {"points", {{"type", "array"},
                                                             {"items", {{"oneOf", {{{"type", "integer"}}, {{"$ref", "#/point"}}}}}}}}}}}}}}}}};
    json breakpoint = {{"type", "object"}, {"required", {"t", "image"}}, {"properties", {{"t", rational}, {"image", {{"$ref", "#/point"}}}}}};
    json map = {{"type", "object"},
                {"required", {"vertex_images"}},
                {"properties",
                 {{"vertex_images", {{"type", "array"}, {"items", {{"type", "object"}, {"required", {"vertex", "image"}}}}}},
                  {"tracks", {{"type", "array"},
                              {"items", {{"type", "object"},
                                         {"required", {"edge", "breakpoints"}},
                                         {"properties", {{"edge", pair}, {"breakpoints", {{"type", "array"}, {"items", breakpoint}}}}}}}}}}}};
    json manifest = {{"type", "object"}, {"required", {"command", "inputs", "parameters", "verdicts"}}};
    auto report = [&](json props) {
        props["manifest"] = {{"$ref", "#/manifest"}};
        return json{{"type", "object"}, {"properties", std::move(props)}};
    };
    return {
        {"graph", graph},
        {"point", point},
        {"space", space},
        {"cover", cover},
        {"map", map},
        {"manifest", manifest},
        {"commands",
         {{"classify", {{"usage", "classify --space s.json --cover c.json [--target chain|circle|tree] [--max-hops n] [--budget n]"},
                        {"output", report({{"class", {{"type", "string"}}},
                                           {"witness", {{"type", "array"}}},
                                           {"order", {{"type", "integer"}}},
                                           {"refinement", {{"type", "object"}}}})}}},
          {"color", {{"usage", "color --graph g.json [--colors 4] [--oracle]"},
                     {"output", report({{"coloring", {{"type", "array"}}},
                                        {"valid", {{"type", "boolean"}}},
                                        {"oracle", {{"type", "object"}}},
                                        {"error", {{"type", "string"}}}})}}},
          {"reduce", {{"usage", "reduce --graph g.json"},
                      {"output", report({{"graph", {{"$ref", "#/graph"}}},
                                         {"split_log", {{"type", "array"}}},
                                         {"links", {{"type", "array"}}},
                                         {"collapse", {{"$ref", "#/map"}}}})}}},
          {"hat-run", {{"usage", "hat-run --x x.json --gamma gamma.json --y y.json --f f.json --g g.json --cover u.json "
                                 "[--gamma-parts k] [--w-parts m] [--cap n]"},
                       {"output", report({{"gamma_parts", {{"type", "integer"}}},
                                          {"w_parts", {{"type", "integer"}}},
                                          {"samples", {{"type", "array"}}},
                                          {"l_graph", {{"$ref", "#/graph"}}},
                                          {"l_class", {{"type", "string"}}},
                                          {"audit", {{"type", "object"}}}})}}},
          {"analyze", {{"usage", "analyze --model knaster|solenoid|tree|figure-eight|circle [--stage n] [--p p] "
                                 "[--members 3|4] [--target chain|circle|tree] [--budget n] [--max-hops n]"},
                       {"output", report({{"generated", {{"type", "integer"}}},
                                          {"passed", {{"type", "integer"}}},
                                          {"verdicts", {{"type", "array"}}}})}}}}},
    };
}

namespace detail {

inline json classification_json(const Classification& c) {
    return {{"class", to_string(c.kind)}, {"witness", c.witness}};
}

inline CoverClass target_from(const std::string& s) {
    auto c = parse_cover_class(s);
    if (!c) throw Error(ErrorKind::InvalidArgument, "unknown target '" + s + "' (expected chain, circle or tree)");
    return *c;
}

struct ClassifyArgs {
    std::string space, cover, target;
    int max_hops = 4;
    std::size_t budget = SearchLimits{}.max_nodes;
};

inline int run_classify(const ClassifyArgs& a, std::ostream& out) {
    Manifest manifest("classify");
    FiniteSpace space = json_io::space_from(manifest.read(a.space));
    Cover cover = json_io::cover_from(manifest.read(a.cover), space);
    Classification c = classify_cover(space, cover);
    json report = classification_json(c);
    report["order"] = cover_order(space, cover);
    json verdicts = json::array({verdict("classify_cover", "cover_nerve", to_string(c.kind))});
    int code = Success;
    if (!a.target.empty()) {
        CoverClass target = target_from(a.target);
        manifest.param("target", a.target);
        manifest.param("max_hops", a.max_hops);
        manifest.param("budget", a.budget);
        auto pool = connected_pool(space, a.max_hops);
        auto result = find_refinement(space, cover, target, pool, SearchLimits{a.budget});
        json ref = {{"status", to_string(result.status)}, {"nodes", result.nodes}, {"admissible", result.admissible},
                    {"pool_size", pool.size()}};
        if (result.refinement) {
            ref["cover"] = json_io::to_json(space, *result.refinement);
            ref["class"] = to_string(result.classification.kind);
        }
        report["refinement"] = ref;
        verdicts.push_back(verdict("find_refinement", "cover_nerve", to_string(result.status)));
        if (result.status != SearchStatus::Found) code = PropertyFailed;
    }
    report["manifest"] = manifest.to_json(verdicts);
    out << report.dump(2) << "\n";
    return code;
}

struct ColorArgs {
    std::string graph;
    int colors = 4;
    bool oracle = false;
};

inline int run_color(const ColorArgs& a, std::ostream& out) {
    Manifest manifest("color");
    Graph g = json_io::graph_from(manifest.read(a.graph));
    manifest.param("colors", a.colors);
    manifest.param("oracle", a.oracle);
    if (a.colors != 4 && !a.oracle) throw Error(ErrorKind::InvalidArgument, "--colors other than 4 requires --oracle");
    json report = json::object();
    json verdicts = json::array();
    int code = Success;
    if (a.colors == 4) {
        auto pre = check_coloring_precondition(g);
        verdicts.push_back(verdict("check_coloring_precondition", "distance2_coloring", pre.ok));
        if (!pre.ok) {
            report["error"] = to_string(ErrorKind::PreconditionViolated);
            report["message"] = pre.reason;
            code = PropertyFailed;
        } else {
            try {
                Coloring c = color_distance2(g);
                json entries = json::array();
                for (const auto& [v, col] : c.colors) entries.push_back({{"vertex", v}, {"color", col}});
                report["coloring"] = entries;
                report["valid"] = verify_coloring(g, c).valid;
                verdicts.push_back(verdict("color_distance2", "distance2_coloring", report["valid"]));
                if (!report["valid"].get<bool>()) code = PropertyFailed;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Infeasible) throw;
                report["error"] = to_string(e.kind());
                report["message"] = e.what();
                code = PropertyFailed;
            }
        }
    }
    if (a.oracle) {
        bool feasible = coloring_feasible_oracle(g, a.colors);
        report["oracle"] = {{"colors", a.colors}, {"feasible", feasible}};
        verdicts.push_back(verdict("coloring_feasible_oracle", "distance2_coloring", feasible));
        if (!feasible) code = PropertyFailed;
    }
    report["manifest"] = manifest.to_json(verdicts);
    out << report.dump(2) << "\n";
    return code;
}

inline int run_reduce(const std::string& graph_path, std::ostream& out) {
    Manifest manifest("reduce");
    Graph g = json_io::graph_from(manifest.read(graph_path));
    SurgeryResult r = reduce_degree(g);
    json log = json::array();
    for (const auto& s : r.split_log) log.push_back({{"original", s.original}, {"path", s.path}, {"attached", s.attached}});
    json links = json::array();
    for (const Edge& e : r.links) links.push_back({e.lo, e.hi});
    json report = {{"graph", json_io::to_json(r.graph)},
                   {"split_log", log},
                   {"links", links},
                   {"collapse", json_io::to_json(r.collapse)},
                   {"max_degree", r.graph.max_degree()},
                   {"betti1", betti1(r.graph)}};
    report["manifest"] = manifest.to_json(json::array({verdict("reduce_degree", "graph_surgery", r.graph.max_degree() <= 3)}));
    out << report.dump(2) << "\n";
    return r.graph.max_degree() <= 3 ? Success : PropertyFailed;
}

struct HatArgs {
    std::string x, gamma, y, f, g, cover;
    int resolution = 4;
    int cap = 1024;
    std::optional<int> gamma_parts, w_parts;
};

inline int run_hat(const HatArgs& a, std::ostream& out) {
    Manifest manifest("hat-run");
    json xj = manifest.read(a.x);
    FiniteSpace x = xj.contains("vertices") ? FiniteSpace::sampled(json_io::graph_from(xj), a.resolution)
                                            : json_io::space_from(xj);
    if (!x.has_realization()) throw Error(ErrorKind::InvalidArgument, "X must be a sampled graph");
    auto xg = share(x.graph());
    auto gamma = share(json_io::graph_from(manifest.read(a.gamma)));
    auto y = share(json_io::graph_from(manifest.read(a.y)));
    PLMap f = json_io::map_from(manifest.read(a.f), xg, gamma);
    PLMap g = json_io::map_from(manifest.read(a.g), xg, y);
    Cover u = json_io::cover_from(manifest.read(a.cover), x);
    HatOptions options{a.cap, a.gamma_parts, a.w_parts};
    manifest.param("x_resolution", x.resolution());
    manifest.param("cap", a.cap);
    if (a.gamma_parts) manifest.param("gamma_parts", *a.gamma_parts);
    if (a.w_parts) manifest.param("w_parts", *a.w_parts);

    HatResult r = build_hat_map(f, g, x, u, options);
    const HatMachinery& hm = r.machinery;
    json coloring = json::array();
    for (const auto& [v, c] : hm.coloring().colors) coloring.push_back({{"vertex", v}, {"color", c}});
    json samples = json::array();
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        samples.push_back({{"x", json_io::to_json(x.point(i))},
                           {"y", json_io::to_json(hm.stars().subdivision().to_coarse(r.samples[i].y))},
                           {"lambda", json_io::to_json(r.samples[i].lambda)}});
    }
    const HatAudit& au = r.audit;
    json audit = {{"passed", au.passed()},
                  {"y_samples", au.y_samples},
                  {"pair_samples", au.pair_samples},
                  {"max_rectangles_at", au.max_claim_set},
                  {"weights_ok", au.weights_ok},
                  {"pi_agrees", au.pi_agrees},
                  {"pi_preimage_ok", au.pi_preimage_ok},
                  {"u_map", au.u_map},
                  {"u_map_rectangles", au.u_map_rectangles},
                  {"lambda_continuous", au.lambda_continuous},
                  {"max_step", to_string(au.max_step)},
                  {"max_jump", to_string(au.max_jump)},
                  {"pr_y_locally_injective", au.pr_y_locally_injective},
                  {"pr_y_surjective", au.pr_y_surjective},
                  {"min_multiplicity", au.min_multiplicity},
                  {"max_multiplicity", au.max_multiplicity},
                  {"failures", au.failures}};
    json report = {{"gamma_parts", r.gamma_parts},
                   {"w_parts", r.w_parts},
                   {"gamma_fine", json_io::to_json(hm.fine_graph())},
                   {"coloring", coloring},
                   {"xi", hm.xi()},
                   {"rectangles", hm.rectangles().size()},
                   {"samples", samples},
                   {"l_graph", json_io::to_json(r.l_graph)},
                   {"l_class", to_string(r.l_class.kind)},
                   {"audit", audit}};
    report["manifest"] = manifest.to_json(json::array({verdict("build_hat_map", "hat_construction", au.passed()),
                                                        verdict("classify_cover", "cover_nerve", to_string(r.l_class.kind))}));
    out << report.dump(2) << "\n";
    return au.passed() ? Success : PropertyFailed;
}

struct AnalyzeArgs {
    std::string model, target = "chain";
    int stage = 1, p = 2, members = 4, max_hops = 4, resolution = 2;
    std::size_t budget = SearchLimits{}.max_nodes;
};

inline Graph model_graph(const AnalyzeArgs& a) {
    if (a.model == "knaster") return knaster_stage(a.stage).last_stage();
    if (a.model == "solenoid") return solenoid_stage(a.stage, a.p).last_stage();
    if (a.model == "tree") return make_spider(3, std::max(1, a.stage));
    if (a.model == "figure-eight") return make_figure_eight(std::max(3, a.stage));
    if (a.model == "circle") return make_cycle(std::max(3, a.stage));
    throw Error(ErrorKind::InvalidArgument, "unknown model '" + a.model + "'");
}

inline int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
    Manifest manifest("analyze");
    for (auto [k, v] : std::vector<std::pair<std::string, json>>{{"model", a.model}, {"stage", a.stage}, {"p", a.p},
                                                                 {"members", a.members}, {"target", a.target},
                                                                 {"max_hops", a.max_hops}, {"budget", a.budget},
                                                                 {"resolution", a.resolution}})
        manifest.param(k, v);
    Graph g = model_graph(a);
    CoverClass target = target_from(a.target);
    if (a.members < 0) throw Error(ErrorKind::InvalidArgument, "members must be 3 or 4");
    auto rep = empirical_k_likeness(g, static_cast<std::size_t>(a.members), target,
                                    SweepOptions{a.resolution, a.max_hops, SearchLimits{a.budget}});
    json verdicts = json::array();
    for (const auto& v : rep.verdicts) {
        verdicts.push_back({{"cover", v.description}, {"members", v.members}, {"status", to_string(v.status)}, {"nodes", v.nodes}});
    }
    json report = {{"model", a.model},
                   {"stage_graph", json_io::to_json(g)},
                   {"target", to_string(target)},
                   {"resolution", rep.resolution},
                   {"generated", rep.generated},
                   {"passed", rep.passed},
                   {"failed", rep.failed},
                   {"budget_exceeded", rep.budget_exceeded},
                   {"all_passed", rep.all_passed()},
                   {"verdicts", verdicts}};
    report["manifest"] = manifest.to_json(json::array({verdict("empirical_k_likeness", "continua_models", rep.all_passed())}));
    out << report.dump(2) << "\n";
    return rep.all_passed() ? Success : PropertyFailed;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Covers, nerves and graph maps for one-dimensional continua", "continua"};
    app.require_subcommand(0, 1);
    bool print_schema = false;
    app.add_flag("--json-schema", print_schema, "Print the JSON schemas of all inputs and reports");

    detail::ClassifyArgs ca;
    auto* classify = app.add_subcommand("classify", "Classify a cover by its nerve; optionally search for a refinement");
    classify->add_option("--space", ca.space, "Sample space JSON")->required();
    classify->add_option("--cover", ca.cover, "Cover JSON")->required();
    classify->add_option("--target", ca.target, "Search a refinement of this class: chain, circle or tree");
    classify->add_option("--max-hops", ca.max_hops, "Largest connected piece in the refinement pool, in grid steps");
    classify->add_option("--budget", ca.budget, "Search node budget");

    detail::ColorArgs co;
    auto* color = app.add_subcommand("color", "Distance-2 four-coloring of a subcubic graph");
    color->add_option("--graph", co.graph, "Graph JSON")->required();
    color->add_option("--colors", co.colors, "Palette size");
    color->add_flag("--oracle", co.oracle, "Also decide feasibility by exhaustive search");

    std::string reduce_graph;
    auto* reduce = app.add_subcommand("reduce", "Split vertices of degree >= 4");
    reduce->add_option("--graph", reduce_graph, "Graph JSON")->required();

    detail::HatArgs ha;
    auto* hat = app.add_subcommand("hat-run", "Build and audit the map h: X -> L");
    hat->add_option("--x", ha.x, "X as a sample space JSON, or a graph JSON sampled at --resolution")->required();
    hat->add_option("--gamma", ha.gamma, "Target graph of f")->required();
    hat->add_option("--y", ha.y, "Target graph of g")->required();
    hat->add_option("--f", ha.f, "Map JSON for f: X -> Gamma")->required();
    hat->add_option("--g", ha.g, "Map JSON for g: X -> Y")->required();
    hat->add_option("--cover", ha.cover, "Cover of X's sample space")->required();
    hat->add_option("--resolution", ha.resolution, "Sampling of X when --x is a plain graph");
    hat->add_option("--cap", ha.cap, "Largest subdivision tried");
    hat->add_option("--gamma-parts", ha.gamma_parts, "Fix the subdivision of Gamma");
    hat->add_option("--w-parts", ha.w_parts, "Fix the subdivision of Y carrying the star cover");

    detail::AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Empirical refinement sweep over generated covers of a model stage");
    analyze->add_option("--model", aa.model, "knaster, solenoid, tree, figure-eight or circle")->required();
    analyze->add_option("--stage", aa.stage, "Stage index or size parameter");
    analyze->add_option("--p", aa.p, "Solenoid degree");
    analyze->add_option("--members", aa.members, "Cover size bound (3 or 4)");
    analyze->add_option("--target", aa.target, "chain, circle or tree");
    analyze->add_option("--budget", aa.budget, "Search node budget per cover");
    analyze->add_option("--max-hops", aa.max_hops, "Largest connected piece in the refinement pool");
    analyze->add_option("--resolution", aa.resolution, "Samples per edge");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n(run with --json-schema for input formats, --help for flags)\n";
        return InputError;
    }

    if (print_schema) {
        out << schemas().dump(2) << "\n";
        return Success;
    }
    try {
        if (*classify) return detail::run_classify(ca, out);
        if (*color) return detail::run_color(co, out);
        if (*reduce) return detail::run_reduce(reduce_graph, out);
        if (*hat) return detail::run_hat(ha, out);
        if (*analyze) return detail::run_analyze(aa, out);
    } catch (const Error& e) {
        json report = {{"error", to_string(e.kind())}, {"message", e.what()}};
        if (is_input_error(e.kind())) {
            err << report.dump(2) << "\n";
            return InputError;
        }
        out << report.dump(2) << "\n";
        return PropertyFailed;
    } catch (const nlohmann::json::exception& e) {
        err << json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump(2) << "\n";
        return InputError;
    }
    err << app.help();
    return InputError;
}

}  // namespace continua::cli
