#include "gclust/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gclust/error.hpp"

namespace gclust {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, where + ": " + what);
}

const json& field(const json& obj, const char* name, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) fail(where, std::string("missing field '") + name + "'");
    return *it;
}

int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<int>();
}

double as_double(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
}

constexpr const char* kFig1C6 = R"({
  "group": {"type": "cyclic", "n": 6},
  "vertices": 8,
  "edges": [
    {"from": 1, "to": 2, "voltage": "rot"},
    {"from": 2, "to": 3, "voltage": "rot"},
    {"from": 3, "to": 4, "voltage": "rot"},
    {"from": 4, "to": 5, "voltage": "rot"},
    {"from": 5, "to": 6, "voltage": "rot"},
    {"from": 6, "to": 7, "voltage": "rot"},
    {"from": 7, "to": 8, "voltage": "rot"},
    {"from": 8, "to": 1, "voltage": "rot~"},
    {"from": 1, "to": 8, "voltage": "rot"}
  ]
})";

constexpr const char* kFig1D6 = R"({
  "group": {"type": "dihedral", "n": 6, "v": [1, 0]},
  "vertices": 8,
  "edges": [
    {"from": 1, "to": 2, "voltage": "rot"},
    {"from": 2, "to": 3, "voltage": "rot"},
    {"from": 3, "to": 4, "voltage": "rot"},
    {"from": 4, "to": 5, "voltage": "rot"},
    {"from": 5, "to": 6, "voltage": "rot"},
    {"from": 6, "to": 7, "voltage": "rot"},
    {"from": 7, "to": 8, "voltage": "rot"},
    {"from": 8, "to": 1, "voltage": "rot~"},
    {"from": 1, "to": 8, "voltage": "ref rot"}
  ]
})";

json vertex_sets(const std::vector<std::vector<Vertex>>& sets) {
    json out = json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

json subgroup_words(const FiniteGroup& G, const Subgroup& h) {
    json out = json::array();
    for (GroupElement g : h.members()) out.push_back(G.word_of(g));
    return out;
}

}  // namespace

VoltageGraph Instance::voltage_graph() const {
    std::vector<GroupElement> rho;
    for (std::size_t e = 0; e < words.size(); ++e) {
        try {
            rho.push_back(group->evaluate_word(words[e]));
        } catch (const Error& err) {
            const Edge& ed = graph.edge(e);
            fail("edge " + std::to_string(e + 1) + " (" + std::to_string(ed.from) + "->" + std::to_string(ed.to) + ")",
                 err.what());
        }
    }
    return VoltageGraph(graph, group, std::move(rho));
}

FiniteGroup parse_group_spec(const json& spec) {
    const std::string where = "group";
    const json& type_field = field(spec, "type", where);
    if (!type_field.is_string()) fail(where + ".type", "expected a string");
    const auto type = type_field.get<std::string>();
    try {
        if (type == "sign") return standard_point_group(SignGroupSpec{});
        if (type == "cyclic") return standard_point_group(CyclicGroupSpec{as_int(field(spec, "n", where), where + ".n")});
        if (type == "dihedral") {
            DihedralGroupSpec d{as_int(field(spec, "n", where), where + ".n")};
            if (spec.contains("v")) {
                const json& v = spec["v"];
                if (!v.is_array() || v.size() != 2) fail(where + ".v", "expected a 2-vector");
                d.vx = as_double(v[0], where + ".v[0]");
                d.vy = as_double(v[1], where + ".v[1]");
            }
            return standard_point_group(d);
        }
        if (type == "generators") {
            GeneratorGroupSpec g;
            const int dim = as_int(field(spec, "dimension", where), where + ".dimension");
            if (dim <= 0) fail(where + ".dimension", "must be positive");
            g.dimension = static_cast<std::size_t>(dim);
            const json& mats = field(spec, "matrices", where);
            if (!mats.is_array()) fail(where + ".matrices", "expected an array");
            for (std::size_t m = 0; m < mats.size(); ++m) {
                const std::string at = where + ".matrices[" + std::to_string(m) + "]";
                if (!mats[m].is_array() || mats[m].size() != g.dimension) fail(at, "expected " + std::to_string(dim) + " rows");
                std::vector<double> entries;
                for (const json& row : mats[m]) {
                    if (!row.is_array() || row.size() != g.dimension) fail(at, "expected " + std::to_string(dim) + " columns");
                    for (const json& x : row) entries.push_back(as_double(x, at));
                }
                g.matrices.emplace_back(g.dimension, std::move(entries));
            }
            if (spec.contains("names")) {
                for (const json& name : spec["names"]) {
                    if (!name.is_string()) fail(where + ".names", "expected strings");
                    g.names.push_back(name.get<std::string>());
                }
            }
            return standard_point_group(g);
        }
    } catch (const Error& err) {
        if (err.code() == ErrorCode::ParseError) throw;
        fail(where, err.what());
    }
    fail(where + ".type", "unknown group type '" + type + "'");
}

Digraph parse_graph(const json& doc) {
    const int n = as_int(field(doc, "vertices", "instance"), "instance.vertices");
    if (n <= 0) fail("instance.vertices", "must be positive");
    const json& edges = field(doc, "edges", "instance");
    if (!edges.is_array()) fail("instance.edges", "expected an array");
    std::vector<Edge> out;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string where = "edge " + std::to_string(e + 1);
        out.push_back({as_int(field(edges[e], "from", where), where + ".from"),
                       as_int(field(edges[e], "to", where), where + ".to")});
    }
    try {
        return Digraph(n, std::move(out));
    } catch (const Error& err) {
        fail("instance.edges", err.what());
    }
}

Instance parse_instance(const json& doc) {
    Instance inst;
    inst.group_spec = field(doc, "group", "instance");
    inst.group = std::make_shared<const FiniteGroup>(parse_group_spec(inst.group_spec));
    inst.graph = parse_graph(doc);
    const json& edges = doc["edges"];
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::string where = "edge " + std::to_string(e + 1);
        const json& edge = edges[e];
        std::string word;
        if (edge.contains("voltage")) {
            if (!edge["voltage"].is_string()) fail(where + ".voltage", "expected a word string");
            word = edge["voltage"].get<std::string>();
        }
        double weight = 1.0;
        if (edge.contains("weight")) {
            weight = as_double(edge["weight"], where + ".weight");
            if (!(weight > 0.0) || !std::isfinite(weight)) fail(where + ".weight", "must be positive");
        }
        inst.words.push_back(std::move(word));
        inst.weights.push_back(weight);
    }
    inst.voltage_graph();  // surfaces bad words with the edge named
    return inst;
}

std::optional<json> builtin_fixture(const std::string& name) {
    if (name == "fig1_c6") return json::parse(kFig1C6);
    if (name == "fig1_d6") return json::parse(kFig1D6);
    return std::nullopt;
}

json load_json(const std::string& source) {
    std::ifstream in(source);
    if (!in) {
        if (auto fixture = builtin_fixture(source)) return *fixture;
        const std::string stem = std::filesystem::path(source).stem().string();
        if (auto fixture = builtin_fixture(stem); fixture && !std::filesystem::exists(source)) return *fixture;
        fail(source, "cannot open file");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        fail(source, err.what());
    }
}

json instance_to_json(const VoltageGraph& vg, const json& group_spec, const std::optional<Weights>& weights) {
    json doc;
    doc["group"] = group_spec;
    doc["vertices"] = vg.vertex_count();
    doc["edges"] = json::array();
    for (EdgeId e = 0; e < vg.graph().edge_count(); ++e) {
        const Edge& ed = vg.graph().edge(e);
        json edge = {{"from", ed.from}, {"to", ed.to}, {"voltage", vg.group().word_of(vg.voltage(e))}};
        if (weights) edge["weight"] = weights->at(e);
        doc["edges"].push_back(std::move(edge));
    }
    return doc;
}

json analysis_to_json(const VoltageGraph& vg, const AnalysisReport& report, const DerivedGraph& derived,
                      const std::optional<RootConnectivityReport>& roots) {
    const FiniteGroup& G = vg.group();
    json doc;
    doc["vertices"] = vg.vertex_count();
    doc["edges"] = vg.graph().edge_count();
    doc["group_order"] = G.order();
    doc["connectivity"] = {{"weak", report.connectivity.weak},
                           {"strong", report.connectivity.strong},
                           {"rooted", report.connectivity.rooted},
                           {"roots", report.connectivity.roots}};
    json local = json::array(), directed = json::array();
    for (Vertex v = 1; v <= vg.vertex_count(); ++v) {
        const auto i = static_cast<std::size_t>(v - 1);
        local.push_back({{"vertex", v}, {"order", report.local_groups[i].order()},
                         {"elements", subgroup_words(G, report.local_groups[i])}});
        directed.push_back({{"vertex", v}, {"order", report.directed_local_groups[i].order()},
                            {"elements", subgroup_words(G, report.directed_local_groups[i])}});
    }
    doc["local_groups"] = std::move(local);
    doc["directed_local_groups"] = std::move(directed);
    doc["balanced"] = report.balanced;
    doc["nondegenerate"] = report.nondegenerate;
    doc["adapted_partition"] = vertex_sets(report.adapted_partition);
    doc["predicted_cluster_count"] = report.predicted_cluster_count;
    doc["derived"] = {{"vertices", derived.graph().vertex_count()},
                      {"edges", derived.graph().edge_count()},
                      {"components", derived.components().size()}};
    if (roots) {
        doc["root_criterion"] = {{"holds", roots->criterion_holds},
                                 {"components_rooted", roots->components_rooted},
                                 {"consistent", roots->consistent}};
    } else {
        doc["root_criterion"] = nullptr;
    }
    return doc;
}

std::string to_string(PartitionRelation relation) {
    switch (relation) {
        case PartitionRelation::Equal: return "equal";
        case PartitionRelation::CoarserThan: return "coarser_than";
        case PartitionRelation::Mismatch: return "mismatch";
    }
    return "mismatch";
}

json limit_report_to_json(const LimitReport& report, const Trajectory& traj) {
    json doc;
    doc["converged"] = traj.converged;
    doc["final_time"] = traj.times.empty() ? 0.0 : traj.times.back();
    doc["residual"] = traj.residual;
    doc["rate_estimate"] = traj.rate_estimate ? json(*traj.rate_estimate) : json(nullptr);
    doc["edge_alignment_error"] = report.edge_alignment_error;
    doc["norm_spread"] = report.norm_spread;
    doc["fixed_point_error"] = report.fixed_point_error;
    doc["clusters"] = vertex_sets(report.clusters);
    doc["partition_relation"] = to_string(report.relation);
    doc["matches_adapted_partition"] = report.matches_adapted_partition;
    json limits = json::array();
    for (Vertex v = 1; v <= static_cast<Vertex>(traj.final_state.agents()); ++v) {
        auto p = traj.final_state.point(v);
        limits.push_back(std::vector<double>(p.begin(), p.end()));
    }
    doc["limit_points"] = std::move(limits);
    return doc;
}

}  // namespace gclust
