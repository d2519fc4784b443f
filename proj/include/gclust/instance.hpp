#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gclust/derived.hpp"
#include "gclust/dynamics.hpp"
#include "gclust/voltage.hpp"

namespace gclust {

/// Parsed instance file:
///   {"group": <group spec>, "vertices": n,
///    "edges": [{"from": i, "to": j, "voltage": "rot rot~", "weight": 1.0}, ...]}
/// Voltages are words over the group's generator names; "~" inverts a letter.
struct Instance {
    nlohmann::json group_spec;
    std::shared_ptr<const FiniteGroup> group;
    Digraph graph;
    std::vector<std::string> words;
    Weights weights;

    VoltageGraph voltage_graph() const;
};

/// {"type":"sign"} | {"type":"cyclic","n":6} | {"type":"dihedral","n":6,"v":[1,0]}
/// | {"type":"generators","dimension":k,"matrices":[...],"names":[...]}
FiniteGroup parse_group_spec(const nlohmann::json& spec);

/// Graph part only ("vertices" and "edges" with "from"/"to"); voltages ignored.
Digraph parse_graph(const nlohmann::json& doc);
Instance parse_instance(const nlohmann::json& doc);

/// Built-in fixtures: "fig1_c6", "fig1_d6".
std::optional<nlohmann::json> builtin_fixture(const std::string& name);
/// Reads a file, or a built-in fixture when `source` names one and no such file exists.
nlohmann::json load_json(const std::string& source);

/// Writes voltages as shortest generator words.
nlohmann::json instance_to_json(const VoltageGraph& vg, const nlohmann::json& group_spec,
                                const std::optional<Weights>& weights = std::nullopt);

nlohmann::json analysis_to_json(const VoltageGraph& vg, const AnalysisReport& report, const DerivedGraph& derived,
                                const std::optional<RootConnectivityReport>& roots);
nlohmann::json limit_report_to_json(const LimitReport& report, const Trajectory& traj);
std::string to_string(PartitionRelation relation);

}  // namespace gclust
