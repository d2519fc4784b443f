#include <gtest/gtest.h>

#include "gclust/error.hpp"
#include "gclust/instance.hpp"

using namespace gclust;
using nlohmann::json;

namespace {

json base_doc() {
    return json::parse(R"({"group": {"type": "sign"}, "vertices": 3,
        "edges": [{"from": 1, "to": 2, "voltage": ""}, {"from": 2, "to": 3, "voltage": "neg", "weight": 2.5}]})");
}

std::string parse_error(const json& doc) {
    try {
        parse_instance(doc);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError) << e.what();
        return e.what();
    }
    ADD_FAILURE() << "expected a parse error";
    return {};
}

}  // namespace

TEST(Instance, ParsesWordsAndWeights) {
    const Instance inst = parse_instance(base_doc());
    EXPECT_EQ(inst.graph.vertex_count(), 3);
    EXPECT_EQ(inst.weights, (Weights{1.0, 2.5}));
    const VoltageGraph vg = inst.voltage_graph();
    EXPECT_EQ(vg.voltage(0), vg.group().identity());
    EXPECT_EQ(vg.voltage(1), vg.group().generators()[0]);
}

TEST(Instance, MissingVoltageIsIdentity) {
    json doc = base_doc();
    doc["edges"][1].erase("voltage");
    EXPECT_EQ(parse_instance(doc).voltage_graph().voltage(1), GroupElement{0});
}

TEST(Instance, MalformedWordNamesTheEdge) {
    json doc = base_doc();
    doc["edges"][1]["voltage"] = "neg flip";
    const std::string msg = parse_error(doc);
    EXPECT_NE(msg.find("edge 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("flip"), std::string::npos) << msg;
}

TEST(Instance, FieldDiagnostics) {
    json doc = base_doc();
    doc.erase("vertices");
    EXPECT_NE(parse_error(doc).find("vertices"), std::string::npos);

    doc = base_doc();
    doc["edges"][0]["weight"] = -1;
    EXPECT_NE(parse_error(doc).find("edge 1.weight"), std::string::npos);

    doc = base_doc();
    doc["edges"][0]["to"] = "two";
    EXPECT_NE(parse_error(doc).find("edge 1.to"), std::string::npos);

    doc = base_doc();
    doc["edges"].push_back({{"from", 1}, {"to", 2}});
    EXPECT_NE(parse_error(doc).find("instance.edges"), std::string::npos);

    doc = base_doc();
    doc["group"] = {{"type", "icosahedral"}};
    EXPECT_NE(parse_error(doc).find("unknown group type"), std::string::npos);

    doc = base_doc();
    doc["group"] = {{"type", "cyclic"}, {"n", 0}};
    parse_error(doc);
}

TEST(Instance, GroupSpecs) {
    EXPECT_EQ(parse_group_spec(json::parse(R"({"type":"cyclic","n":6})")).order(), 6u);
    EXPECT_EQ(parse_group_spec(json::parse(R"({"type":"dihedral","n":6,"v":[1,0]})")).order(), 12u);
    EXPECT_EQ(parse_group_spec(json::parse(R"({"type":"dihedral","n":4})")).order(), 8u);
    const FiniteGroup g = parse_group_spec(json::parse(
        R"({"type":"generators","dimension":2,"matrices":[[[0,-1],[1,0]],[[1,0],[0,-1]]],"names":["r","s"]})"));
    EXPECT_EQ(g.order(), 8u);
    EXPECT_EQ(g.generator_names(), (std::vector<std::string>{"r", "s"}));
    EXPECT_THROW(parse_group_spec(json::parse(R"({"type":"generators","dimension":2,"matrices":[[[2,0],[0,1]]]})")),
                 Error);
    EXPECT_THROW(parse_group_spec(json::parse(R"({"type":"generators","dimension":2,"matrices":[[[1,0,0]]]})")),
                 Error);
}

TEST(Instance, BuiltinFixtures) {
    EXPECT_TRUE(builtin_fixture("fig1_c6").has_value());
    EXPECT_TRUE(builtin_fixture("fig1_d6").has_value());
    EXPECT_FALSE(builtin_fixture("fig2").has_value());
    EXPECT_EQ(load_json("examples/fig1_c6.json"), *builtin_fixture("fig1_c6"));
    try {
        load_json("/nonexistent/instance.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(Instance, RoundTrip) {
    for (const char* name : {"fig1_c6", "fig1_d6"}) {
        const Instance inst = parse_instance(*builtin_fixture(name));
        const VoltageGraph vg = inst.voltage_graph();
        const Instance again = parse_instance(instance_to_json(vg, inst.group_spec, inst.weights));
        EXPECT_EQ(again.voltage_graph().rho(), vg.rho());
        EXPECT_EQ(again.graph.edges(), vg.graph().edges());
        EXPECT_EQ(again.weights, inst.weights);
    }
}

TEST(Instance, AnalysisJson) {
    const VoltageGraph vg = parse_instance(*builtin_fixture("fig1_d6")).voltage_graph();
    const AnalysisReport report = analyze(vg);
    const DerivedGraph dg(vg);
    const json doc = analysis_to_json(vg, report, dg, root_connectivity_report(dg));
    EXPECT_EQ(doc["balanced"], false);
    EXPECT_EQ(doc["nondegenerate"], true);
    EXPECT_EQ(doc["predicted_cluster_count"], 6);
    EXPECT_EQ(doc["local_groups"][0]["order"], 2);
    EXPECT_EQ(doc["local_groups"][0]["elements"], json({"", "ref"}));
    EXPECT_EQ(doc["derived"]["components"], 6);
    EXPECT_EQ(doc["root_criterion"]["holds"], true);
    EXPECT_EQ(doc["adapted_partition"], json::parse("[[1,7],[2,8],[3],[4],[5],[6]]"));
}
