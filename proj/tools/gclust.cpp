// gclust: analyze voltage graphs and simulate G-clustering dynamics.
//
//   gclust analyze <file> [--dot out.dot] [--json out.json]
//   gclust simulate <file> --seed S --step h --tmax T --tol e --out traj.csv [--report r.json] [--lifted]
//   gclust construct --graph <file> --group <spec> --eta random|<file> --seed S --out vg.json
//   gclust count --n N --k K
//
// Exit codes: 0 success, 2 parse error, 3 infeasible / criterion not met,
// 4 numerical failure, 1 anything else.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gclust/derived.hpp"
#include "gclust/dynamics.hpp"
#include "gclust/error.hpp"
#include "gclust/instance.hpp"
#include "gclust/voltage.hpp"

using namespace gclust;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::InvalidSpec:
        case ErrorCode::InvalidGraph:
        case ErrorCode::InvalidMatrix:
        case ErrorCode::ClosureBoundExceeded:
        case ErrorCode::ForeignElement:
        case ErrorCode::InvalidWalk:
        case ErrorCode::EmptySubset:
        case ErrorCode::NotClosed:
            return kExitParse;
        case ErrorCode::NotWeaklyConnected:
        case ErrorCode::NotRooted:
        case ErrorCode::Infeasible:
        case ErrorCode::NotSurjective:
        case ErrorCode::CriterionNotMet:
            return kExitInfeasible;
        case ErrorCode::ShapeError:
        case ErrorCode::StepTooLarge:
        case ErrorCode::Diverged:
            return kExitNumerical;
        default:
            return 1;
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    out << text;
}

std::string join(const std::vector<std::vector<Vertex>>& sets) {
    std::string s;
    for (const auto& block : sets) {
        if (!s.empty()) s += ' ';
        s += '{';
        for (std::size_t i = 0; i < block.size(); ++i) s += (i ? "," : "") + std::to_string(block[i]);
        s += '}';
    }
    return s;
}

std::string words(const FiniteGroup& G, const Subgroup& h) {
    std::string s = "{";
    for (std::size_t i = 0; i < h.order(); ++i) {
        const std::string w = G.word_of(h.members()[i]);
        s += (i ? ", " : "") + (w.empty() ? std::string("1") : w);
    }
    return s + "}";
}

int run_analyze(const std::string& file, const std::string& dot_path, const std::string& json_path) {
    const Instance inst = parse_instance(load_json(file));
    const VoltageGraph vg = inst.voltage_graph();
    const AnalysisReport report = analyze(vg);
    const DerivedGraph derived(vg);
    std::optional<RootConnectivityReport> roots;
    if (report.connectivity.rooted) roots = root_connectivity_report(derived);

    const auto& c = report.connectivity;
    std::cout << "vertices: " << vg.vertex_count() << ", edges: " << vg.graph().edge_count()
              << ", |G| = " << vg.group().order() << "\n";
    std::cout << "connectivity: " << (c.strong ? "strong" : c.rooted ? "rooted" : "weak") << "\n";
    for (Vertex v = 1; v <= vg.vertex_count(); ++v) {
        const auto i = static_cast<std::size_t>(v - 1);
        std::cout << "  v" << v << ": G = " << words(vg.group(), report.local_groups[i])
                  << "  G* = " << words(vg.group(), report.directed_local_groups[i]) << "\n";
    }
    std::cout << "balanced: " << (report.balanced ? "true" : "false") << "\n";
    std::cout << "nondegenerate: " << (report.nondegenerate ? "true" : "false") << "\n";
    std::cout << "adapted partition: " << join(report.adapted_partition) << "\n";
    std::cout << "derived components: " << derived.components().size() << "\n";
    if (roots)
        std::cout << "root criterion (G*_r = G_r): " << (roots->criterion_holds ? "holds" : "fails") << "\n";
    else
        std::cout << "root criterion: not applicable (graph not rooted)\n";
    std::cout << "predicted clusters m: " << report.predicted_cluster_count << "\n";

    if (!json_path.empty()) write_file(json_path, analysis_to_json(vg, report, derived, roots).dump(2) + "\n");
    if (!dot_path.empty()) write_file(dot_path, to_dot(derived));
    return 0;
}

struct SimulateArgs {
    std::string file;
    std::uint64_t seed = 0;
    std::optional<double> step;
    double t_max = 200.0;
    double tol = 1e-10;
    std::size_t record_every = 10;
    double cluster_tol = 1e-6;
    double check_tol = 1e-6;
    std::string out;
    std::string report;
    bool lifted = false;
};

int run_simulate(const SimulateArgs& args) {
    const Instance inst = parse_instance(load_json(args.file));
    const VoltageGraph vg = inst.voltage_graph();
    const AnalysisReport analysis = analyze(vg);
    const bool criterion = analysis.root_condition_holds.value_or(false);

    SimulationOptions opts;
    opts.step = args.step.value_or(std::min(0.05, max_stable_step(vg.graph(), inst.weights)));
    opts.t_max = args.t_max;
    opts.tol = args.tol;
    opts.record_every = args.record_every;
    const auto p0 = Configuration::random_uniform(static_cast<std::size_t>(vg.vertex_count()),
                                                  vg.group().dimension(), args.seed);
    const Trajectory traj = args.lifted ? simulate_lifted(vg, inst.weights, p0, opts).projected
                                        : simulate(vg, inst.weights, p0, opts);
    const LimitReport limit = verify_limit(vg, traj.final_state, args.cluster_tol);

    if (!args.out.empty()) {
        std::ofstream csv(args.out);
        if (!csv) throw Error(ErrorCode::ParseError, "cannot write " + args.out);
        write_trajectory_csv(csv, traj);
    }
    const bool checks = limit.edge_alignment_error < args.check_tol && limit.norm_spread < args.check_tol &&
                        limit.fixed_point_error < args.check_tol && limit.relation != PartitionRelation::Mismatch;
    if (!args.report.empty()) {
        json doc = limit_report_to_json(limit, traj);
        doc["seed"] = args.seed;
        doc["step"] = opts.step;
        doc["lifted"] = args.lifted;
        doc["root_criterion_holds"] = criterion;
        doc["predicted_cluster_count"] = criterion ? json(analysis.predicted_cluster_count) : json(nullptr);
        doc["checks_passed"] = checks;
        write_file(args.report, doc.dump(2) + "\n");
    }

    std::cout << (traj.converged ? "converged" : "not converged") << " at t = " << traj.times.back()
              << " (residual " << traj.residual << ")\n";
    std::cout << "edge alignment error: " << limit.edge_alignment_error << "\n";
    std::cout << "norm spread: " << limit.norm_spread << "\n";
    std::cout << "fixed point error: " << limit.fixed_point_error << "\n";
    std::cout << "clusters (" << limit.clusters.size() << "): " << join(limit.clusters) << " ["
              << to_string(limit.relation) << " adapted partition]\n";

    if (!traj.converged) return kExitNumerical;
    if (!criterion) {
        std::cerr << "root criterion not met: convergence to clusters is not guaranteed\n";
        return kExitInfeasible;
    }
    return checks ? 0 : kExitInfeasible;
}

int run_construct(const std::string& graph_file, const std::string& group_arg, const std::string& eta_arg,
                  std::uint64_t seed, const std::string& out_path) {
    const Digraph graph = parse_graph(load_json(graph_file));
    json group_spec;
    if (!group_arg.empty() && group_arg.front() == '{') {
        try {
            group_spec = json::parse(group_arg);
        } catch (const json::parse_error& err) {
            throw Error(ErrorCode::ParseError, std::string("--group: ") + err.what());
        }
    } else {
        group_spec = load_json(group_arg);
    }
    auto group = std::make_shared<const FiniteGroup>(parse_group_spec(group_spec));

    std::optional<VoltageGraph> vg;
    if (eta_arg == "random") {
        vg = construct_balanced_nondegenerate(graph, group, seed);
    } else {
        json eta_doc = load_json(eta_arg);
        if (eta_doc.is_object() && eta_doc.contains("eta")) eta_doc = eta_doc["eta"];
        if (!eta_doc.is_array()) throw Error(ErrorCode::ParseError, eta_arg + ": expected an array of words");
        std::vector<GroupElement> eta;
        for (const json& w : eta_doc) {
            if (!w.is_string()) throw Error(ErrorCode::ParseError, eta_arg + ": expected words");
            eta.push_back(group->evaluate_word(w.get<std::string>()));
        }
        vg = construct_balanced_nondegenerate(graph, group, eta);
    }
    const std::string text = instance_to_json(*vg, group_spec).dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voltage-graph analysis and G-clustering simulation"};
    app.require_subcommand(1);

    std::string analyze_file, dot_path, json_path;
    auto* analyze_cmd = app.add_subcommand("analyze", "Local groups, balance, partition, derived graph");
    analyze_cmd->add_option("file", analyze_file, "Instance JSON or built-in fixture name")->required();
    analyze_cmd->add_option("--dot", dot_path, "Write the derived graph as DOT");
    analyze_cmd->add_option("--json", json_path, "Write the analysis report as JSON");

    SimulateArgs sim;
    double step = 0.0;
    auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the clustering dynamics");
    simulate_cmd->option_defaults()->always_capture_default();
    simulate_cmd->add_option("file", sim.file, "Instance JSON or built-in fixture name")->required();
    simulate_cmd->add_option("--seed", sim.seed, "Seed for the uniform [-1,1]^k initial condition");
    auto* step_opt = simulate_cmd->add_option("--step", step, "Fixed RK4 step, default min(0.05, 0.5 / max row weight)");
    step_opt->default_str("");
    simulate_cmd->add_option("--tmax", sim.t_max, "Final time");
    simulate_cmd->add_option("--tol", sim.tol, "Convergence threshold on max velocity norm");
    simulate_cmd->add_option("--record-every", sim.record_every, "Record one state every n steps");
    simulate_cmd->add_option("--cluster-tol", sim.cluster_tol, "Distance below which limits share a cluster");
    simulate_cmd->add_option("--check-tol", sim.check_tol, "Tolerance for the limit checks");
    simulate_cmd->add_option("--out", sim.out, "Trajectory CSV");
    simulate_cmd->add_option("--report", sim.report, "Limit report JSON");
    simulate_cmd->add_flag("--lifted", sim.lifted, "Integrate the lifted system on the derived graph");

    std::string graph_file, group_arg, eta_arg = "random", construct_out;
    std::uint64_t construct_seed = 0;
    auto* construct_cmd = app.add_subcommand("construct", "Build a balanced, nondegenerate voltage map");
    construct_cmd->add_option("--graph", graph_file, "Graph JSON (vertices, edges)")->required();
    construct_cmd->add_option("--group", group_arg, "Group spec as inline JSON or a file")->required();
    construct_cmd->add_option("--eta", eta_arg, "'random' or a JSON file of per-vertex words");
    construct_cmd->add_option("--seed", construct_seed, "Seed for random eta");
    construct_cmd->add_option("--out", construct_out, "Output instance JSON (stdout if omitted)");

    unsigned count_n = 0, count_k = 0;
    auto* count_cmd = app.add_subcommand("count", "Number of balanced, nondegenerate voltage maps");
    count_cmd->add_option("--n", count_n, "Vertex count")->required();
    count_cmd->add_option("--k", count_k, "Group order")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*analyze_cmd) return run_analyze(analyze_file, dot_path, json_path);
        if (*simulate_cmd) {
            if (*step_opt) sim.step = step;
            return run_simulate(sim);
        }
        if (*construct_cmd) return run_construct(graph_file, group_arg, eta_arg, construct_seed, construct_out);
        if (*count_cmd) {
            std::cout << count_balanced_nondegenerate(count_n, count_k) << "\n";
            return 0;
        }
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code_for(err.code());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
