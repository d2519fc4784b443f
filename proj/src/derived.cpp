#include "gclust/derived.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "gclust/error.hpp"

namespace gclust {

DerivedGraph::DerivedGraph(VoltageGraph base) : base_(std::move(base)) {
    const Digraph& g = base_.graph();
    const FiniteGroup& G = base_.group();
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<Edge> edges;
    edges.reserve(G.order() * g.edge_count());
    for (GroupElement elem : G.elements()) {
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            edges.push_back({lift(elem, ed.from), lift(G.multiply(elem, base_.voltage(e)), ed.to)});
            edge_origin_.push_back(e);
        }
    }
    graph_ = Digraph(static_cast<int>(G.order() * n), std::move(edges));
    components_ = weak_components(graph_);
    component_of_.assign(G.order() * n, 0);
    for (std::size_t c = 0; c < components_.size(); ++c)
        for (Vertex v : components_[c]) component_of_[static_cast<std::size_t>(v - 1)] = c;
}

Vertex DerivedGraph::lift(GroupElement g, Vertex v) const {
    if (g.index >= base_.group().order() || !base_.graph().has_vertex(v))
        throw Error(ErrorCode::InvalidGraph, "lifted vertex outside G x V");
    return static_cast<Vertex>(g.index * static_cast<std::size_t>(base_.vertex_count())) + v;
}

LiftedVertex DerivedGraph::project(Vertex derived) const {
    if (!graph_.has_vertex(derived)) throw Error(ErrorCode::InvalidGraph, "not a derived vertex");
    const auto n = static_cast<std::size_t>(base_.vertex_count());
    const auto zero_based = static_cast<std::size_t>(derived - 1);
    return {GroupElement{zero_based / n}, static_cast<Vertex>(zero_based % n) + 1};
}

namespace {

GroupElement representative(const DerivedGraph& dg, std::size_t component) {
    for (GroupElement g : dg.base().group().elements())
        if (dg.component_of(dg.lift(g, 1)) == component) return g;
    throw Error(ErrorCode::InternalError, "component does not meet the fiber over vertex 1");
}

/// Checks that `map` (indexed by derived id - 1, 0 = unmapped) restricted to
/// `domain` is an edge-preserving bijection onto `target` inside `dst`.
bool is_isomorphism(const Digraph& src, const std::vector<Vertex>& domain, const Digraph& dst,
                    const std::vector<Vertex>& target, const std::vector<Vertex>& map) {
    if (domain.size() != target.size()) return false;
    std::set<Vertex> image;
    for (Vertex v : domain) image.insert(map[static_cast<std::size_t>(v - 1)]);
    if (image != std::set<Vertex>(target.begin(), target.end())) return false;
    std::set<std::pair<Vertex, Vertex>> mapped, expected;
    std::set<Vertex> in_domain(domain.begin(), domain.end());
    for (const Edge& e : src.edges())
        if (in_domain.contains(e.from))
            mapped.emplace(map[static_cast<std::size_t>(e.from - 1)], map[static_cast<std::size_t>(e.to - 1)]);
    for (const Edge& e : dst.edges())
        if (image.contains(e.from)) expected.emplace(e.from, e.to);
    return mapped == expected;
}

}  // namespace

std::vector<std::pair<Vertex, Vertex>> component_isomorphism(const DerivedGraph& dg, std::size_t i, std::size_t j) {
    const auto& comps = dg.components();
    if (i >= comps.size() || j >= comps.size())
        throw Error(ErrorCode::InvalidGraph, "component index out of range");
    const FiniteGroup& G = dg.base().group();
    const GroupElement gi = representative(dg, i);
    const GroupElement gj = representative(dg, j);
    const GroupElement shift = G.multiply(gj, G.inverse(gi));

    std::vector<Vertex> map(static_cast<std::size_t>(dg.graph().vertex_count()), 0);
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex v : comps[i]) {
        const LiftedVertex lv = dg.project(v);
        const Vertex image = dg.lift(G.multiply(shift, lv.element), lv.vertex);
        map[static_cast<std::size_t>(v - 1)] = image;
        out.emplace_back(v, image);
    }
    if (!is_isomorphism(dg.graph(), comps[i], dg.graph(), comps[j], map))
        throw Error(ErrorCode::InternalError, "sigma_ij is not a graph isomorphism");
    return out;
}

bool projection_is_isomorphism(const DerivedGraph& dg, std::size_t i) {
    const auto& comp = dg.components().at(i);
    const Digraph& base = dg.base().graph();
    std::vector<Vertex> map(static_cast<std::size_t>(dg.graph().vertex_count()), 0);
    for (Vertex v : comp) map[static_cast<std::size_t>(v - 1)] = dg.project(v).vertex;
    std::vector<Vertex> all(static_cast<std::size_t>(base.vertex_count()));
    for (Vertex v = 1; v <= base.vertex_count(); ++v) all[static_cast<std::size_t>(v - 1)] = v;
    return is_isomorphism(dg.graph(), comp, base, all, map);
}

RootConnectivityReport root_connectivity_report(const DerivedGraph& dg) {
    const VoltageGraph& vg = dg.base();
    const Connectivity base = classify_connectivity(vg.graph());
    if (!base.rooted) throw Error(ErrorCode::NotRooted, "the base graph is not rooted");
    RootConnectivityReport report;
    const Vertex r = base.roots.front();
    report.criterion_holds = directed_local_group(vg, r) == local_group(vg, r);
    for (const auto& comp : dg.components())
        report.components_rooted.push_back(classify_connectivity(induced_subgraph(dg.graph(), comp).graph).rooted);
    const bool all_rooted =
        std::all_of(report.components_rooted.begin(), report.components_rooted.end(), [](bool b) { return b; });
    report.consistent = report.criterion_holds == all_rooted;
    return report;
}

std::string to_dot(const DerivedGraph& dg) {
    static constexpr std::array<const char*, 12> kPalette = {
        "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
        "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
    std::ostringstream out;
    auto label = [&](Vertex d) {
        const LiftedVertex lv = dg.project(d);
        return "\"g" + std::to_string(lv.element.index) + "/v" + std::to_string(lv.vertex) + "\"";
    };
    out << "digraph derived {\n";
    out << "  node [style=filled];\n";
    for (Vertex d = 1; d <= dg.graph().vertex_count(); ++d) {
        const std::size_t c = dg.component_of(d);
        out << "  " << label(d) << " [fillcolor=\"" << kPalette[c % kPalette.size()] << "\", component=" << c
            << "];\n";
    }
    for (const Edge& e : dg.graph().edges()) out << "  " << label(e.from) << " -> " << label(e.to) << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace gclust
