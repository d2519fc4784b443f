#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gclust/graph.hpp"
#include "gclust/voltage.hpp"

namespace gclust {

/// Vertex [g, v] of a derived graph.
struct LiftedVertex {
    GroupElement element;
    Vertex vertex = 0;
    auto operator<=>(const LiftedVertex&) const = default;
};

/// The covering graph on G x V with [g, v_i] -> [g rho(e_ij), v_j].
/// Derived vertex ids are g * |V| + v, so id order is lexicographic (g, v).
class DerivedGraph {
public:
    explicit DerivedGraph(VoltageGraph base);

    const VoltageGraph& base() const { return base_; }
    const Digraph& graph() const { return graph_; }
    Vertex lift(GroupElement g, Vertex v) const;
    LiftedVertex project(Vertex derived) const;
    /// Base edge each derived edge covers, parallel to graph().edges().
    const std::vector<EdgeId>& edge_origin() const { return edge_origin_; }

    /// Weak components (derived ids, sorted), ordered by smallest member.
    const std::vector<std::vector<Vertex>>& components() const { return components_; }
    std::size_t component_of(Vertex derived) const { return component_of_.at(static_cast<std::size_t>(derived - 1)); }

private:
    VoltageGraph base_;
    Digraph graph_;
    std::vector<EdgeId> edge_origin_;
    std::vector<std::vector<Vertex>> components_;
    std::vector<std::size_t> component_of_;
};

/// sigma_ij restricted to component i, as (source, image) pairs in source order.
/// Representatives are the smallest-index elements g_i, g_j with [g, v_1] in
/// components i and j. Verified to be an edge-preserving bijection.
std::vector<std::pair<Vertex, Vertex>> component_isomorphism(const DerivedGraph& dg, std::size_t i, std::size_t j);

/// True if the projection [g, v] -> v maps component i isomorphically onto the base graph.
bool projection_is_isomorphism(const DerivedGraph& dg, std::size_t i);

struct RootConnectivityReport {
    /// G*_r == G_r at the smallest root r of the base graph.
    bool criterion_holds = false;
    std::vector<bool> components_rooted;
    /// criterion_holds == every component rooted.
    bool consistent = false;
};

RootConnectivityReport root_connectivity_report(const DerivedGraph& dg);

/// Graphviz DOT text; nodes "g<idx>/v<idx>", filled by component.
std::string to_dot(const DerivedGraph& dg);

}  // namespace gclust
