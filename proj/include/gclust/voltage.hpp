#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gclust/graph.hpp"
#include "gclust/group.hpp"

namespace gclust {

/// A digraph together with a group element on every edge.
class VoltageGraph {
public:
    VoltageGraph(Digraph graph, std::shared_ptr<const FiniteGroup> group, std::vector<GroupElement> rho);

    const Digraph& graph() const { return graph_; }
    const FiniteGroup& group() const { return *group_; }
    const std::shared_ptr<const FiniteGroup>& group_ptr() const { return group_; }
    const std::vector<GroupElement>& rho() const { return rho_; }
    GroupElement voltage(EdgeId e) const { return rho_.at(e); }
    int vertex_count() const { return graph_.vertex_count(); }

private:
    Digraph graph_;
    std::shared_ptr<const FiniteGroup> group_;
    std::vector<GroupElement> rho_;
};

enum class WalkMode { Directed, Semi };

/// Net voltage of a (semi-)walk; backward steps contribute inverses.
GroupElement net_voltage(const VoltageGraph& vg, const Walk& w);

/// Set of product states (g, v) reachable from (identity, start).
class StateSet {
public:
    StateSet(std::size_t group_order, int vertex_count)
        : order_(group_order), n_(vertex_count), flags_(group_order * static_cast<std::size_t>(vertex_count), 0) {}

    bool contains(GroupElement g, Vertex v) const { return flags_[slot(g, v)] != 0; }
    bool insert(GroupElement g, Vertex v);
    /// Group elements g with (g, v) in the set, sorted.
    std::vector<GroupElement> at(Vertex v) const;
    std::size_t size() const { return count_; }
    std::size_t group_order() const { return order_; }
    int vertex_count() const { return n_; }

    bool operator==(const StateSet&) const = default;

private:
    std::size_t slot(GroupElement g, Vertex v) const {
        return g.index * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v - 1);
    }
    std::size_t order_;
    int n_;
    std::vector<char> flags_;
    std::size_t count_ = 0;
};

StateSet reachable_states(const VoltageGraph& vg, Vertex start, WalkMode mode);

/// G_i: net voltages of closed semi-walks at v.
Subgroup local_group(const VoltageGraph& vg, Vertex v);
/// G*_i: net voltages of closed walks at v.
Subgroup directed_local_group(const VoltageGraph& vg, Vertex v);

struct NetSet {
    Vertex from = 0;
    Vertex to = 0;
    WalkMode mode = WalkMode::Semi;
    std::vector<GroupElement> elements;  // sorted
};

NetSet net_set(const VoltageGraph& vg, Vertex from, Vertex to, WalkMode mode);
/// Net(v, V): union of the semi-walk Net sets out of v, sorted.
std::vector<GroupElement> net_set_all(const VoltageGraph& vg, Vertex from);

bool is_structurally_balanced(const VoltageGraph& vg);
bool is_nondegenerate(const VoltageGraph& vg);

/// Classes of "joined by a semi-walk with trivial net voltage", each sorted,
/// ordered by smallest vertex.
std::vector<std::vector<Vertex>> adapted_partition(const VoltageGraph& vg);

struct AnalysisReport {
    Connectivity connectivity;
    std::vector<Subgroup> local_groups;           // indexed by v - 1
    std::vector<Subgroup> directed_local_groups;  // indexed by v - 1
    bool balanced = false;
    bool nondegenerate = false;
    std::vector<std::vector<Vertex>> adapted_partition;
    /// |Net(v_1, V)| / |G_1|
    std::size_t predicted_cluster_count = 0;
    /// G*_r == G_r at a root r; empty when the graph is not rooted.
    std::optional<bool> root_condition_holds;
};

/// Requires weak connectivity (NotWeaklyConnected otherwise).
AnalysisReport analyze(const VoltageGraph& vg);

/// rho(e_ij) = eta(v_i)^-1 eta(v_j) for a surjective eta (indexed by v - 1).
VoltageGraph construct_balanced_nondegenerate(const Digraph& g, std::shared_ptr<const FiniteGroup> group,
                                              const std::vector<GroupElement>& eta);
/// Same construction with a seeded uniformly random surjective eta.
VoltageGraph construct_balanced_nondegenerate(const Digraph& g, std::shared_ptr<const FiniteGroup> group,
                                              std::uint64_t seed);

using BigInt = boost::multiprecision::cpp_int;

/// Stirling number of the second kind via the alternating sum, exact.
BigInt stirling2(unsigned n, unsigned k);
/// S(nv, k) * (k - 1)!: number of balanced and nondegenerate voltage maps on
/// a weakly connected graph with nv vertices over a group of order k.
BigInt count_balanced_nondegenerate(unsigned vertex_count, unsigned group_order);

}  // namespace gclust
