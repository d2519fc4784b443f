#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace gclust {

/// Vertices are numbered 1..n throughout the public API.
using Vertex = int;
using EdgeId = std::size_t;

struct Edge {
    Vertex from = 0;
    Vertex to = 0;
    bool operator==(const Edge&) const = default;
};

/// Simple digraph: no self-loops, no duplicate edges. Edge ids follow the
/// order in which edges were supplied.
class Digraph {
public:
    Digraph() = default;
    Digraph(int vertex_count, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    bool has_vertex(Vertex v) const { return v >= 1 && v <= n_; }

    const std::vector<EdgeId>& out_edges(Vertex v) const { return out_.at(static_cast<std::size_t>(v - 1)); }
    const std::vector<EdgeId>& in_edges(Vertex v) const { return in_.at(static_cast<std::size_t>(v - 1)); }
    std::optional<EdgeId> find_edge(Vertex from, Vertex to) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
    std::vector<std::vector<EdgeId>> in_;
};

struct Connectivity {
    bool weak = false;
    bool strong = false;
    bool rooted = false;
    /// Vertices of the unique sink component when rooted, else empty.
    std::vector<Vertex> roots;
    /// Strongly connected components, each sorted, ordered by smallest member.
    std::vector<std::vector<Vertex>> sccs;
    /// component_of[v - 1] = index into sccs.
    std::vector<std::size_t> component_of;
    /// DAG on sccs.size() vertices; vertex c + 1 is sccs[c].
    Digraph condensation;
};

/// Tarjan SCCs plus weak connectivity; rooted iff the condensation has one sink.
Connectivity classify_connectivity(const Digraph& g);

/// Weakly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> weak_components(const Digraph& g);

struct InducedSubgraph {
    Digraph graph;
    /// new_to_old[v' - 1] = original label of v'.
    std::vector<Vertex> new_to_old;
    /// old_to_new[v - 1] = new label, or 0 when v was dropped.
    std::vector<Vertex> old_to_new;
    /// Original id of each kept edge, parallel to graph.edges().
    std::vector<EdgeId> edge_origin;
};

/// Relabels the kept vertices 1..|V'| in increasing original order.
InducedSubgraph induced_subgraph(const Digraph& g, const std::vector<Vertex>& subset);

enum class Direction { Forward, Backward };

/// Semi-walk v_1 a_1 v_2 ... v_n with an explicit direction per step.
struct Walk {
    std::vector<Vertex> vertices;
    std::vector<Direction> directions;

    static Walk trivial(Vertex v) { return Walk{{v}, {}}; }

    std::size_t length() const { return directions.size(); }
    std::size_t forward_length() const;
    std::size_t backward_length() const { return length() - forward_length(); }
    Vertex start() const { return vertices.front(); }
    Vertex end() const { return vertices.back(); }
    bool is_closed() const { return start() == end(); }
    bool is_directed() const { return backward_length() == 0; }
    /// No repeated vertex other than start == end.
    bool is_semi_cycle() const;

    Walk inverse() const;
    /// this followed by other; requires end() == other.start().
    Walk concat(const Walk& other) const;

    bool operator==(const Walk&) const = default;
};

/// Edge used by each step; throws InvalidWalk if a step has no matching edge.
std::vector<EdgeId> walk_edges(const Digraph& g, const Walk& w);
bool is_valid_walk(const Digraph& g, const Walk& w);

struct CycleReduction {
    Walk removed;
    Walk remaining;
};

/// Chain of cycle reductions of a closed semi-walk; the last `remaining`
/// (or w itself when the chain is empty) is a semi-cycle.
std::vector<CycleReduction> cycle_reduction_chain(const Walk& w);

}  // namespace gclust
