#include "gclust/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "gclust/error.hpp"

namespace gclust {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v - 1); }

}  // namespace

Digraph::Digraph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 0) throw Error(ErrorCode::InvalidGraph, "negative vertex count");
    out_.resize(static_cast<std::size_t>(n_));
    in_.resize(static_cast<std::size_t>(n_));
    std::set<std::pair<Vertex, Vertex>> seen;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const auto [from, to] = edges_[e];
        if (!has_vertex(from) || !has_vertex(to))
            throw Error(ErrorCode::InvalidGraph,
                        "edge " + std::to_string(from) + "->" + std::to_string(to) + " has an unknown endpoint");
        if (from == to) throw Error(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(from));
        if (!seen.emplace(from, to).second)
            throw Error(ErrorCode::InvalidGraph,
                        "duplicate edge " + std::to_string(from) + "->" + std::to_string(to));
        out_[idx(from)].push_back(e);
        in_[idx(to)].push_back(e);
    }
}

std::optional<EdgeId> Digraph::find_edge(Vertex from, Vertex to) const {
    if (!has_vertex(from) || !has_vertex(to)) return std::nullopt;
    for (EdgeId e : out_[idx(from)])
        if (edges_[e].to == to) return e;
    return std::nullopt;
}

std::vector<std::vector<Vertex>> weak_components(const Digraph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 1; s <= g.vertex_count(); ++s) {
        if (seen[idx(s)]) continue;
        std::vector<Vertex> comp{s};
        seen[idx(s)] = 1;
        for (std::size_t next = 0; next < comp.size(); ++next) {
            const Vertex v = comp[next];
            auto visit = [&](Vertex u) {
                if (!seen[idx(u)]) {
                    seen[idx(u)] = 1;
                    comp.push_back(u);
                }
            };
            for (EdgeId e : g.out_edges(v)) visit(g.edge(e).to);
            for (EdgeId e : g.in_edges(v)) visit(g.edge(e).from);
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

Connectivity classify_connectivity(const Digraph& g) {
    const auto n = static_cast<std::size_t>(g.vertex_count());
    Connectivity result;
    if (n == 0) return result;

    // Iterative Tarjan.
    constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<Vertex>> sccs;
    std::size_t counter = 0;
    struct Frame {
        std::size_t v;
        std::size_t next_edge;
    };
    std::vector<Frame> call;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& out = g.out_edges(static_cast<Vertex>(f.v + 1));
            if (f.next_edge < out.size()) {
                const std::size_t w = idx(g.edge(out[f.next_edge++]).to);
                if (index[w] == kUnvisited) {
                    index[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[w]);
                }
                continue;
            }
            const std::size_t v = f.v;
            call.pop_back();
            if (!call.empty()) lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
            if (lowlink[v] == index[v]) {
                std::vector<Vertex> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(static_cast<Vertex>(w + 1));
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                sccs.push_back(std::move(comp));
            }
        }
    }
    std::sort(sccs.begin(), sccs.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

    result.component_of.assign(n, 0);
    for (std::size_t c = 0; c < sccs.size(); ++c)
        for (Vertex v : sccs[c]) result.component_of[idx(v)] = c;

    std::set<std::pair<Vertex, Vertex>> dag_edges;
    for (const Edge& e : g.edges()) {
        const std::size_t a = result.component_of[idx(e.from)];
        const std::size_t b = result.component_of[idx(e.to)];
        if (a != b) dag_edges.emplace(static_cast<Vertex>(a + 1), static_cast<Vertex>(b + 1));
    }
    std::vector<Edge> cond;
    for (auto [a, b] : dag_edges) cond.push_back({a, b});
    result.condensation = Digraph(static_cast<int>(sccs.size()), std::move(cond));

    std::vector<std::size_t> sinks;
    for (std::size_t c = 0; c < sccs.size(); ++c)
        if (result.condensation.out_edges(static_cast<Vertex>(c + 1)).empty()) sinks.push_back(c);
    result.rooted = sinks.size() == 1;
    if (result.rooted) result.roots = sccs[sinks.front()];
    result.strong = sccs.size() == 1;
    result.weak = weak_components(g).size() == 1;
    result.sccs = std::move(sccs);
    return result;
}

InducedSubgraph induced_subgraph(const Digraph& g, const std::vector<Vertex>& subset) {
    if (subset.empty()) throw Error(ErrorCode::EmptySubset, "induced subgraph needs at least one vertex");
    InducedSubgraph out;
    out.old_to_new.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : subset) {
        if (!g.has_vertex(v)) throw Error(ErrorCode::InvalidGraph, "vertex " + std::to_string(v) + " not in graph");
        out.old_to_new[idx(v)] = 1;
    }
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        if (out.old_to_new[idx(v)]) {
            out.new_to_old.push_back(v);
            out.old_to_new[idx(v)] = static_cast<Vertex>(out.new_to_old.size());
        }
    }
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const Vertex a = out.old_to_new[idx(ed.from)];
        const Vertex b = out.old_to_new[idx(ed.to)];
        if (a != 0 && b != 0) {
            edges.push_back({a, b});
            out.edge_origin.push_back(e);
        }
    }
    out.graph = Digraph(static_cast<int>(out.new_to_old.size()), std::move(edges));
    return out;
}

std::size_t Walk::forward_length() const {
    return static_cast<std::size_t>(std::count(directions.begin(), directions.end(), Direction::Forward));
}

bool Walk::is_semi_cycle() const {
    if (vertices.empty()) return false;
    const std::size_t last = is_closed() && vertices.size() > 1 ? vertices.size() - 1 : vertices.size();
    std::set<Vertex> seen(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(last));
    return seen.size() == last;
}

Walk Walk::inverse() const {
    Walk out{{vertices.rbegin(), vertices.rend()}, {}};
    for (auto it = directions.rbegin(); it != directions.rend(); ++it)
        out.directions.push_back(*it == Direction::Forward ? Direction::Backward : Direction::Forward);
    return out;
}

Walk Walk::concat(const Walk& other) const {
    if (end() != other.start()) throw Error(ErrorCode::InvalidWalk, "concatenated walks do not meet");
    Walk out = *this;
    out.vertices.insert(out.vertices.end(), other.vertices.begin() + 1, other.vertices.end());
    out.directions.insert(out.directions.end(), other.directions.begin(), other.directions.end());
    return out;
}

std::vector<EdgeId> walk_edges(const Digraph& g, const Walk& w) {
    if (w.vertices.empty() || w.vertices.size() != w.directions.size() + 1)
        throw Error(ErrorCode::InvalidWalk, "walk must have one more vertex than steps");
    if (!g.has_vertex(w.vertices.front()))
        throw Error(ErrorCode::InvalidWalk, "vertex " + std::to_string(w.vertices.front()) + " not in graph");
    std::vector<EdgeId> out;
    out.reserve(w.length());
    for (std::size_t j = 0; j < w.length(); ++j) {
        const Vertex a = w.vertices[j];
        const Vertex b = w.vertices[j + 1];
        auto e = w.directions[j] == Direction::Forward ? g.find_edge(a, b) : g.find_edge(b, a);
        if (!e)
            throw Error(ErrorCode::InvalidWalk, "step " + std::to_string(j + 1) + " between " + std::to_string(a) +
                                                    " and " + std::to_string(b) + " has no matching edge");
        out.push_back(*e);
    }
    return out;
}

bool is_valid_walk(const Digraph& g, const Walk& w) {
    try {
        walk_edges(g, w);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::vector<CycleReduction> cycle_reduction_chain(const Walk& w) {
    if (w.vertices.empty() || w.vertices.size() != w.directions.size() + 1)
        throw Error(ErrorCode::InvalidWalk, "walk must have one more vertex than steps");
    if (!w.is_closed()) throw Error(ErrorCode::NotClosed, "cycle reduction needs a closed semi-walk");

    std::vector<CycleReduction> chain;
    Walk current = w;
    for (;;) {
        // The earliest position m closing a repetition with some j >= 1 (0-based);
        // everything strictly between j and m is then repetition-free.
        std::optional<std::pair<std::size_t, std::size_t>> cut;
        for (std::size_t m = 2; m < current.vertices.size() && !cut; ++m)
            for (std::size_t j = m - 1; j >= 1; --j)
                if (current.vertices[j] == current.vertices[m]) {
                    cut = {j, m};
                    break;
                }
        if (!cut) return chain;
        const auto [j, m] = *cut;
        CycleReduction step;
        step.removed.vertices.assign(current.vertices.begin() + static_cast<std::ptrdiff_t>(j),
                                     current.vertices.begin() + static_cast<std::ptrdiff_t>(m) + 1);
        step.removed.directions.assign(current.directions.begin() + static_cast<std::ptrdiff_t>(j),
                                       current.directions.begin() + static_cast<std::ptrdiff_t>(m));
        step.remaining = current;
        step.remaining.vertices.erase(step.remaining.vertices.begin() + static_cast<std::ptrdiff_t>(j),
                                      step.remaining.vertices.begin() + static_cast<std::ptrdiff_t>(m));
        step.remaining.directions.erase(step.remaining.directions.begin() + static_cast<std::ptrdiff_t>(j),
                                        step.remaining.directions.begin() + static_cast<std::ptrdiff_t>(m));
        current = step.remaining;
        chain.push_back(std::move(step));
    }
}

}  // namespace gclust
