#include "gclust/voltage.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "gclust/error.hpp"

namespace gclust {

VoltageGraph::VoltageGraph(Digraph graph, std::shared_ptr<const FiniteGroup> group, std::vector<GroupElement> rho)
    : graph_(std::move(graph)), group_(std::move(group)), rho_(std::move(rho)) {
    if (!group_) throw Error(ErrorCode::InvalidSpec, "voltage graph needs a group");
    if (rho_.size() != graph_.edge_count())
        throw Error(ErrorCode::InvalidSpec, "voltage map covers " + std::to_string(rho_.size()) + " edges, graph has " +
                                                std::to_string(graph_.edge_count()));
    for (GroupElement g : rho_)
        if (g.index >= group_->order()) throw Error(ErrorCode::ForeignElement, "voltage outside the group");
}

GroupElement net_voltage(const VoltageGraph& vg, const Walk& w) {
    const auto edges = walk_edges(vg.graph(), w);
    const FiniteGroup& G = vg.group();
    GroupElement acc = G.identity();
    for (std::size_t j = 0; j < edges.size(); ++j) {
        const GroupElement g = vg.voltage(edges[j]);
        acc = G.multiply(acc, w.directions[j] == Direction::Forward ? g : G.inverse(g));
    }
    return acc;
}

bool StateSet::insert(GroupElement g, Vertex v) {
    char& f = flags_[slot(g, v)];
    if (f) return false;
    f = 1;
    ++count_;
    return true;
}

std::vector<GroupElement> StateSet::at(Vertex v) const {
    std::vector<GroupElement> out;
    for (std::size_t g = 0; g < order_; ++g)
        if (contains(GroupElement{g}, v)) out.push_back(GroupElement{g});
    return out;
}

StateSet reachable_states(const VoltageGraph& vg, Vertex start, WalkMode mode) {
    const Digraph& g = vg.graph();
    const FiniteGroup& G = vg.group();
    if (!g.has_vertex(start)) throw Error(ErrorCode::InvalidGraph, "vertex " + std::to_string(start) + " not in graph");
    StateSet states(G.order(), g.vertex_count());
    std::vector<std::pair<GroupElement, Vertex>> queue{{G.identity(), start}};
    states.insert(G.identity(), start);
    for (std::size_t next = 0; next < queue.size(); ++next) {
        const auto [elem, v] = queue[next];
        for (EdgeId e : g.out_edges(v)) {
            const GroupElement h = G.multiply(elem, vg.voltage(e));
            if (states.insert(h, g.edge(e).to)) queue.emplace_back(h, g.edge(e).to);
        }
        if (mode == WalkMode::Semi) {
            for (EdgeId e : g.in_edges(v)) {
                const GroupElement h = G.multiply(elem, G.inverse(vg.voltage(e)));
                if (states.insert(h, g.edge(e).from)) queue.emplace_back(h, g.edge(e).from);
            }
        }
    }
    return states;
}

namespace {

Subgroup closed_walk_group(const VoltageGraph& vg, Vertex v, WalkMode mode) {
    auto sub = vg.group().as_subgroup(reachable_states(vg, v, mode).at(v));
    if (!sub)
        throw Error(ErrorCode::InternalError,
                    "closed-walk net voltages at vertex " + std::to_string(v) + " are not a subgroup");
    return *sub;
}

void require_weakly_connected(const VoltageGraph& vg) {
    if (vg.vertex_count() == 0 || weak_components(vg.graph()).size() != 1)
        throw Error(ErrorCode::NotWeaklyConnected, "the voltage graph is not weakly connected");
}

}  // namespace

Subgroup local_group(const VoltageGraph& vg, Vertex v) { return closed_walk_group(vg, v, WalkMode::Semi); }

Subgroup directed_local_group(const VoltageGraph& vg, Vertex v) {
    return closed_walk_group(vg, v, WalkMode::Directed);
}

NetSet net_set(const VoltageGraph& vg, Vertex from, Vertex to, WalkMode mode) {
    if (!vg.graph().has_vertex(to)) throw Error(ErrorCode::InvalidGraph, "vertex " + std::to_string(to) + " not in graph");
    const StateSet semi = reachable_states(vg, from, WalkMode::Semi);
    NetSet out{from, to, mode, semi.at(to)};
    if (out.elements.empty())
        throw Error(ErrorCode::NotWeaklyConnected,
                    "no semi-walk from " + std::to_string(from) + " to " + std::to_string(to));
    if (mode == WalkMode::Directed) out.elements = reachable_states(vg, from, WalkMode::Directed).at(to);
    return out;
}

std::vector<GroupElement> net_set_all(const VoltageGraph& vg, Vertex from) {
    const StateSet semi = reachable_states(vg, from, WalkMode::Semi);
    std::vector<GroupElement> out;
    for (std::size_t g = 0; g < vg.group().order(); ++g) {
        for (Vertex v = 1; v <= vg.vertex_count(); ++v) {
            if (semi.contains(GroupElement{g}, v)) {
                out.push_back(GroupElement{g});
                break;
            }
        }
    }
    return out;
}

bool is_structurally_balanced(const VoltageGraph& vg) {
    require_weakly_connected(vg);
    for (Vertex v = 1; v <= vg.vertex_count(); ++v)
        if (!local_group(vg, v).is_trivial()) return false;
    return true;
}

bool is_nondegenerate(const VoltageGraph& vg) {
    require_weakly_connected(vg);
    return net_set_all(vg, 1).size() == vg.group().order();
}

std::vector<std::vector<Vertex>> adapted_partition(const VoltageGraph& vg) {
    require_weakly_connected(vg);
    const int n = vg.vertex_count();
    const GroupElement one = vg.group().identity();

    // Directly from the definition: the block of v is every u reached by a
    // semi-walk from v with trivial net voltage.
    std::vector<std::vector<Vertex>> blocks;
    std::vector<char> assigned(static_cast<std::size_t>(n), 0);
    for (Vertex v = 1; v <= n; ++v) {
        if (assigned[static_cast<std::size_t>(v - 1)]) continue;
        const StateSet states = reachable_states(vg, v, WalkMode::Semi);
        std::vector<Vertex> block;
        for (Vertex u = 1; u <= n; ++u) {
            if (states.contains(one, u)) {
                block.push_back(u);
                assigned[static_cast<std::size_t>(u - 1)] = 1;
            }
        }
        blocks.push_back(std::move(block));
    }

    // Cross-check: u ~ w iff Net(v_1, u) == Net(v_1, w). Net sets from v_1 are
    // right cosets of G_1, so the smallest member identifies the set.
    const StateSet base = reachable_states(vg, 1, WalkMode::Semi);
    std::map<std::vector<GroupElement>, std::vector<Vertex>> by_net;
    for (Vertex u = 1; u <= n; ++u) by_net[base.at(u)].push_back(u);
    std::vector<std::vector<Vertex>> coset_blocks;
    for (auto& [net, members] : by_net) coset_blocks.push_back(members);
    std::sort(coset_blocks.begin(), coset_blocks.end());
    if (coset_blocks != blocks)
        throw Error(ErrorCode::InternalError, "adapted partition disagrees with the Net-set coset test");
    return blocks;
}

AnalysisReport analyze(const VoltageGraph& vg) {
    require_weakly_connected(vg);
    AnalysisReport report;
    report.connectivity = classify_connectivity(vg.graph());
    for (Vertex v = 1; v <= vg.vertex_count(); ++v) {
        report.local_groups.push_back(local_group(vg, v));
        report.directed_local_groups.push_back(directed_local_group(vg, v));
    }
    report.balanced = std::all_of(report.local_groups.begin(), report.local_groups.end(),
                                  [](const Subgroup& h) { return h.is_trivial(); });
    const std::size_t net_all = net_set_all(vg, 1).size();
    report.nondegenerate = net_all == vg.group().order();
    report.adapted_partition = adapted_partition(vg);
    report.predicted_cluster_count = net_all / report.local_groups.front().order();
    if (report.predicted_cluster_count != report.adapted_partition.size())
        throw Error(ErrorCode::InternalError, "cluster count disagrees with the adapted partition");
    if (report.connectivity.rooted) {
        const auto r = static_cast<std::size_t>(report.connectivity.roots.front() - 1);
        report.root_condition_holds = report.directed_local_groups[r] == report.local_groups[r];
    }
    return report;
}

VoltageGraph construct_balanced_nondegenerate(const Digraph& g, std::shared_ptr<const FiniteGroup> group,
                                              const std::vector<GroupElement>& eta) {
    if (!group) throw Error(ErrorCode::InvalidSpec, "construction needs a group");
    if (g.vertex_count() == 0 || weak_components(g).size() != 1)
        throw Error(ErrorCode::NotWeaklyConnected, "the graph is not weakly connected");
    const FiniteGroup& G = *group;
    if (static_cast<std::size_t>(g.vertex_count()) < G.order())
        throw Error(ErrorCode::Infeasible, "need |V| >= |G| (" + std::to_string(g.vertex_count()) + " < " +
                                               std::to_string(G.order()) + ")");
    if (eta.size() != static_cast<std::size_t>(g.vertex_count()))
        throw Error(ErrorCode::InvalidSpec, "eta must assign one element per vertex");
    std::vector<char> hit(G.order(), 0);
    for (GroupElement e : eta) {
        if (e.index >= G.order()) throw Error(ErrorCode::ForeignElement, "eta value outside the group");
        hit[e.index] = 1;
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
        throw Error(ErrorCode::NotSurjective, "eta does not cover every group element");

    std::vector<GroupElement> rho;
    rho.reserve(g.edge_count());
    for (const Edge& e : g.edges())
        rho.push_back(G.multiply(G.inverse(eta[static_cast<std::size_t>(e.from - 1)]),
                                 eta[static_cast<std::size_t>(e.to - 1)]));
    VoltageGraph vg(g, std::move(group), std::move(rho));
    if (!is_structurally_balanced(vg) || !is_nondegenerate(vg))
        throw Error(ErrorCode::InternalError, "construction is not balanced and nondegenerate");
    return vg;
}

VoltageGraph construct_balanced_nondegenerate(const Digraph& g, std::shared_ptr<const FiniteGroup> group,
                                              std::uint64_t seed) {
    if (!group) throw Error(ErrorCode::InvalidSpec, "construction needs a group");
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    const std::size_t order = group->order();
    if (n < order)
        throw Error(ErrorCode::Infeasible,
                    "need |V| >= |G| (" + std::to_string(n) + " < " + std::to_string(order) + ")");
    // Uniform over surjections would need rejection sampling whose acceptance
    // rate collapses as |V| approaches |G|; instead place a random permutation
    // of G on a random set of |G| vertices and fill the rest uniformly.
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> vertices(n);
    std::iota(vertices.begin(), vertices.end(), 0);
    std::shuffle(vertices.begin(), vertices.end(), rng);
    std::vector<std::size_t> elems(order);
    std::iota(elems.begin(), elems.end(), 0);
    std::shuffle(elems.begin(), elems.end(), rng);
    std::uniform_int_distribution<std::size_t> pick(0, order - 1);
    std::vector<GroupElement> eta(n);
    for (std::size_t i = 0; i < n; ++i)
        eta[vertices[i]] = GroupElement{i < order ? elems[i] : pick(rng)};
    return construct_balanced_nondegenerate(g, std::move(group), eta);
}

BigInt stirling2(unsigned n, unsigned k) {
    BigInt sum = 0;
    BigInt binom = 1;  // C(k, i)
    for (unsigned i = 0; i <= k; ++i) {
        BigInt term = binom * boost::multiprecision::pow(BigInt(i), n);
        if ((k - i) % 2 == 0)
            sum += term;
        else
            sum -= term;
        binom = binom * (k - i) / (i + 1);
    }
    BigInt factorial = 1;
    for (unsigned i = 2; i <= k; ++i) factorial *= i;
    if (sum % factorial != 0) throw Error(ErrorCode::InternalError, "alternating sum not divisible by k!");
    return sum / factorial;
}

BigInt count_balanced_nondegenerate(unsigned vertex_count, unsigned group_order) {
    if (group_order == 0) throw Error(ErrorCode::Infeasible, "group order must be at least 1");
    if (vertex_count < group_order)
        throw Error(ErrorCode::Infeasible, "need |V| >= |G| (" + std::to_string(vertex_count) + " < " +
                                               std::to_string(group_order) + ")");
    BigInt factorial = 1;
    for (unsigned i = 2; i < group_order; ++i) factorial *= i;
    return stirling2(vertex_count, group_order) * factorial;
}

}  // namespace gclust
