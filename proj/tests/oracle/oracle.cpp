#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "gclust/error.hpp"

namespace gclust::oracle {

namespace {

using State = std::pair<std::string, Vertex>;

}  // namespace

std::vector<GroupElement> enumerate_net_sets(const VoltageGraph& vg, Vertex from, Vertex to, WalkMode mode,
                                             std::size_t max_len) {
    const FiniteGroup& G = vg.group();
    const Digraph& g = vg.graph();
    const std::size_t bound = G.order() * static_cast<std::size_t>(g.vertex_count());
    if (max_len < bound)
        throw Error(ErrorCode::InsufficientBound,
                    "max_len " + std::to_string(max_len) + " below |G||V| = " + std::to_string(bound));

    std::map<State, Matrix> seen;
    std::vector<std::pair<Matrix, Vertex>> frontier;
    const Matrix id = Matrix::identity(G.dimension());
    seen.emplace(State{canonical_key(id), from}, id);
    frontier.emplace_back(id, from);

    for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<std::pair<Matrix, Vertex>> next;
        auto visit = [&](const Matrix& m, Vertex v) {
            if (seen.emplace(State{canonical_key(m), v}, m).second) next.emplace_back(m, v);
        };
        for (const auto& [m, v] : frontier) {
            for (EdgeId id_e = 0; id_e < g.edge_count(); ++id_e) {
                const Edge& e = g.edge(id_e);
                const Matrix& r = G.matrix(vg.voltage(id_e));
                if (e.from == v) visit(m * r, e.to);
                if (mode == WalkMode::Semi && e.to == v) visit(m * r.transpose(), e.from);
            }
        }
        frontier = std::move(next);
    }

    std::vector<GroupElement> out;
    for (const auto& [state, m] : seen) {
        if (state.second != to) continue;
        auto element = G.find(m);
        if (!element) throw Error(ErrorCode::InternalError, "walk product left the group");
        out.push_back(*element);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool oracle_balanced(const VoltageGraph& vg) {
    const std::size_t len = vg.group().order() * static_cast<std::size_t>(vg.vertex_count());
    for (Vertex v = 1; v <= vg.vertex_count(); ++v)
        if (enumerate_net_sets(vg, v, v, WalkMode::Semi, len).size() != 1) return false;
    return true;
}

bool oracle_nondegenerate(const VoltageGraph& vg) {
    const std::size_t len = vg.group().order() * static_cast<std::size_t>(vg.vertex_count());
    std::set<GroupElement> all;
    for (Vertex v = 1; v <= vg.vertex_count(); ++v)
        for (GroupElement x : enumerate_net_sets(vg, 1, v, WalkMode::Semi, len)) all.insert(x);
    return all.size() == vg.group().order();
}

void enumerate_voltage_maps(const Digraph& g, const std::shared_ptr<const FiniteGroup>& group,
                            const std::function<void(const VoltageMapRecord&)>& visit) {
    const std::size_t order = group->order();
    double total = 1.0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) total *= static_cast<double>(order);
    if (total > 1e6) throw Error(ErrorCode::TooLarge, "|G|^|E| exceeds 1e6");

    VoltageMapRecord rec;
    rec.rho.assign(g.edge_count(), GroupElement{0});
    while (true) {
        const VoltageGraph vg(g, group, rec.rho);
        rec.balanced = is_structurally_balanced(vg);
        rec.nondegenerate = is_nondegenerate(vg);
        visit(rec);
        std::size_t e = 0;
        while (e < rec.rho.size() && rec.rho[e].index + 1 == order) rec.rho[e++].index = 0;
        if (e == rec.rho.size()) break;
        ++rec.rho[e].index;
    }
}

std::uint64_t stirling2_bruteforce(unsigned n, unsigned k) {
    if (k == 0) return n == 0 ? 1 : 0;
    std::vector<unsigned> f(n, 0);
    std::uint64_t surjections = 0;
    while (true) {
        std::vector<bool> hit(k, false);
        for (unsigned x : f) hit[x] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) ++surjections;
        unsigned i = 0;
        while (i < n && f[i] + 1 == k) f[i++] = 0;
        if (i == n) break;
        ++f[i];
    }
    std::uint64_t factorial = 1;
    for (unsigned i = 2; i <= k; ++i) factorial *= i;
    return surjections / factorial;
}

std::vector<std::shared_ptr<const FiniteGroup>> small_groups(std::size_t max_order) {
    std::vector<std::shared_ptr<const FiniteGroup>> out;
    auto add = [&](const GroupSpec& spec) {
        auto G = std::make_shared<const FiniteGroup>(standard_point_group(spec));
        if (G->order() <= max_order) out.push_back(std::move(G));
    };
    add(SignGroupSpec{});
    for (int n = 2; n <= static_cast<int>(max_order); ++n) add(CyclicGroupSpec{n});
    for (int n = 1; 2 * n <= static_cast<int>(max_order); ++n) add(DihedralGroupSpec{n, 1.0, 0.0});
    // Order 6 in dimension 3: cyclic coordinate permutation and -I.
    add(GeneratorGroupSpec{3,
                           {Matrix(3, {0, 0, 1, 1, 0, 0, 0, 1, 0}), Matrix(3, {-1, 0, 0, 0, -1, 0, 0, 0, -1})},
                           {"perm", "neg"}});
    return out;
}

namespace {

void add_extra_edges(int n, double p, std::vector<Edge>& edges, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    for (Vertex a = 1; a <= n; ++a)
        for (Vertex b = 1; b <= n; ++b) {
            if (a == b) continue;
            const Edge e{a, b};
            if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
            if (coin(rng)) edges.push_back(e);
        }
}

std::vector<Vertex> shuffled(int n, std::mt19937_64& rng) {
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

std::size_t below(std::size_t bound, std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

}  // namespace

Digraph random_strongly_connected(int n, double p, std::mt19937_64& rng) {
    const auto order = shuffled(n, rng);
    std::vector<Edge> edges;
    if (n >= 2)
        for (std::size_t i = 0; i < order.size(); ++i) edges.push_back({order[i], order[(i + 1) % order.size()]});
    add_extra_edges(n, p, edges, rng);
    return Digraph(n, std::move(edges));
}

Digraph random_rooted(int n, double p, std::mt19937_64& rng) {
    const auto order = shuffled(n, rng);
    const std::size_t core = 1 + below(static_cast<std::size_t>(n), rng);
    std::vector<Edge> edges;
    if (core >= 2)
        for (std::size_t i = 0; i < core; ++i) edges.push_back({order[i], order[(i + 1) % core]});
    for (std::size_t i = core; i < order.size(); ++i) edges.push_back({order[i], order[below(i, rng)]});
    add_extra_edges(n, p, edges, rng);
    return Digraph(n, std::move(edges));
}

Digraph random_weakly_connected(int n, double p, std::mt19937_64& rng) {
    const auto order = shuffled(n, rng);
    std::vector<Edge> edges;
    std::bernoulli_distribution flip(0.5);
    for (std::size_t i = 1; i < order.size(); ++i) {
        const Vertex other = order[below(i, rng)];
        edges.push_back(flip(rng) ? Edge{order[i], other} : Edge{other, order[i]});
    }
    add_extra_edges(n, p, edges, rng);
    return Digraph(n, std::move(edges));
}

std::vector<GroupElement> random_voltages(const Digraph& g, const FiniteGroup& group, std::mt19937_64& rng) {
    std::vector<GroupElement> rho;
    for (std::size_t e = 0; e < g.edge_count(); ++e) rho.push_back(GroupElement{below(group.order(), rng)});
    return rho;
}

}  // namespace gclust::oracle
