#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "gclust/voltage.hpp"

namespace gclust::oracle {

/// Net voltages of all (semi-)walks from `from` to `to` with at most max_len
/// steps. Products are formed with plain matrix multiplication and compared by
/// canonical key, so the group's Cayley table is never consulted.
/// InsufficientBound when max_len < |G| * |V|.
std::vector<GroupElement> enumerate_net_sets(const VoltageGraph& vg, Vertex from, Vertex to, WalkMode mode,
                                             std::size_t max_len);

struct VoltageMapRecord {
    std::vector<GroupElement> rho;
    bool balanced = false;
    bool nondegenerate = false;
};

/// Calls visit once per voltage map in lexicographic order of element indices.
/// TooLarge when |G|^|E| > 1e6.
void enumerate_voltage_maps(const Digraph& g, const std::shared_ptr<const FiniteGroup>& group,
                            const std::function<void(const VoltageMapRecord&)>& visit);

/// Balanced and nondegenerate flags from enumerate_net_sets rather than BFS.
bool oracle_balanced(const VoltageGraph& vg);
bool oracle_nondegenerate(const VoltageGraph& vg);

/// Surjections {1..n} -> {1..k} counted by enumeration, divided by k!.
std::uint64_t stirling2_bruteforce(unsigned n, unsigned k);

/// Small point groups used by randomized tests; order() <= max_order.
std::vector<std::shared_ptr<const FiniteGroup>> small_groups(std::size_t max_order);

/// Random strongly connected digraph: a cycle through a random vertex order
/// plus each remaining ordered pair with probability p.
Digraph random_strongly_connected(int n, double p, std::mt19937_64& rng);

/// Random rooted digraph: a core cycle on a random subset, every other vertex
/// gets a path toward the core, plus extra edges with probability p.
Digraph random_rooted(int n, double p, std::mt19937_64& rng);

/// Random weakly connected digraph: a random spanning tree with random
/// orientations plus extra edges with probability p.
Digraph random_weakly_connected(int n, double p, std::mt19937_64& rng);

std::vector<GroupElement> random_voltages(const Digraph& g, const FiniteGroup& group, std::mt19937_64& rng);

}  // namespace gclust::oracle
