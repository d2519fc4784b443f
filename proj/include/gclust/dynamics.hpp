#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "gclust/derived.hpp"
#include "gclust/voltage.hpp"

namespace gclust {

/// N points in R^k stored contiguously; point(v) is 1-based.
class Configuration {
public:
    Configuration() = default;
    Configuration(std::size_t agents, std::size_t dim) : dim_(dim), values_(agents * dim, 0.0) {}
    Configuration(std::size_t dim, std::vector<double> values);

    std::size_t agents() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
    std::size_t dim() const { return dim_; }
    std::span<double> point(Vertex v) { return {values_.data() + static_cast<std::size_t>(v - 1) * dim_, dim_}; }
    std::span<const double> point(Vertex v) const {
        return {values_.data() + static_cast<std::size_t>(v - 1) * dim_, dim_};
    }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    /// Each coordinate i.i.d. uniform on [-1, 1].
    static Configuration random_uniform(std::size_t agents, std::size_t dim, std::uint64_t seed);

private:
    std::size_t dim_ = 0;
    std::vector<double> values_;
};

/// Positive weight a_ij per edge, indexed by EdgeId.
using Weights = std::vector<double>;
Weights unit_weights(const Digraph& g);

/// x_i' = sum over out-neighbours j of a_ij (theta_ij x_j - x_i).
Configuration derivative(const VoltageGraph& vg, const Weights& w, const Configuration& p);

struct SimulationOptions {
    double step = 0.05;
    double t_max = 200.0;
    /// Converged once max_i |x_i'| < tol.
    double tol = 1e-10;
    std::size_t record_every = 10;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Configuration> states;
    /// max_i |x_i'| at each recorded time.
    std::vector<double> residuals;
    bool converged = false;
    Configuration final_state;
    double residual = 0.0;
    /// Least-squares slope of log residual over the last 20% of records.
    std::optional<double> rate_estimate;
};

/// 0.5 / max_i sum_j a_ij
double max_stable_step(const Digraph& g, const Weights& w);

/// Classical RK4 with fixed step.
Trajectory simulate(const VoltageGraph& vg, const Weights& w, const Configuration& p0,
                    const SimulationOptions& opts);

struct LiftedRun {
    DerivedGraph derived;
    /// Trajectory of the consensus y-system on derived vertex ids.
    Trajectory lifted;
    /// y_[I, v] at every recorded time.
    Trajectory projected;
};

/// Consensus on the derived graph with y_[theta, v](0) = theta x_v(0).
LiftedRun simulate_lifted(const VoltageGraph& vg, const Weights& w, const Configuration& p0,
                          const SimulationOptions& opts);

enum class PartitionRelation { Equal, CoarserThan, Mismatch };

struct LimitReport {
    double edge_alignment_error = 0.0;
    double norm_spread = 0.0;
    double fixed_point_error = 0.0;
    std::vector<std::vector<Vertex>> clusters;
    PartitionRelation relation = PartitionRelation::Mismatch;
    bool matches_adapted_partition = false;
};

/// Clusters are single-linkage groups of limit points closer than cluster_tol.
LimitReport verify_limit(const VoltageGraph& vg, const Configuration& final_state, double cluster_tol = 1e-6);

/// m = |Net(v_i, V)| / |G_i|; CriterionNotMet unless rooted with G*_r = G_r.
std::size_t predicted_cluster_count(const VoltageGraph& vg);

/// Header t,x1_1,...,x1_k,...,xN_k; one row per record.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace gclust
