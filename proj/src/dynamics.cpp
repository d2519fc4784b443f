#include "gclust/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "gclust/error.hpp"

namespace gclust {

Configuration::Configuration(std::size_t dim, std::vector<double> values) : dim_(dim), values_(std::move(values)) {
    if (dim_ == 0 || values_.size() % dim_ != 0)
        throw Error(ErrorCode::ShapeError, "configuration length is not a multiple of the dimension");
}

Configuration Configuration::random_uniform(std::size_t agents, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Configuration p(agents, dim);
    for (double& x : p.values_) x = u(rng);
    return p;
}

Weights unit_weights(const Digraph& g) { return Weights(g.edge_count(), 1.0); }

namespace {

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

void check_weights(const Digraph& g, const Weights& w) {
    if (w.size() != g.edge_count()) throw Error(ErrorCode::ShapeError, "one weight per edge required");
    for (double a : w)
        if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::ShapeError, "weights must be positive and finite");
}

/// Linear right-hand side of x_i' = sum_e a_e (M_e x_to - x_i) over a digraph,
/// with M_e either a group matrix or the identity.
class LinearFlow {
public:
    LinearFlow(const Digraph& g, const Weights& w, std::vector<const Matrix*> edge_matrices, std::size_t dim)
        : g_(g), w_(w), mats_(std::move(edge_matrices)), dim_(dim), scratch_(dim) {}

    void operator()(const Configuration& p, Configuration& out) {
        for (Vertex v = 1; v <= g_.vertex_count(); ++v) {
            auto xv = p.point(v);
            auto dv = out.point(v);
            std::fill(dv.begin(), dv.end(), 0.0);
            for (EdgeId e : g_.out_edges(v)) {
                auto xj = p.point(g_.edge(e).to);
                const double a = w_[e];
                if (mats_[e]) {
                    mats_[e]->apply(xj, scratch_);
                    for (std::size_t c = 0; c < dim_; ++c) dv[c] += a * (scratch_[c] - xv[c]);
                } else {
                    for (std::size_t c = 0; c < dim_; ++c) dv[c] += a * (xj[c] - xv[c]);
                }
            }
        }
    }

private:
    const Digraph& g_;
    const Weights& w_;
    std::vector<const Matrix*> mats_;
    std::size_t dim_;
    std::vector<double> scratch_;
};

double max_point_norm(const Configuration& p) {
    double worst = 0.0;
    for (Vertex v = 1; v <= static_cast<Vertex>(p.agents()); ++v) worst = std::max(worst, norm(p.point(v)));
    return worst;
}

std::optional<double> log_residual_slope(const Trajectory& traj) {
    const std::size_t count = traj.times.size();
    const std::size_t window = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(0.2 * count)));
    if (count < 2) return std::nullopt;
    std::vector<double> ts, ys;
    for (std::size_t i = count - std::min(window, count); i < count; ++i) {
        if (traj.residuals[i] > 0.0) {
            ts.push_back(traj.times[i]);
            ys.push_back(std::log(traj.residuals[i]));
        }
    }
    if (ts.size() < 2) return std::nullopt;
    const double tm = std::accumulate(ts.begin(), ts.end(), 0.0) / static_cast<double>(ts.size());
    const double ym = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        num += (ts[i] - tm) * (ys[i] - ym);
        den += (ts[i] - tm) * (ts[i] - tm);
    }
    if (den == 0.0) return std::nullopt;
    return num / den;
}

Trajectory integrate(LinearFlow& flow, const Configuration& p0, const SimulationOptions& opts) {
    if (!(opts.t_max > 0.0) || !(opts.tol > 0.0) || opts.record_every == 0)
        throw Error(ErrorCode::InvalidSpec, "t_max and tol must be positive, record_every at least 1");
    const double h = opts.step;
    const auto total_steps = static_cast<std::size_t>(std::ceil(opts.t_max / h - 1e-9));

    Trajectory traj;
    Configuration x = p0;
    Configuration k1(p0.agents(), p0.dim()), k2 = k1, k3 = k1, k4 = k1, tmp = k1;
    auto record = [&](double t, double residual) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.residuals.push_back(residual);
    };

    std::size_t step = 0;
    for (;;) {
        const double t = static_cast<double>(step) * h;
        flow(x, k1);
        const double residual = max_point_norm(k1);
        const bool done = residual < opts.tol || step >= total_steps;
        if (step % opts.record_every == 0 || done) record(t, residual);
        if (done) {
            traj.converged = residual < opts.tol;
            traj.residual = residual;
            break;
        }
        auto& xs = x.values();
        auto axpy = [&](const Configuration& k, double c) {
            auto& ts = tmp.values();
            const auto& ks = k.values();
            for (std::size_t i = 0; i < xs.size(); ++i) ts[i] = xs[i] + c * ks[i];
        };
        axpy(k1, 0.5 * h);
        flow(tmp, k2);
        axpy(k2, 0.5 * h);
        flow(tmp, k3);
        axpy(k3, h);
        flow(tmp, k4);
        const auto &a = k1.values(), &b = k2.values(), &c = k3.values(), &d = k4.values();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            xs[i] += h / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
            if (!std::isfinite(xs[i]))
                throw Error(ErrorCode::Diverged, "non-finite state at t = " + std::to_string(t + h));
        }
        ++step;
    }
    traj.final_state = x;
    if (traj.converged) traj.rate_estimate = log_residual_slope(traj);
    return traj;
}

void check_step(const Digraph& g, const Weights& w, double step) {
    if (!(step > 0.0)) throw Error(ErrorCode::StepTooLarge, "step must be positive");
    const double limit = max_stable_step(g, w);
    if (step > limit)
        throw Error(ErrorCode::StepTooLarge,
                    "step " + std::to_string(step) + " exceeds the stability guard " + std::to_string(limit));
}

void check_shape(const VoltageGraph& vg, const Configuration& p) {
    if (p.agents() != static_cast<std::size_t>(vg.vertex_count()) || p.dim() != vg.group().dimension())
        throw Error(ErrorCode::ShapeError, "configuration must hold " + std::to_string(vg.vertex_count()) +
                                               " points of dimension " + std::to_string(vg.group().dimension()));
}

}  // namespace

Configuration derivative(const VoltageGraph& vg, const Weights& w, const Configuration& p) {
    check_shape(vg, p);
    check_weights(vg.graph(), w);
    std::vector<const Matrix*> mats;
    for (EdgeId e = 0; e < vg.graph().edge_count(); ++e) mats.push_back(&vg.group().matrix(vg.voltage(e)));
    LinearFlow flow(vg.graph(), w, std::move(mats), p.dim());
    Configuration out(p.agents(), p.dim());
    flow(p, out);
    return out;
}

double max_stable_step(const Digraph& g, const Weights& w) {
    double worst = 0.0;
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
        double row = 0.0;
        for (EdgeId e : g.out_edges(v)) row += w.at(e);
        worst = std::max(worst, row);
    }
    return worst == 0.0 ? std::numeric_limits<double>::infinity() : 0.5 / worst;
}

Trajectory simulate(const VoltageGraph& vg, const Weights& w, const Configuration& p0,
                    const SimulationOptions& opts) {
    check_shape(vg, p0);
    check_weights(vg.graph(), w);
    check_step(vg.graph(), w, opts.step);
    std::vector<const Matrix*> mats;
    for (EdgeId e = 0; e < vg.graph().edge_count(); ++e) mats.push_back(&vg.group().matrix(vg.voltage(e)));
    LinearFlow flow(vg.graph(), w, std::move(mats), p0.dim());
    return integrate(flow, p0, opts);
}

LiftedRun simulate_lifted(const VoltageGraph& vg, const Weights& w, const Configuration& p0,
                          const SimulationOptions& opts) {
    check_shape(vg, p0);
    check_weights(vg.graph(), w);
    check_step(vg.graph(), w, opts.step);
    LiftedRun run{DerivedGraph(vg), {}, {}};
    const DerivedGraph& dg = run.derived;
    const FiniteGroup& G = vg.group();
    const std::size_t k = p0.dim();

    Weights lifted_w;
    for (EdgeId origin : dg.edge_origin()) lifted_w.push_back(w[origin]);
    Configuration y0(static_cast<std::size_t>(dg.graph().vertex_count()), k);
    for (GroupElement g : G.elements())
        for (Vertex v = 1; v <= vg.vertex_count(); ++v) G.matrix(g).apply(p0.point(v), y0.point(dg.lift(g, v)));

    LinearFlow flow(dg.graph(), lifted_w, std::vector<const Matrix*>(dg.graph().edge_count(), nullptr), k);
    run.lifted = integrate(flow, y0, opts);

    // y_[I, v] has derived id v, so the projection is the leading N points.
    const std::size_t prefix = static_cast<std::size_t>(vg.vertex_count()) * k;
    auto project = [&](const Configuration& y) {
        return Configuration(k, std::vector<double>(y.values().begin(), y.values().begin() + static_cast<std::ptrdiff_t>(prefix)));
    };
    Trajectory& x = run.projected;
    x.times = run.lifted.times;
    x.residuals = run.lifted.residuals;
    for (const auto& y : run.lifted.states) x.states.push_back(project(y));
    x.converged = run.lifted.converged;
    x.final_state = project(run.lifted.final_state);
    x.residual = run.lifted.residual;
    x.rate_estimate = run.lifted.rate_estimate;
    return run;
}

LimitReport verify_limit(const VoltageGraph& vg, const Configuration& final_state, double cluster_tol) {
    check_shape(vg, final_state);
    const FiniteGroup& G = vg.group();
    const Digraph& g = vg.graph();
    const int n = vg.vertex_count();
    LimitReport report;

    std::vector<double> rotated(final_state.dim());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        G.matrix(vg.voltage(e)).apply(final_state.point(g.edge(e).to), rotated);
        report.edge_alignment_error =
            std::max(report.edge_alignment_error, distance(final_state.point(g.edge(e).from), rotated));
    }

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Vertex v = 1; v <= n; ++v) {
        const double r = norm(final_state.point(v));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    report.norm_spread = n > 0 ? hi - lo : 0.0;

    for (Vertex v = 1; v <= n; ++v) {
        const Subgroup local = local_group(vg, v);
        for (GroupElement theta : local.members()) {
            G.matrix(theta).apply(final_state.point(v), rotated);
            report.fixed_point_error = std::max(report.fixed_point_error, distance(rotated, final_state.point(v)));
        }
    }

    // Single-linkage clustering via union-find.
    std::vector<std::size_t> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t a) {
        return parent[a] == a ? a : parent[a] = root(parent[a]);
    };
    for (Vertex a = 1; a <= n; ++a)
        for (Vertex b = a + 1; b <= n; ++b)
            if (distance(final_state.point(a), final_state.point(b)) < cluster_tol)
                parent[root(static_cast<std::size_t>(a - 1))] = root(static_cast<std::size_t>(b - 1));
    std::vector<std::vector<Vertex>> by_root(static_cast<std::size_t>(n));
    for (Vertex v = 1; v <= n; ++v) by_root[root(static_cast<std::size_t>(v - 1))].push_back(v);
    for (auto& c : by_root)
        if (!c.empty()) report.clusters.push_back(std::move(c));
    std::sort(report.clusters.begin(), report.clusters.end());

    const auto partition = adapted_partition(vg);
    if (partition == report.clusters) {
        report.relation = PartitionRelation::Equal;
    } else {
        std::vector<std::size_t> cluster_of(static_cast<std::size_t>(n));
        for (std::size_t c = 0; c < report.clusters.size(); ++c)
            for (Vertex v : report.clusters[c]) cluster_of[static_cast<std::size_t>(v - 1)] = c;
        const bool coarser = std::all_of(partition.begin(), partition.end(), [&](const auto& block) {
            return std::all_of(block.begin(), block.end(), [&](Vertex v) {
                return cluster_of[static_cast<std::size_t>(v - 1)] ==
                       cluster_of[static_cast<std::size_t>(block.front() - 1)];
            });
        });
        report.relation = coarser ? PartitionRelation::CoarserThan : PartitionRelation::Mismatch;
    }
    report.matches_adapted_partition = report.relation == PartitionRelation::Equal;
    return report;
}

std::size_t predicted_cluster_count(const VoltageGraph& vg) {
    const AnalysisReport report = analyze(vg);
    if (!report.connectivity.rooted) throw Error(ErrorCode::CriterionNotMet, "the graph is not rooted");
    if (!report.root_condition_holds.value_or(false))
        throw Error(ErrorCode::CriterionNotMet, "directed and semi local groups differ at the roots");
    return report.predicted_cluster_count;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    if (traj.states.empty()) return;
    const std::size_t agents = traj.states.front().agents();
    const std::size_t dim = traj.states.front().dim();
    out << "t";
    for (std::size_t i = 1; i <= agents; ++i)
        for (std::size_t c = 1; c <= dim; ++c) out << ",x" << i << '_' << c;
    out << '\n';
    char buf[32];
    for (std::size_t r = 0; r < traj.times.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[r]);
        out << buf;
        for (double x : traj.states[r].values()) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace gclust
