#include "hardyheat/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hardyheat::evolution {

double RadialProfile::operator()(double r) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::constant:
            return amplitude;
        case Kind::power:
            return amplitude * std::pow(r, -exponent);
        case Kind::bump:
            if (r >= radius) return 0.0;
            {
                const double z = r / radius;
                return amplitude * std::exp(1.0 - 1.0 / (1.0 - z * z));
            }
        case Kind::ball:
            return (r < radius) ? amplitude : 0.0;
    }
    return 0.0;
}

std::vector<double> RadialProfile::sample(const RadialGrid& grid) const {
    std::vector<double> v(grid.nodes.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)(grid.nodes[i]);
    return v;
}

std::vector<double> truncate(const std::vector<double>& g, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("truncate: n >= 1 required");
    std::vector<double> out(g.size());
    const double cap = static_cast<double>(n);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = std::clamp(g[i], -cap, cap);
    return out;
}

std::vector<double> step_linear(const std::vector<double>& u, const DiscreteOperator& op,
                                const PotentialSpec& potential,
                                const std::vector<double>& u_prev,
                                const std::vector<double>& rhs, double dt) {
    const int M = op.size();
    if (!(dt > 0.0)) throw std::invalid_argument("step_linear: dt > 0");
    Eigen::MatrixXd sys = dt * op.matrix();
    sys.diagonal().array() += 1.0;
    Eigen::VectorXd b(M);
    for (int i = 0; i < M; ++i)
        b(i) = u[i] + dt * (potential.values[i] * u_prev[i] + rhs[i]);
    Eigen::VectorXd x = sys.partialPivLu().solve(b);
    return std::vector<double>(x.data(), x.data() + M);
}

namespace {

std::vector<double> lagged_rhs(const DiscreteOperator& op, const EvolutionConfig& config,
                               std::int64_t level, const std::vector<double>& u_prev,
                               const std::vector<double>& f_trunc) {
    const int M = op.size();
    std::vector<double> rhs(M);
    const double eps = 1.0 / static_cast<double>(level);
    for (int i = 0; i < M; ++i) {
        const double r2s = std::pow(op.grid.nodes[i], 2.0 * op.params.s);
        double v = config.lambda * std::pow(u_prev[i], config.hardy_exponent) / (r2s + eps);
        if (config.p) v += std::pow(u_prev[i], *config.p);
        rhs[i] = v + f_trunc[i];
    }
    return rhs;
}

}  // namespace

Trajectory solve_truncated_problem(std::int64_t level, const Trajectory& previous,
                                   const DiscreteOperator& op,
                                   const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                                   const EvolutionConfig& config) {
    const int M = op.size();
    const double dt = previous.dt;
    const int K = previous.steps();
    Trajectory traj;
    traj.dt = dt;
    traj.states.resize(M, K + 1);

    const std::vector<double> f_full = config.f.sample(op.grid);
    const std::vector<double> u0_full = config.u0.sample(op.grid);
    const std::int64_t tn = std::max<std::int64_t>(level, 1);
    const std::vector<double> f_trunc = truncate(f_full, tn);
    const std::vector<double> u0_trunc = truncate(u0_full, tn);

    Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(u0_trunc.data(), M);
    traj.states.col(0) = u;
    for (int k = 0; k < K; ++k) {
        Eigen::VectorXd rhs(M);
        if (level == 0) {
            for (int i = 0; i < M; ++i) rhs(i) = f_trunc[i];
        } else {
            std::vector<double> up(previous.states.col(k).data(),
                                   previous.states.col(k).data() + M);
            const std::vector<double> r = lagged_rhs(op, config, level, up, f_trunc);
            for (int i = 0; i < M; ++i) rhs(i) = r[i];
        }
        u = lu.solve(u + dt * rhs);
        traj.states.col(k + 1) = u;
    }
    return traj;
}

RunReport monotone_iteration(const EvolutionConfig& config, const DiscreteOperator& op) {
    if (config.n_schedule.empty())
        throw std::invalid_argument("monotone_iteration: empty n_schedule");
    if (!(config.T_final > 0.0)) throw std::invalid_argument("monotone_iteration: T_final > 0");
    const int M = op.size();
    const double dt = (config.dt > 0.0) ? config.dt : config.T_final / 400.0;
    const int K = std::max(1, static_cast<int>(std::llround(config.T_final / dt)));

    RunReport report;
    report.probe_index = config.probe_index;
    if (report.probe_index < 0) {
        const double target = op.grid.R / 16.0;
        int best = 0;
        for (int i = 0; i < M; ++i)
            if (std::abs(op.grid.nodes[i] - target) <
                std::abs(op.grid.nodes[best] - target))
                best = i;
        report.probe_index = best;
    }
    const double probe_time = (config.probe_time > 0.0) ? config.probe_time : config.T_final;
    report.probe_time = probe_time;
    const int probe_step = std::clamp(static_cast<int>(std::llround(probe_time / dt)), 0, K);

    Eigen::MatrixXd sys = dt * op.matrix();
    sys.diagonal().array() += 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);

    const std::vector<double> wdx = discrete::lumped_weights(op, 0.0);
    const Eigen::VectorXd wmu = op.weights;

    Trajectory traj;
    traj.dt = dt;
    traj.states.resize(M, K + 1);

    const std::int64_t n_max = *std::max_element(config.n_schedule.begin(),
                                                 config.n_schedule.end());
    bool aborted = false;
    for (std::int64_t level = 0; level <= n_max; ++level) {
        traj = solve_truncated_problem(level, traj, op, lu, config);
        report.total_steps += traj.steps();
        const double probe = traj.states(report.probe_index, probe_step);
        double l1dx = 0.0, l1mu = 0.0;
        for (int i = 0; i < M; ++i) {
            l1dx += std::abs(traj.states(i, K)) * wdx[i];
            l1mu += std::abs(traj.states(i, K)) * wmu(i);
        }
        report.levels.push_back(level);
        report.probe_series.push_back(probe);
        report.l1_dx_norms.push_back(l1dx);
        report.l1_mu_norms.push_back(l1mu);
        if (!std::isfinite(probe) || probe > 10.0 * config.blowup_abs_threshold) {
            aborted = true;  // further levels only grow (monotone scheme)
            break;
        }
    }
    report.last_trajectory = traj;

    // classification over the schedule checkpoints
    std::vector<double> cp;
    for (std::int64_t n : config.n_schedule) {
        if (n < static_cast<std::int64_t>(report.probe_series.size()))
            cp.push_back(report.probe_series[static_cast<std::size_t>(n)]);
    }
    const double last = report.probe_series.back();
    const bool above_abs =
        !std::isfinite(last) || last >= config.blowup_abs_threshold ||
        (!cp.empty() && cp.back() >= config.blowup_abs_threshold);

    // growth predicate: each of the last 3 checkpoint ratios >= growth_factor
    bool growth_fired = false;
    if (cp.size() >= 4) {
        growth_fired = true;
        for (std::size_t k = cp.size() - 3; k < cp.size(); ++k) {
            const double prev = cp[k - 1], cur = cp[k];
            const bool ok = (!std::isfinite(cur) && std::isfinite(prev)) ||
                            (std::isfinite(cur) && std::isfinite(prev) && prev > 0.0 &&
                             cur >= config.growth_factor * prev);
            if (!ok) {
                growth_fired = false;
                break;
            }
        }
    }

    bool converged = false;
    if (!aborted && cp.size() >= 3 && std::isfinite(last)) {
        const double c1 = std::abs(cp[cp.size() - 1] - cp[cp.size() - 2]) /
                          std::max(std::abs(cp[cp.size() - 2]), 1e-300);
        const double c2 = std::abs(cp[cp.size() - 2] - cp[cp.size() - 3]) /
                          std::max(std::abs(cp[cp.size() - 3]), 1e-300);
        const bool norms_bounded =
            std::isfinite(report.l1_dx_norms.back()) &&
            report.l1_dx_norms.back() < config.blowup_abs_threshold &&
            std::isfinite(report.l1_mu_norms.back()) &&
            report.l1_mu_norms.back() < config.blowup_abs_threshold;
        converged = (c1 < config.convergence_tol) && (c2 < config.convergence_tol) &&
                    norms_bounded;
        if (cp[cp.size() - 1] == 0.0 && cp[cp.size() - 2] == 0.0) converged = norms_bounded;
    }

    if (above_abs || growth_fired) {
        report.classification.kind = Classification::Kind::blowup;
        report.classification.reason = above_abs ? "probe exceeded absolute threshold"
                                                 : "probe growth per doubling";
    } else if (converged) {
        report.classification.kind = Classification::Kind::converged;
        report.classification.reason = "probe stabilized across last two doublings";
    } else {
        report.classification.kind = Classification::Kind::inconclusive;
        report.classification.reason = "neither blow-up nor convergence predicate fired";
    }
    return report;
}

SupersolutionReport steady_supersolution_check(const std::vector<double>& w,
                                               const DiscreteOperator& op,
                                               const PotentialSpec& potential_exact,
                                               double p) {
    const int M = op.size();
    for (double v : w)
        if (!(v > 0.0))
            throw std::invalid_argument("steady_supersolution_check: w > 0 required");
    SupersolutionReport rep;
    rep.residuals.resize(M);
    const std::vector<double> Aw = op.apply(w);
    rep.min_residual = std::numeric_limits<double>::infinity();
    for (int i = 0; i < M; ++i) {
        const double res = Aw[i] - potential_exact.values[i] * w[i] - std::pow(w[i], p);
        rep.residuals[i] = res;
        if (res < rep.min_residual) {
            rep.min_residual = res;
            rep.argmin = i;
        }
    }
    return rep;
}

}  // namespace hardyheat::evolution
