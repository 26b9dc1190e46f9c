// Time integration of the truncated monotone approximation scheme and the
// blow-up / convergence classification of its level trajectories.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardyheat/discrete.hpp"

namespace hardyheat::evolution {

using discrete::DiscreteOperator;
using discrete::PotentialSpec;
using discrete::RadialGrid;

/// Radial data profiles for sources and initial data.
struct RadialProfile {
    enum class Kind { zero, constant, power, bump, ball };
    Kind kind = Kind::zero;
    double amplitude = 0.0;
    double exponent = 0.0;  // power: amplitude * r^{-exponent}
    double radius = 1.0;    // support radius of bump / ball

    double operator()(double r) const;
    std::vector<double> sample(const RadialGrid& grid) const;
};

struct Classification {
    enum class Kind { converged, blowup, inconclusive };
    Kind kind = Kind::inconclusive;
    std::string reason;
};

struct EvolutionConfig {
    double dt = 0.0;            // 0 -> T_final / 400
    double T_final = 1.0;
    std::optional<double> p;    // semilinear power
    double hardy_exponent = 1.0;  // power of u inside the Hardy term
    double lambda = 0.0;
    RadialProfile f;
    RadialProfile u0;
    int probe_index = -1;       // node index; -1 -> node nearest r = R/16
    double probe_time = -1.0;   // -1 -> T_final
    std::vector<std::int64_t> n_schedule = {1, 2, 4, 8, 16, 32, 64};

    // classification thresholds (config-exposed artifact choices)
    double blowup_abs_threshold = 1e8;
    double growth_factor = 10.0;
    double convergence_tol = 1e-3;
};

/// One stored level trajectory: u at every time node 0..K.
struct Trajectory {
    double dt = 0.0;
    Eigen::MatrixXd states;  // M x (K+1)

    int steps() const { return static_cast<int>(states.cols()) - 1; }
};

struct RunReport {
    Classification classification;
    std::vector<std::int64_t> levels;     // regularization level per entry
    std::vector<double> probe_series;     // probe value per level
    std::vector<double> l1_dx_norms;      // final-time L1(dx) norm per level
    std::vector<double> l1_mu_norms;      // final-time L1(dmu) norm per level
    std::optional<double> fitted_singularity_exponent;
    std::int64_t total_steps = 0;
    std::int64_t rejected_steps = 0;
    Trajectory last_trajectory;           // trajectory of the last completed level
    int probe_index = -1;
    double probe_time = 0.0;
};

/// T_n(g): clamp to [-n, n] componentwise.
std::vector<double> truncate(const std::vector<double>& g, std::int64_t n);

/// One implicit Euler step: solves (I + dt A) u_next = u + dt (V u_prev + rhs).
/// The potential acts on the lagged state u_prev; rhs >= 0 preserves
/// positivity exactly (inverse positivity of the M-matrix).
std::vector<double> step_linear(const std::vector<double>& u, const DiscreteOperator& op,
                                const PotentialSpec& potential,
                                const std::vector<double>& u_prev,
                                const std::vector<double>& rhs, double dt);

/// Level-n linear problem with right-hand side frozen from the previous
/// level's trajectory:
///   u_t + A u = lambda u_prev^q / (r^{2s} + 1/n) + u_prev^p + T_n(f),
///   u(0) = T_n(u0).
/// Level 0 uses rhs T_1(f) only. `lu` must factor (I + dt A).
Trajectory solve_truncated_problem(std::int64_t level, const Trajectory& previous,
                                   const DiscreteOperator& op,
                                   const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                                   const EvolutionConfig& config);

/// Runs levels 0,1,2,...,max(schedule) of the monotone scheme and classifies
/// the probe series at the schedule checkpoints.
RunReport monotone_iteration(const EvolutionConfig& config, const DiscreteOperator& op);

/// min over nodes of (A w)_i - V_i w_i - w_i^p; a nonnegative minimum
/// certifies a discrete stationary supersolution (barrier).
struct SupersolutionReport {
    double min_residual = 0.0;
    int argmin = -1;
    std::vector<double> residuals;
};
SupersolutionReport steady_supersolution_check(const std::vector<double>& w,
                                               const DiscreteOperator& op,
                                               const PotentialSpec& potential_exact,
                                               double p);

}  // namespace hardyheat::evolution
