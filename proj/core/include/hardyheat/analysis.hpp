// Quantitative verifiers: Hardy quotients, the ground-state identity,
// discrete Picone margins, weighted Poincare/Sobolev quotients, singularity
// rates and parabolic Harnack quotients.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hardyheat/discrete.hpp"
#include "hardyheat/evolution.hpp"

namespace hardyheat::analysis {

using constants::FracParams;
using discrete::DiscreteOperator;
using discrete::RadialGrid;

/// Space-time cylinder B_r x I with I = (t0 - r^{2s}, t0) for the minus kind
/// and (t0, t0 + r^{2s}) for the plus kind, shifted to a run's time axis.
struct HarnackCylinder {
    enum class Kind { minus, plus };
    double r = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
    Kind kind = Kind::minus;
};

/// The pair (Q_-, Q_+) anchored at time t0 with radius r.
std::pair<HarnackCylinder, HarnackCylinder> make_cylinders(const FracParams& params, double r,
                                                           double t0);

/// (a/2) E(phi) / int phi^2 |x|^{-2s} dx, with the energy taken from the
/// assembled gamma = 0 operator (exterior killing included).
double hardy_rayleigh_quotient(const std::vector<double>& phi, const DiscreteOperator& op0);

/// ||u||_H^2 = (a/2) E(u) - Lambda int u^2 |x|^{-2s} dx.
double h_norm_squared(const std::vector<double>& u, const DiscreteOperator& op0);

/// Relative residual of the ground state representation: the gamma = 0 energy
/// minus Psi(gamma) times the Hardy term, against the weighted energy of
/// |x|^gamma phi under the transformed operator.
double ground_state_identity_residual(const std::vector<double>& phi, double gamma,
                                      const DiscreteOperator& op0,
                                      const DiscreteOperator& op_gamma);

/// Discrete Picone margin: energy(v,v) - sum_i (A u)_i v_i^2 / u_i w_i >= 0
/// for every u > 0 (exact algebraic consequence of the sign structure).
double picone_check(const std::vector<double>& u, const std::vector<double>& v,
                    const DiscreteOperator& op);

/// LHS/RHS of the weighted Poincare-Wirtinger inequality for the profile
/// psi (radial nonincreasing cutoff, 0 <= psi <= 1); 0 when w is constant.
double poincare_wirtinger_check(const std::vector<double>& w, const std::vector<double>& psi,
                                const DiscreteOperator& op);

struct WeightedQuotients {
    double hardy = 0.0;    // [dnu form] / int phi^2 |x|^{-2s-2gamma} dx
    double sobolev = 0.0;  // [dnu form + R^{-2s} int phi^2 dmu] / ||phi||^2_{2*,weighted}
};
WeightedQuotients weighted_hardy_sobolev_check(const std::vector<double>& phi,
                                               const DiscreteOperator& op_gamma);

struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    int points = 0;
};
/// Least-squares slope of log u against log r on the window [r_lo, r_hi].
SlopeFit fit_singularity_exponent(const std::vector<double>& u, const RadialGrid& grid,
                                  double r_lo, double r_hi);

/// (iint_{Q1} v^q dmu dt)^{1/q} / inf_{Q2} v over stored time slices;
/// returns +infinity when the infimum vanishes.
double harnack_quotient(const evolution::Trajectory& v_trajectory, const DiscreteOperator& op,
                        const HarnackCylinder& Q1, const HarnackCylinder& Q2, double q);

struct AdmissibilityReport {
    double integral = 0.0;  // int profile r^{N-1-gamma} dr * |S^{N-1}|
    double exponent = 0.0;  // fitted power near the origin
    bool admissible = false;
};
/// Weighted data integrability of Theorems on necessary/sufficient data:
/// finite int |x|^{-gamma} f dx near the origin.
AdmissibilityReport data_admissibility(const std::function<double(double)>& profile,
                                       const RadialGrid& grid, double gamma);

}  // namespace hardyheat::analysis
