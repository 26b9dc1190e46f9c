// Radial grids, measure weights, and dense symmetric realizations of the
// fractional Laplacian and of the weighted operator obtained from it by the
// ground state transformation, with complement Dirichlet condition.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "hardyheat/constants.hpp"

namespace hardyheat::discrete {

using constants::FracParams;

enum class Grading { uniform, geometric };

/// Strictly increasing positive nodes r_1 < ... < r_M <= R with cell
/// boundaries b_0 = 0 < b_1 < ... < b_M = R and per-cell measure weights.
/// Geometric grading places nodes in geometric progression (uniform in
/// log r), clustering them toward the potential singularity at the origin.
struct RadialGrid {
    int N = 3;
    double R = 1.0;
    int M = 0;
    Grading grading = Grading::uniform;
    double ratio = 0.0;  // geometric ratio q, nodes r_{i}/r_{i+1} = q

    std::vector<double> nodes;
    std::vector<double> cell_boundaries;   // size M+1
    std::vector<double> lebesgue_weights;  // |S^{N-1}| int_cell r^{N-1} dr

    /// |S^{N-1}| int_cell r^{N-1-2 gamma} dr; finite for gamma < N/2.
    std::vector<double> mu_weights(double gamma) const;
};

/// Builds a grid; geometric ratio q must lie in (0.8, 1).
RadialGrid build_radial_grid(int N, double R, int M, Grading grading, double ratio = 0.95);

/// Regularized Hardy potential V_i = lambda / (r_i^{2s} + 1/n); n = kLevelInfinity
/// gives the sharp potential lambda r^{-2s}.
inline constexpr std::int64_t kLevelInfinity = -1;

struct PotentialSpec {
    double lambda = 0.0;
    std::int64_t n = 1;           // regularization level, kLevelInfinity for sharp
    std::vector<double> values;   // V_i per node
};

PotentialSpec hardy_potential(const RadialGrid& grid, const FracParams& params, double lambda,
                              std::int64_t n);

/// v_i = r_i^{gamma} u_i (forward) or r_i^{-gamma} u_i (inverse).
enum class TransformDirection { forward, inverse };
std::vector<double> ground_state_transform(const std::vector<double>& u, const RadialGrid& grid,
                                           double gamma, TransformDirection direction);

/// Dense symmetric-in-mu realization of (-Delta)^s (gamma = 0) or of the
/// weighted generator |x|^{2 gamma} L_gamma (gamma > 0) on the grid, with the
/// complement condition u = 0 outside B_R realized as a diagonal killing rate.
///
/// Internally a piecewise-linear (in log r) Galerkin form: coupling
/// coefficients S_ij >= 0 exactly symmetric, node weights w_i > 0, and
/// killing rates kappa_i >= 0 with
///     (A u)_i = kappa_i u_i + (1/w_i) sum_j S_ij (u_i - u_j).
/// A is an M-matrix and satisfies <A u, v>_w = <u, A v>_w exactly.
struct DiscreteOperator {
    enum class Kind { frac_laplacian, weighted_Lgamma };

    Kind kind = Kind::frac_laplacian;
    FracParams params;
    double gamma = 0.0;
    RadialGrid grid;

    Eigen::MatrixXd coupling;   // S_ij, symmetric, zero diagonal
    Eigen::VectorXd weights;    // lumped mu-weights w_i
    Eigen::VectorXd kappa;      // killing rate per node (row sum of A)

    /// Dense matrix A (M x M).
    Eigen::MatrixXd matrix() const;

    /// (A u) through the difference form (exact positivity structure).
    std::vector<double> apply(const std::vector<double>& u) const;

    /// Energy <A u, v>_w: the (a/2)-scaled Gagliardo form of the zero
    /// extensions, exterior killing included.
    double energy(const std::vector<double>& u, const std::vector<double>& v) const;

    int size() const { return static_cast<int>(weights.size()); }
};

/// Assembles the operator; gamma in [0, (N-2s)/2).
/// Throws std::runtime_error if any coupling comes out negative beyond
/// roundoff (quadrature failure).
DiscreteOperator assemble_operator(const RadialGrid& grid, const FracParams& params, double gamma);

/// Exterior contribution of the analytic power tail r^{-theta} beyond B_R:
/// subtracting this from (A u) with u_i = r_i^{-theta} targets the
/// whole-space identity L(r^{-theta}) = Lambda_{N,s,gamma,theta} r^{-theta-2s}.
std::vector<double> power_tail_correction(const DiscreteOperator& op, double theta);

/// Hat-lumped node weights for the measure |x|^{-q} dx restricted to B_R,
/// consistent with the operator's interpolation space. Requires q < N.
std::vector<double> lumped_weights(const DiscreteOperator& op, double q);

}  // namespace hardyheat::discrete
