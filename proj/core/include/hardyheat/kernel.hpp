// Sphere-averaged angular kernel K(sigma) that reduces radial nonlocal
// operators to one-dimensional integrals, together with the power-law
// constants obtained from it by quadrature.
#pragma once

#include <functional>
#include <vector>

#include "hardyheat/constants.hpp"

namespace hardyheat::kernel {

using constants::FracParams;

/// Surface measure of the unit sphere S^{N-1}; the two-point counting
/// measure (=2) in dimension one.
double sphere_area(int N);

/// K(sigma) = 2 pi^{(N-1)/2}/Gamma((N-1)/2) *
///            int_0^pi sin^{N-2}(eta) (1 - 2 sigma cos eta + sigma^2)^{-(N+2s)/2} d eta
/// with explicit degenerate forms for N = 1 (two atoms) and N = 2.
/// Throws std::domain_error at sigma = 1 where K is non-integrable.
double angular_kernel(const FracParams& params, double sigma);

/// Kernel cutoff used when reducing (1, infinity) integrals: the remainder
/// beyond sigma_max is appended analytically from K ~ |S^{N-1}| sigma^{-(N+2s)}.
inline constexpr double kSigmaMax = 1.0e4;

/// int_{c}^{infinity} K(sigma) sigma^{expo} d sigma for expo < N+2s-1,
/// truncated at kSigmaMax with the analytic power tail appended.
/// For c < 1 the (near-)singularity at sigma=1 must not be crossed; callers
/// pass c > 1 (or c >= 0 with expo choices keeping the integrand finite).
double kernel_tail_integral(const FracParams& params, double c, double expo, double tol = 1e-10);

/// Tabulated kernel values with the reciprocal-identity residuals, as the
/// CLI emits them. Nodes exclude a guard band around sigma = 1.
struct KernelTable {
    FracParams params;
    std::vector<double> sigma_nodes;
    std::vector<double> values;
    std::vector<double> paired_identity_residual;  // K(1/s) s^{-(N+2s)} - K(s), relative
    double near_one_exponent = 0.0;                // -(1+2s)
    double sphere_area = 0.0;
};

/// 50-point (default) log-spaced table on [0, sigma_max] with guard band
/// around 1; residuals evaluated at the nodes > 1.
KernelTable tabulate_kernel(const FracParams& params, int count = 50, double sigma_max = 100.0,
                            double guard = 0.05);

/// Lambda_{N,s,gamma,theta} =
///   a_{N,s} int_1^inf K(sigma)(sigma^theta - 1)
///                     (sigma^{N-gamma-theta-1} - sigma^{2s+gamma-1}) d sigma,
/// the constant with L_{gamma}(|x|^{-theta}) = Lambda |x|^{-theta-2s-2gamma}.
/// Requires 0 <= gamma < (N-2s)/2 and 0 < theta < N-2s-2gamma.
double power_constant(const FracParams& params, double gamma, double theta, double tol = 1e-9);

/// D-bar = int_1^inf K(sigma) log(sigma) (sigma^{N-1} - sigma^{2s-1}) d sigma,
/// the constant bounding (-Delta)^s of the truncated log profile by
/// D-bar |x|^{-2s}. Finite and strictly positive.
double log_potential_constant(const FracParams& params, double tol = 1e-9);

/// Paired principal-value integrand
///   K(sigma) [ (u(r) - u(r sigma)) sigma^{N-1} + (u(r) - u(r/sigma)) sigma^{2s-1} ],
/// absolutely integrable on (1, infinity) for twice-differentiable u.
double symmetrized_radial_integrand(const FracParams& params,
                                    const std::function<double(double)>& u, double r,
                                    double sigma);

}  // namespace hardyheat::kernel
