// Closed-form spectral constants of the fractional Hardy operator: the best
// Hardy constant, the radial homogeneity exponents, and their inverse maps.
#pragma once

#include <stdexcept>

namespace hardyheat::constants {

/// Dimension and fractional order, under the standing assumption N > 2s.
struct FracParams {
    int N = 3;
    double s = 0.5;

    void validate() const {
        if (N < 1) throw std::invalid_argument("FracParams: N >= 1 required");
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("FracParams: s in (0,1) required");
        if (!(N > 2.0 * s)) throw std::invalid_argument("FracParams: N > 2s required");
    }
};

/// Everything derived from (N, s, lambda): the homogeneity exponents of the
/// radial solutions, the critical semilinear power and the Harnack exponent.
struct HardyDerived {
    FracParams params;
    double lambda = 0.0;       // spectral parameter, in (0, lambda_star]
    double alpha = 0.0;        // in [0, (N-2s)/2)
    double gamma = 0.0;        // (N-2s)/2 - alpha
    double gamma_bar = 0.0;    // (N-2s)/2 + alpha
    double lambda_star = 0.0;  // best Hardy constant
    double a_norm = 0.0;       // fractional Laplacian normalization
    double p_plus = 0.0;       // 1 + 2s/gamma
    double tau = 0.0;          // 1 + 2s/N
    double two_star = 0.0;     // 2N/(N-2s)
};

/// Best constant in the fractional Hardy inequality,
/// 2^{2s} Gamma^2((N+2s)/4) / Gamma^2((N-2s)/4).
double lambda_star(const FracParams& params);

/// Normalization constant of the fractional Laplacian,
/// 2^{2s} pi^{-N/2} Gamma((N+2s)/2) / |Gamma(-s)|, evaluated through
/// log-Gamma with |Gamma(-s)| by reflection.
double a_norm(const FracParams& params);

/// Spectral value of the radial power solution |x|^{-(N-2s)/2 +- alpha}:
/// lambda(alpha) = 2^{2s} G((N+2s+2a)/4) G((N+2s-2a)/4) /
///                 [G((N-2s+2a)/4) G((N-2s-2a)/4)], even in alpha.
double lambda_of_alpha(const FracParams& params, double alpha);

/// Half-map m_alpha = 2^{alpha+s} G((N+2s+2a)/4)/G((N-2s-2a)/4), so that
/// lambda(alpha) = m_alpha * m_{-alpha}.
double m_alpha(const FracParams& params, double alpha);

/// Inverse of lambda_of_alpha on [0, (N-2s)/2) by bisection.
/// Throws std::domain_error when lambda > lambda_star (no solution) and
/// std::runtime_error when the iteration budget cannot meet `tol`.
double alpha_of_lambda(const FracParams& params, double lambda, double tol);

/// Psi(gamma) = Lambda + Phi(gamma)
///            = 2^{2s} G((gamma+2s)/2) G((N-gamma)/2) /
///              [G((N-gamma-2s)/2) G(gamma/2)]  on (0, N-2s),
/// the eigenvalue of the power |x|^{-gamma}; symmetric about (N-2s)/2.
double psi(const FracParams& params, double gamma);

/// Populate a HardyDerived bundle for a given lambda in (0, lambda_star].
HardyDerived derive(const FracParams& params, double lambda);

}  // namespace hardyheat::constants
