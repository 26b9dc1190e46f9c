#include "hardyheat/constants.hpp"

#include <cmath>
#include <limits>

#include "hardyheat/specfun.hpp"

namespace hardyheat::constants {

using specfun::kPi;
using specfun::log_gamma;

double lambda_star(const FracParams& params) {
    params.validate();
    const double N = params.N, s = params.s;
    return std::exp(2.0 * s * std::log(2.0) + 2.0 * log_gamma((N + 2.0 * s) / 4.0) -
                    2.0 * log_gamma((N - 2.0 * s) / 4.0));
}

double a_norm(const FracParams& params) {
    params.validate();
    const double N = params.N, s = params.s;
    // |Gamma(-s)| = pi / (sin(pi s) Gamma(1+s)) by reflection
    const double log_abs_gamma_ms =
        std::log(kPi) - std::log(std::sin(kPi * s)) - log_gamma(1.0 + s);
    return std::exp(2.0 * s * std::log(2.0) - 0.5 * N * std::log(kPi) +
                    log_gamma((N + 2.0 * s) / 2.0) - log_abs_gamma_ms);
}

double lambda_of_alpha(const FracParams& params, double alpha) {
    params.validate();
    const double N = params.N, s = params.s;
    const double bound = 0.5 * (N - 2.0 * s);
    if (!(std::abs(alpha) < bound))
        throw std::domain_error("lambda_of_alpha: |alpha| < (N-2s)/2 required");
    return std::exp(2.0 * s * std::log(2.0) + log_gamma((N + 2.0 * s + 2.0 * alpha) / 4.0) +
                    log_gamma((N + 2.0 * s - 2.0 * alpha) / 4.0) -
                    log_gamma((N - 2.0 * s + 2.0 * alpha) / 4.0) -
                    log_gamma((N - 2.0 * s - 2.0 * alpha) / 4.0));
}

double m_alpha(const FracParams& params, double alpha) {
    params.validate();
    const double N = params.N, s = params.s;
    if (!(alpha < 0.5 * (N - 2.0 * s)))
        throw std::domain_error("m_alpha: alpha < (N-2s)/2 required");
    return std::exp((alpha + s) * std::log(2.0) + log_gamma((N + 2.0 * s + 2.0 * alpha) / 4.0) -
                    log_gamma((N - 2.0 * s - 2.0 * alpha) / 4.0));
}

double alpha_of_lambda(const FracParams& params, double lambda, double tol) {
    params.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("alpha_of_lambda: tol > 0 required");
    const double lam_max = lambda_star(params);
    if (!(lambda > 0.0)) throw std::domain_error("alpha_of_lambda: lambda > 0 required");
    if (lambda > lam_max * (1.0 + 1e-14))
        throw std::domain_error("alpha_of_lambda: no solution, lambda exceeds lambda_star");
    if (lambda >= lam_max) return 0.0;

    // lambda(alpha) is strictly decreasing from lambda_star to 0 on [0, bound).
    double lo = 0.0;
    double hi = 0.5 * (params.N - 2.0 * params.s) - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double val = lambda_of_alpha(params, mid);
        if (std::abs(val - lambda) <= tol) return mid;
        if (val > lambda)
            lo = mid;
        else
            hi = mid;
    }
    const double mid = 0.5 * (lo + hi);
    if (std::abs(lambda_of_alpha(params, mid) - lambda) <= tol) return mid;
    throw std::runtime_error("alpha_of_lambda: bisection budget exhausted before tol");
}

double psi(const FracParams& params, double gamma) {
    params.validate();
    const double N = params.N, s = params.s;
    if (!(gamma > 0.0 && gamma < N - 2.0 * s))
        throw std::domain_error("psi: gamma in (0, N-2s) required");
    return std::exp(2.0 * s * std::log(2.0) + log_gamma((gamma + 2.0 * s) / 2.0) +
                    log_gamma((N - gamma) / 2.0) - log_gamma((N - gamma - 2.0 * s) / 2.0) -
                    log_gamma(gamma / 2.0));
}

HardyDerived derive(const FracParams& params, double lambda) {
    params.validate();
    HardyDerived d;
    d.params = params;
    d.lambda = lambda;
    d.lambda_star = lambda_star(params);
    if (!(lambda > 0.0) || lambda > d.lambda_star * (1.0 + 1e-14))
        throw std::domain_error("derive: lambda in (0, lambda_star] required");
    d.a_norm = a_norm(params);
    d.alpha = alpha_of_lambda(params, lambda, 1e-12 * std::max(1.0, d.lambda_star));
    const double half = 0.5 * (params.N - 2.0 * params.s);
    d.gamma = half - d.alpha;
    d.gamma_bar = half + d.alpha;
    d.p_plus = 1.0 + 2.0 * params.s / d.gamma;
    d.tau = 1.0 + 2.0 * params.s / params.N;
    d.two_star = 2.0 * params.N / (params.N - 2.0 * params.s);
    return d;
}

}  // namespace hardyheat::constants
