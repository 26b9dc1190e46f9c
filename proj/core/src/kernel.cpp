#include "hardyheat/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "hardyheat/specfun.hpp"

namespace hardyheat::kernel {

using specfun::integrate_adaptive;
using specfun::kPi;

double sphere_area(int N) {
    if (N < 1) throw std::invalid_argument("sphere_area: N >= 1");
    if (N == 1) return 2.0;  // two atoms
    return 2.0 * std::exp(0.5 * N * std::log(kPi) - specfun::log_gamma(0.5 * N));
}

namespace {

// Closed form for N = 3: the sin eta factor integrates exactly.
double kernel_n3(double sigma, double s) {
    const double p = 1.0 + 2.0 * s;
    if (sigma < 1e-3) {
        // series of (1-x)^{-p} - (1+x)^{-p} around 0, relative error ~ sigma^4
        const double b3 = p * (p + 1.0) * (p + 2.0) / 6.0;
        return 2.0 * kPi / p * (2.0 * p + 2.0 * b3 * sigma * sigma);
    }
    const double diff = std::pow(std::abs(1.0 - sigma), -p) - std::pow(1.0 + sigma, -p);
    return 2.0 * kPi / (sigma * p) * diff;
}

double angular_quadrature(const FracParams& params, double sigma) {
    const double N = params.N, s = params.s;
    const double cN = 2.0 * std::exp(0.5 * (N - 1.0) * std::log(kPi) -
                                     specfun::log_gamma(0.5 * (N - 1.0)));
    auto f = [N, s, sigma](double eta) {
        const double base = 1.0 - 2.0 * sigma * std::cos(eta) + sigma * sigma;
        const double sn = (N == 2.0) ? 1.0 : std::pow(std::sin(eta), N - 2.0);
        return sn * std::pow(base, -0.5 * (N + 2.0 * s));
    };
    // near sigma = 1 the mass concentrates at eta ~ |1-sigma|; split there
    const double eta_star = std::min(0.5 * kPi, std::abs(1.0 - sigma));
    double value = 0.0;
    if (eta_star > 0.0 && eta_star < 0.5 * kPi) {
        value += integrate_adaptive(f, 0.0, eta_star, 1e-12).value;
        value += integrate_adaptive(f, eta_star, kPi, 1e-12).value;
    } else {
        value += integrate_adaptive(f, 0.0, kPi, 1e-12).value;
    }
    return cN * value;
}

}  // namespace

double angular_kernel(const FracParams& params, double sigma) {
    params.validate();
    if (!(sigma >= 0.0)) throw std::invalid_argument("angular_kernel: sigma >= 0 required");
    if (sigma == 1.0) throw std::domain_error("angular_kernel: non-integrable at sigma = 1");
    const double s = params.s;
    if (params.N == 1) {
        const double p = 1.0 + 2.0 * s;
        return std::pow(std::abs(1.0 - sigma), -p) + std::pow(1.0 + sigma, -p);
    }
    if (params.N == 3) return kernel_n3(sigma, s);
    return angular_quadrature(params, sigma);
}

double kernel_tail_integral(const FracParams& params, double c, double expo, double tol) {
    params.validate();
    if (!(c > 1.0)) throw std::invalid_argument("kernel_tail_integral: c > 1 required");
    const double N = params.N, s = params.s;
    const double decay = N + 2.0 * s - 1.0 - expo;  // tail power of the integrand
    if (!(decay > 0.0)) throw std::invalid_argument("kernel_tail_integral: divergent tail");
    double value = 0.0;
    if (c < kSigmaMax) {
        auto f = [&params, expo](double sig) {
            return angular_kernel(params, sig) * std::pow(sig, expo);
        };
        value += integrate_adaptive(f, c, kSigmaMax, tol).value;
        value += sphere_area(params.N) * std::pow(kSigmaMax, -decay) / decay;
    } else {
        value += sphere_area(params.N) * std::pow(c, -decay) / decay;
    }
    return value;
}

KernelTable tabulate_kernel(const FracParams& params, int count, double sigma_max, double guard) {
    params.validate();
    if (count < 3) throw std::invalid_argument("tabulate_kernel: count >= 3");
    KernelTable table;
    table.params = params;
    table.near_one_exponent = -(1.0 + 2.0 * params.s);
    table.sphere_area = sphere_area(params.N);
    table.sigma_nodes.push_back(0.0);
    table.values.push_back(table.sphere_area);
    table.paired_identity_residual.push_back(0.0);
    const double lo = 1e-2;
    for (int k = 0; k < count - 1; ++k) {
        const double t = static_cast<double>(k) / (count - 2);
        double sig = lo * std::pow(sigma_max / lo, t);
        if (std::abs(sig - 1.0) < guard) continue;
        const double K = angular_kernel(params, sig);
        table.sigma_nodes.push_back(sig);
        table.values.push_back(K);
        const double Kr = angular_kernel(params, 1.0 / sig) *
                          std::pow(sig, -(params.N + 2.0 * params.s));
        table.paired_identity_residual.push_back((Kr - K) / K);
    }
    return table;
}

double power_constant(const FracParams& params, double gamma, double theta, double tol) {
    params.validate();
    const double N = params.N, s = params.s;
    if (!(gamma >= 0.0 && gamma < 0.5 * (N - 2.0 * s)))
        throw std::domain_error("power_constant: gamma in [0,(N-2s)/2) required");
    if (!(theta > 0.0 && theta < N - 2.0 * s - 2.0 * gamma))
        throw std::domain_error("power_constant: theta in (0, N-2s-2gamma) required");
    auto f = [&](double sig) {
        const double K = angular_kernel(params, sig);
        return K * (std::pow(sig, theta) - 1.0) *
               (std::pow(sig, N - gamma - theta - 1.0) - std::pow(sig, 2.0 * s + gamma - 1.0));
    };
    specfun::EndpointSingularity sing{1.0 - 2.0 * s, 0.0};
    auto q = integrate_adaptive(f, 1.0, kSigmaMax, tol, sing);
    // analytic tail from K ~ |S| sigma^{-(N+2s)}: four power terms
    const double S = sphere_area(params.N);
    auto tail_term = [&](double e) {
        const double decay = N + 2.0 * s - 1.0 - e;
        return std::pow(kSigmaMax, -decay) / decay;
    };
    double tail = S * (tail_term(N - gamma - 1.0) - tail_term(N - gamma - theta - 1.0) -
                       tail_term(2.0 * s + gamma + theta - 1.0) + tail_term(2.0 * s + gamma - 1.0));
    return constants::a_norm(params) * (q.value + tail);
}

double log_potential_constant(const FracParams& params, double tol) {
    params.validate();
    const double N = params.N, s = params.s;
    auto f = [&](double sig) {
        return angular_kernel(params, sig) * std::log(sig) *
               (std::pow(sig, N - 1.0) - std::pow(sig, 2.0 * s - 1.0));
    };
    specfun::EndpointSingularity sing{1.0 - 2.0 * s, 0.0};
    auto q = integrate_adaptive(f, 1.0, kSigmaMax, tol, sing);
    // tail: |S| int sigma^{-1-q} log sigma = |S| c^{-q} (q log c + 1)/q^2
    const double S = sphere_area(params.N);
    auto log_tail = [&](double qq) {
        return std::pow(kSigmaMax, -qq) * (qq * std::log(kSigmaMax) + 1.0) / (qq * qq);
    };
    return q.value + S * (log_tail(2.0 * s) - log_tail(static_cast<double>(N)));
}

double symmetrized_radial_integrand(const FracParams& params,
                                    const std::function<double(double)>& u, double r,
                                    double sigma) {
    params.validate();
    if (!(sigma > 1.0)) throw std::invalid_argument("symmetrized_radial_integrand: sigma > 1");
    const double N = params.N, s = params.s;
    const double K = angular_kernel(params, sigma);
    const double ur = u(r);
    return K * ((ur - u(r * sigma)) * std::pow(sigma, N - 1.0) +
                (ur - u(r / sigma)) * std::pow(sigma, 2.0 * s - 1.0));
}

}  // namespace hardyheat::kernel
