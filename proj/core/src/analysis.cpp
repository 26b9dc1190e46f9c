#include "hardyheat/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardyheat/constants.hpp"
#include "hardyheat/kernel.hpp"
#include "hardyheat/specfun.hpp"

namespace hardyheat::analysis {

std::pair<HarnackCylinder, HarnackCylinder> make_cylinders(const FracParams& params, double r,
                                                           double t0) {
    if (!(r > 0.0)) throw std::invalid_argument("make_cylinders: r > 0");
    const double span = std::pow(r, 2.0 * params.s);
    HarnackCylinder qm{r, t0 - span, t0, HarnackCylinder::Kind::minus};
    HarnackCylinder qp{r, t0, t0 + span, HarnackCylinder::Kind::plus};
    return {qm, qp};
}

double hardy_rayleigh_quotient(const std::vector<double>& phi, const DiscreteOperator& op0) {
    if (op0.gamma != 0.0)
        throw std::invalid_argument("hardy_rayleigh_quotient: gamma = 0 operator required");
    const std::vector<double> z = discrete::lumped_weights(op0, 2.0 * op0.params.s);
    double denom = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) denom += phi[i] * phi[i] * z[i];
    if (!(denom > 0.0)) throw std::domain_error("hardy_rayleigh_quotient: zero denominator");
    return op0.energy(phi, phi) / denom;
}

double h_norm_squared(const std::vector<double>& u, const DiscreteOperator& op0) {
    const double lam = constants::lambda_star(op0.params);
    const std::vector<double> z = discrete::lumped_weights(op0, 2.0 * op0.params.s);
    double hardy_term = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) hardy_term += u[i] * u[i] * z[i];
    return op0.energy(u, u) - lam * hardy_term;
}

double ground_state_identity_residual(const std::vector<double>& phi, double gamma,
                                      const DiscreteOperator& op0,
                                      const DiscreteOperator& op_gamma) {
    if (op_gamma.gamma != gamma)
        throw std::invalid_argument("ground_state_identity_residual: operator gamma mismatch");
    const double psi_gamma = constants::psi(op0.params, gamma);
    const std::vector<double> z = discrete::lumped_weights(op0, 2.0 * op0.params.s);
    double hardy_term = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) hardy_term += phi[i] * phi[i] * z[i];
    const double lhs = op0.energy(phi, phi) - psi_gamma * hardy_term;
    const std::vector<double> bar =
        discrete::ground_state_transform(phi, op_gamma.grid, gamma,
                                         discrete::TransformDirection::forward);
    const double rhs = op_gamma.energy(bar, bar);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

double picone_check(const std::vector<double>& u, const std::vector<double>& v,
                    const DiscreteOperator& op) {
    const int M = op.size();
    for (double x : u)
        if (!(x > 0.0)) throw std::invalid_argument("picone_check: u > 0 required");
    const std::vector<double> Au = op.apply(u);
    double lhs = 0.0;
    for (int i = 0; i < M; ++i) lhs += Au[i] * v[i] * v[i] / u[i] * op.weights(i);
    return op.energy(v, v) - lhs;
}

double poincare_wirtinger_check(const std::vector<double>& w, const std::vector<double>& psi,
                                const DiscreteOperator& op) {
    const int M = op.size();
    const double a = constants::a_norm(op.params);
    double psi_mass = 0.0, mean_num = 0.0;
    for (int i = 0; i < M; ++i) {
        psi_mass += psi[i] * op.weights(i);
        mean_num += w[i] * psi[i] * op.weights(i);
    }
    if (!(psi_mass > 0.0)) throw std::invalid_argument("poincare_wirtinger_check: psi mass 0");
    const double mean = mean_num / psi_mass;
    double lhs = 0.0;
    for (int i = 0; i < M; ++i)
        lhs += (w[i] - mean) * (w[i] - mean) * psi[i] * op.weights(i);
    double rhs = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j)
            rhs += (2.0 / a) * op.coupling(i, j) * (w[i] - w[j]) * (w[i] - w[j]) *
                   std::min(psi[i], psi[j]);
    if (lhs == 0.0) return 0.0;
    if (!(rhs > 0.0)) return std::numeric_limits<double>::infinity();
    return lhs / rhs;
}

WeightedQuotients weighted_hardy_sobolev_check(const std::vector<double>& phi,
                                               const DiscreteOperator& op_gamma) {
    const int M = op_gamma.size();
    const FracParams& params = op_gamma.params;
    const double a = constants::a_norm(params);
    const double gamma = op_gamma.gamma;
    const double two_star = 2.0 * params.N / (params.N - 2.0 * params.s);

    bool nonzero = false;
    for (double x : phi) nonzero = nonzero || x != 0.0;
    if (!nonzero) throw std::invalid_argument("weighted_hardy_sobolev_check: phi = 0");

    const double dnu_form = (2.0 / a) * op_gamma.energy(phi, phi);

    const std::vector<double> zh =
        discrete::lumped_weights(op_gamma, 2.0 * params.s + 2.0 * gamma);
    double hardy_denom = 0.0;
    for (int i = 0; i < M; ++i) hardy_denom += phi[i] * phi[i] * zh[i];

    const std::vector<double> zs = discrete::lumped_weights(op_gamma, two_star * gamma);
    double sobolev_denom = 0.0;
    for (int i = 0; i < M; ++i)
        sobolev_denom += std::pow(std::abs(phi[i]), two_star) * zs[i];
    sobolev_denom = std::pow(sobolev_denom, 2.0 / two_star);

    double mu_mass = 0.0;
    for (int i = 0; i < M; ++i) mu_mass += phi[i] * phi[i] * op_gamma.weights(i);

    WeightedQuotients q;
    q.hardy = dnu_form / hardy_denom;
    q.sobolev = (dnu_form + std::pow(op_gamma.grid.R, -2.0 * params.s) * mu_mass) /
                sobolev_denom;
    return q;
}

SlopeFit fit_singularity_exponent(const std::vector<double>& u, const RadialGrid& grid,
                                  double r_lo, double r_hi) {
    SlopeFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = grid.nodes[i];
        if (r < r_lo || r > r_hi) continue;
        if (!(u[i] > 0.0))
            throw std::domain_error("fit_singularity_exponent: nonpositive value in window");
        pts.emplace_back(std::log(r), std::log(u[i]));
    }
    fit.points = static_cast<int>(pts.size());
    if (fit.points < 2)
        throw std::invalid_argument("fit_singularity_exponent: window too small");
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = fit.points;
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - fit.slope * sx) / n;
    double ssr = 0.0;
    for (auto& [x, y] : pts) {
        const double e = y - (intercept + fit.slope * x);
        ssr += e * e;
    }
    if (fit.points > 2) {
        const double var = ssr / (n - 2.0);
        fit.stderr_slope = std::sqrt(var * n / det);
    }
    return fit;
}

double harnack_quotient(const evolution::Trajectory& v_trajectory, const DiscreteOperator& op,
                        const HarnackCylinder& Q1, const HarnackCylinder& Q2, double q) {
    const FracParams& params = op.params;
    const double tau_max = 1.0 + 2.0 * params.s / params.N;
    if (!(q > 0.0 && q < tau_max))
        throw std::invalid_argument("harnack_quotient: q in (0, 1+2s/N) required");
    if (!(Q1.t_end <= Q2.t_begin))
        throw std::invalid_argument("harnack_quotient: Q1 must precede Q2");
    const double dt = v_trajectory.dt;
    const int K = v_trajectory.steps();
    if (Q1.t_begin < 0.0 || Q2.t_end > K * dt + 1e-12)
        throw std::invalid_argument("harnack_quotient: cylinder outside trajectory");
    const int M = op.size();

    double integral = 0.0;
    bool any_slice = false;
    for (int k = 0; k <= K; ++k) {
        const double t = k * dt;
        if (t < Q1.t_begin || t > Q1.t_end) continue;
        any_slice = true;
        for (int i = 0; i < M; ++i) {
            if (op.grid.nodes[i] >= Q1.r) break;
            integral += std::pow(std::max(v_trajectory.states(i, k), 0.0), q) *
                        op.weights(i) * dt;
        }
    }
    if (!any_slice) throw std::invalid_argument("harnack_quotient: Q1 has no stored slices");

    double inf_v = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= K; ++k) {
        const double t = k * dt;
        if (t < Q2.t_begin || t > Q2.t_end) continue;
        for (int i = 0; i < M; ++i) {
            if (op.grid.nodes[i] >= Q2.r) break;
            inf_v = std::min(inf_v, v_trajectory.states(i, k));
        }
    }
    if (!(inf_v > 0.0)) return std::numeric_limits<double>::infinity();
    return std::pow(integral, 1.0 / q) / inf_v;
}

AdmissibilityReport data_admissibility(const std::function<double(double)>& profile,
                                       const RadialGrid& grid, double gamma) {
    AdmissibilityReport rep;
    const double R = grid.R;
    const int N = grid.N;
    const double ra = 1e-7 * R, rb = 1e-6 * R;
    const double fa = profile(ra), fb = profile(rb);
    if (fa == 0.0 && fb == 0.0) {
        rep.exponent = 0.0;
    } else if (fa > 0.0 && fb > 0.0) {
        rep.exponent = std::log(fa / fb) / std::log(ra / rb);
    } else {
        rep.exponent = 0.0;
    }
    // integrable near 0 iff N - 1 - gamma + e > -1, strictly
    rep.admissible = (N - gamma + rep.exponent) > 1e-12;
    const double delta = 1e-6 * R;
    auto f = [&](double r) { return profile(r) * std::pow(r, N - 1.0 - gamma); };
    const double S = kernel::sphere_area(N);
    double integral = specfun::integrate_adaptive(f, delta, R, 1e-9).value;
    if (rep.admissible && (fa != 0.0 || fb != 0.0)) {
        // extrapolated power-law piece on (0, delta)
        const double c = profile(delta) * std::pow(delta, -rep.exponent);
        const double p = N - gamma + rep.exponent;
        if (p > 0.0) integral += c * std::pow(delta, p) / p;
    }
    rep.integral = rep.admissible ? S * integral
                                  : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace hardyheat::analysis
