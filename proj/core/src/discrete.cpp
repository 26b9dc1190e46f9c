#include "hardyheat/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hardyheat/kernel.hpp"
#include "hardyheat/specfun.hpp"

namespace hardyheat::discrete {

using specfun::integrate_adaptive;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double power_cell_integral(double lo, double hi, double p) {
    // int_lo^hi r^p dr, p > -1
    return (std::pow(hi, p + 1.0) - std::pow(lo, p + 1.0)) / (p + 1.0);
}

// ---------------------------------------------------------------------------
// exponential moments  int_A^B (x-A)^k e^{c x} dx, stable in both regimes
// ---------------------------------------------------------------------------
struct ExpMoments {
    double j0, j1, j2;
};

ExpMoments exp_moments(double c, double A, double B) {
    const double d = B - A;
    const double cd = c * d;
    ExpMoments m;
    if (std::abs(cd) < 0.5) {
        const double ea = std::exp(c * A);
        double t0 = 0.0, t1 = 0.0, t2 = 0.0, term = 1.0;
        for (int k = 0; k < 16; ++k) {
            t0 += term / (k + 1.0);
            t1 += term / (k + 2.0);
            t2 += term / (k + 3.0);
            term *= cd / (k + 1.0);
        }
        m.j0 = ea * d * t0;
        m.j1 = ea * d * d * t1;
        m.j2 = ea * d * d * d * t2;
    } else {
        const double ea = std::exp(c * A), eb = std::exp(c * B);
        m.j0 = (eb - ea) / c;
        m.j1 = eb * d / c - (eb - ea) / (c * c);
        m.j2 = eb * d * d / c - 2.0 * eb * d / (c * c) + 2.0 * (eb - ea) / (c * c * c);
    }
    return m;
}

// ---------------------------------------------------------------------------
// piecewise-linear trapezoid profiles (the P1 basis in log coordinates)
// ---------------------------------------------------------------------------
struct Trap {
    double k0, k1, k2, k3;  // 0 | ramp | 1 on [k1,k2] | ramp | 0 ; k2=k3=inf => right plateau

    double value(double x) const {
        if (x <= k0 || x >= k3) return 0.0;
        if (x < k1) return (x - k0) / (k1 - k0);
        if (x <= k2) return 1.0;
        return (k3 - x) / (k3 - k2);
    }
    double slope(double x) const {
        if (x <= k0 || x >= k3) return 0.0;
        if (x < k1) return 1.0 / (k1 - k0);
        if (x <= k2) return 0.0;
        return -1.0 / (k3 - k2);
    }
    double lo() const { return k0; }
    double hi_eff() const { return std::isinf(k3) ? k1 : k3; }
    void collect_knots(std::vector<double>& out, double shift) const {
        out.push_back(k0 - shift);
        out.push_back(k1 - shift);
        if (!std::isinf(k2)) out.push_back(k2 - shift);
        if (!std::isinf(k3)) out.push_back(k3 - shift);
    }
};

// correlation  E(tau) = int (f(x)-f(x+tau)) (g(x)-g(x+tau)) e^{c x} dx
double pair_correlation(const Trap& f, const Trap& g, double c, double tau) {
    // diff supports: [k0 - tau^+, hi_eff + tau^-] each; the integrand lives on
    // shifted islands, so integrate over the hull with zero pieces skipped.
    const double hull_lo = std::min(f.lo(), g.lo()) - std::max(tau, 0.0);
    const double hull_hi = std::max(f.hi_eff(), g.hi_eff()) + std::max(-tau, 0.0);
    std::vector<double> brk;
    brk.reserve(18);
    f.collect_knots(brk, 0.0);
    f.collect_knots(brk, tau);
    g.collect_knots(brk, 0.0);
    g.collect_knots(brk, tau);
    brk.push_back(hull_lo);
    brk.push_back(hull_hi);
    std::sort(brk.begin(), brk.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < brk.size(); ++k) {
        const double A = std::max(brk[k], hull_lo);
        const double B = std::min(brk[k + 1], hull_hi);
        if (!(B > A)) continue;
        const double mid = 0.5 * (A + B);
        const double fs = f.slope(mid) - f.slope(mid + tau);
        const double gs = g.slope(mid) - g.slope(mid + tau);
        const double fA = f.value(A) - f.value(A + tau);
        const double gA = g.value(A) - g.value(A + tau);
        if (fA == 0.0 && fs == 0.0) continue;
        if (gA == 0.0 && gs == 0.0) continue;
        const ExpMoments m = exp_moments(c, A, B);
        total += fA * gA * m.j0 + (fA * gs + gA * fs) * m.j1 + fs * gs * m.j2;
    }
    return total;
}

// int f'(x) g'(x) e^{c x} dx, the tau->0 curvature of the correlation
double slope_product_integral(const Trap& f, const Trap& g, double c) {
    std::vector<double> brk;
    f.collect_knots(brk, 0.0);
    g.collect_knots(brk, 0.0);
    std::sort(brk.begin(), brk.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < brk.size(); ++k) {
        const double A = brk[k], B = brk[k + 1];
        if (!(B > A)) continue;
        const double mid = 0.5 * (A + B);
        const double p = f.slope(mid) * g.slope(mid);
        if (p == 0.0) continue;
        total += p * exp_moments(c, A, B).j0;
    }
    return total;
}

// ---------------------------------------------------------------------------
// log-symmetric kernel  Phi(tau) = K(e^tau) e^{(N+2s) tau / 2}  (even in tau)
// evaluated through its logarithm; tabulated for dimensions without a closed
// form.
// ---------------------------------------------------------------------------
class PhiEval {
public:
    PhiEval(const FracParams& params) : params_(params), N_(params.N), s_(params.s) {
        if (N_ != 1 && N_ != 3) build_table();
    }

    // log Phi(|tau|)
    double log_phi(double tau) const {
        const double t = std::abs(tau);
        const double p = 1.0 + 2.0 * s_;
        if (N_ == 1) {
            const double em = std::abs(std::expm1(t));
            const double sig = std::exp(t);
            // K = em^{-p} + (1+sig)^{-p}
            const double ratio = std::pow(em / (1.0 + sig), p);
            return -p * std::log(em) + std::log1p(ratio) + 0.5 * (N_ + 2.0 * s_) * t;
        }
        if (N_ == 3) {
            const double em = std::abs(std::expm1(t));
            const double sig = std::exp(t);
            const double ratio = std::pow(em / (1.0 + sig), p);  // < 1
            // K = 2 pi/(sig p) em^{-p} (1 - ratio)
            return std::log(2.0 * specfun::kPi / p) - t - p * std::log(em) +
                   std::log1p(-ratio) + 0.5 * (N_ + 2.0 * s_) * t;
        }
        // tabulated: h(t) = log(Phi * em^{p}) interpolated over log t
        const double em = std::abs(std::expm1(t));
        double h;
        if (t <= tmin_) {
            h = h_.front();
        } else if (t >= tmax_) {
            // K ~ |S| sig^{-(N+2s)} => Phi ~ |S| e^{-(N+2s) t/2}
            return std::log(kernel::sphere_area(N_)) - 0.5 * (N_ + 2.0 * s_) * t;
        } else {
            h = interp(std::log(t));
        }
        return h - p * std::log(em);
    }

    double operator()(double tau) const { return std::exp(log_phi(tau)); }

private:
    void build_table() {
        tmin_ = 1e-8;
        tmax_ = std::log(kernel::kSigmaMax);
        const int n = 1200;
        x_.resize(n);
        h_.resize(n);
        const double lmin = std::log(tmin_), lmax = std::log(tmax_);
        for (int i = 0; i < n; ++i) {
            x_[i] = lmin + (lmax - lmin) * i / (n - 1);
            const double t = std::exp(x_[i]);
            const double K = kernel::angular_kernel(params_, std::exp(t));
            const double em = std::abs(std::expm1(t));
            h_[i] = std::log(K) + 0.5 * (N_ + 2.0 * s_) * t +
                    (1.0 + 2.0 * s_) * std::log(em);
        }
    }

    double interp(double lx) const {  // monotone-grid cubic (Catmull-Rom)
        const int n = static_cast<int>(x_.size());
        const double step = (x_.back() - x_.front()) / (n - 1);
        int i = static_cast<int>((lx - x_.front()) / step);
        i = std::clamp(i, 1, n - 3);
        const double t = (lx - x_[i]) / step;
        const double p0 = h_[i - 1], p1 = h_[i], p2 = h_[i + 1], p3 = h_[i + 2];
        const double a = 0.5 * (-p0 + 3.0 * p1 - 3.0 * p2 + p3);
        const double b = 0.5 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3);
        const double cc = 0.5 * (p2 - p0);
        return ((a * t + b) * t + cc) * t + p1;
    }

    FracParams params_;
    int N_;
    double s_;
    double tmin_ = 0.0, tmax_ = 0.0;
    std::vector<double> x_, h_;
};

// Folded pair entry: the integrand h(tau) = Phi(|tau|) e^{c tau/2} E(tau)
// is exactly even, so B = (a|S|/2) int_R h = a|S| int_0^inf h. For pairs with
// properly overlapping supports the correlation never vanishes (the common
// region couples to arbitrarily distant regions), so the integral runs to a
// decay-based cutoff; otherwise it is confined to the support window.
struct PairIntegrator {
    const PhiEval& phi;
    double c;
    double s;
    double prefactor;  // a * |S^{N-1}|
    double tau_cut;    // beyond this the integrand is below e^{-55} relative

    double entry(const Trap& f, const Trap& g) const {
        const double w1_lo = g.lo() - f.hi_eff();
        double w1_hi = g.hi_eff() - f.lo();
        const bool overlap = w1_lo < 0.0;

        double lower, upper;
        if (overlap) {
            lower = 0.0;
            upper = std::max({w1_hi, -w1_lo, tau_cut});
        } else {
            lower = std::max(w1_lo, 0.0);
            upper = w1_hi;
        }
        if (std::isinf(upper)) upper = std::max({tau_cut, -w1_lo, 0.0});

        // curvature for the tau->0 asymptotic (overlapping supports only)
        const double kappa2 = overlap ? slope_product_integral(f, g, c) : 0.0;
        const double tau_small =
            1e-4 * std::min(f.hi_eff() - f.lo(), g.hi_eff() - g.lo());

        auto h = [&](double tau) {
            double E;
            if (overlap && tau < tau_small) {
                E = tau * tau * kappa2;
            } else {
                E = pair_correlation(f, g, c, tau);
            }
            if (E == 0.0) return 0.0;
            return std::exp(phi.log_phi(tau) + 0.5 * c * tau) * E;
        };

        // kink positions of E in tau
        std::vector<double> kinks;
        {
            std::vector<double> fk, gk;
            f.collect_knots(fk, 0.0);
            g.collect_knots(gk, 0.0);
            for (double b : gk)
                for (double a2 : fk) {
                    const double t = std::abs(b - a2);
                    if (t > 0.0) kinks.push_back(t);
                }
            std::sort(kinks.begin(), kinks.end());
        }

        double total = 0.0;
        auto segment = [&](double A, double B, bool singular_left) {
            if (!(B > A)) return;
            std::optional<specfun::EndpointSingularity> sing;
            if (singular_left && s != 0.5)
                sing = specfun::EndpointSingularity{1.0 - 2.0 * s, 0.0};
            total += integrate_adaptive(h, A, B, 3e-10, sing, 4000, 1e-280).value;
        };
        double prev = lower;
        for (double t : kinks) {
            if (t <= lower || t >= upper) continue;
            segment(prev, t, prev == 0.0);
            prev = t;
        }
        segment(prev, upper, prev == 0.0);
        return prefactor * total;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// RadialGrid
// ---------------------------------------------------------------------------
std::vector<double> RadialGrid::mu_weights(double gamma) const {
    if (!(gamma < 0.5 * N)) throw std::invalid_argument("mu_weights: gamma < N/2 required");
    const double S = kernel::sphere_area(N);
    std::vector<double> w(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        w[i] = S * power_cell_integral(cell_boundaries[i], cell_boundaries[i + 1],
                                       N - 1.0 - 2.0 * gamma);
    return w;
}

RadialGrid build_radial_grid(int N, double R, int M, Grading grading, double ratio) {
    if (N < 1) throw std::invalid_argument("build_radial_grid: N >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("build_radial_grid: R > 0 required");
    if (M < 8) throw std::invalid_argument("build_radial_grid: M >= 8 required");
    RadialGrid g;
    g.N = N;
    g.R = R;
    g.M = M;
    g.grading = grading;
    g.ratio = (grading == Grading::geometric) ? ratio : 0.0;
    g.nodes.resize(M);
    g.cell_boundaries.resize(M + 1);
    if (grading == Grading::uniform) {
        for (int i = 0; i <= M; ++i) g.cell_boundaries[i] = R * i / M;
        for (int i = 0; i < M; ++i)
            g.nodes[i] = 0.5 * (g.cell_boundaries[i] + g.cell_boundaries[i + 1]);
    } else {
        if (!(ratio > 0.8 && ratio < 1.0))
            throw std::invalid_argument("build_radial_grid: geometric ratio in (0.8, 1)");
        g.cell_boundaries[0] = 0.0;
        for (int i = 1; i <= M; ++i) g.cell_boundaries[i] = R * std::pow(ratio, M - i);
        for (int i = 0; i < M; ++i) g.nodes[i] = R * std::pow(ratio, M - i - 0.5);
    }
    const double S = kernel::sphere_area(N);
    g.lebesgue_weights.resize(M);
    for (int i = 0; i < M; ++i)
        g.lebesgue_weights[i] =
            S * power_cell_integral(g.cell_boundaries[i], g.cell_boundaries[i + 1], N - 1.0);
    return g;
}

PotentialSpec hardy_potential(const RadialGrid& grid, const FracParams& params, double lambda,
                              std::int64_t n) {
    if (!(lambda > 0.0)) throw std::invalid_argument("hardy_potential: lambda > 0");
    if (n != kLevelInfinity && n < 1)
        throw std::invalid_argument("hardy_potential: n >= 1 or kLevelInfinity");
    PotentialSpec p;
    p.lambda = lambda;
    p.n = n;
    p.values.resize(grid.nodes.size());
    const double eps = (n == kLevelInfinity) ? 0.0 : 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < grid.nodes.size(); ++i)
        p.values[i] = lambda / (std::pow(grid.nodes[i], 2.0 * params.s) + eps);
    return p;
}

std::vector<double> ground_state_transform(const std::vector<double>& u, const RadialGrid& grid,
                                           double gamma, TransformDirection direction) {
    if (gamma < 0.0) throw std::invalid_argument("ground_state_transform: gamma >= 0");
    if (u.size() != grid.nodes.size())
        throw std::invalid_argument("ground_state_transform: size mismatch");
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double p = std::pow(grid.nodes[i], gamma);
        v[i] = (direction == TransformDirection::forward) ? u[i] * p : u[i] / p;
    }
    return v;
}

// ---------------------------------------------------------------------------
// DiscreteOperator
// ---------------------------------------------------------------------------
Eigen::MatrixXd DiscreteOperator::matrix() const {
    const int M = size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    for (int i = 0; i < M; ++i) {
        double row = 0.0;
        for (int j = 0; j < M; ++j) {
            if (j == i) continue;
            A(i, j) = -coupling(i, j) / weights(i);
            row += coupling(i, j);
        }
        A(i, i) = kappa(i) + row / weights(i);
    }
    return A;
}

std::vector<double> DiscreteOperator::apply(const std::vector<double>& u) const {
    const int M = size();
    if (static_cast<int>(u.size()) != M) throw std::invalid_argument("apply: size mismatch");
    std::vector<double> out(M);
    for (int i = 0; i < M; ++i) {
        double acc = 0.0;
        for (int j = 0; j < M; ++j) acc += coupling(i, j) * (u[i] - u[j]);
        out[i] = kappa(i) * u[i] + acc / weights(i);
    }
    return out;
}

double DiscreteOperator::energy(const std::vector<double>& u, const std::vector<double>& v) const {
    const int M = size();
    if (static_cast<int>(u.size()) != M || static_cast<int>(v.size()) != M)
        throw std::invalid_argument("energy: size mismatch");
    double acc = 0.0;
    for (int i = 0; i < M; ++i) {
        for (int j = i + 1; j < M; ++j)
            acc += coupling(i, j) * (u[i] - u[j]) * (v[i] - v[j]);
        acc += kappa(i) * weights(i) * u[i] * v[i];
    }
    return acc;
}

DiscreteOperator assemble_operator(const RadialGrid& grid, const FracParams& params,
                                   double gamma) {
    params.validate();
    if (grid.N != params.N) throw std::invalid_argument("assemble_operator: N mismatch");
    if (!(gamma >= 0.0 && gamma < 0.5 * (params.N - 2.0 * params.s)))
        throw std::invalid_argument("assemble_operator: gamma in [0,(N-2s)/2) required");
    const int M = grid.M;
    const double N = params.N, s = params.s;
    const double c = N - 2.0 * s - 2.0 * gamma;
    const double lnR = std::log(grid.R);

    std::vector<double> l(M);
    for (int i = 0; i < M; ++i) l[i] = std::log(grid.nodes[i]);

    // P1 basis in log coordinates: wide left ramp at node 1 emulating the
    // plateau down to the origin, hat to zero at the domain boundary at node M.
    const double Lbig = std::clamp(60.0 / std::min({c, 2.0 * s + gamma, 1.0}), 10.0, 2000.0);
    std::vector<Trap> basis(M);
    for (int i = 0; i < M; ++i) {
        const double lm = (i == 0) ? l[0] - Lbig : l[i - 1];
        const double lp = (i == M - 1) ? lnR : l[i + 1];
        basis[i] = Trap{lm, l[i], l[i], lp};
    }
    const Trap deficit{l[M - 1], lnR, kInf, kInf};

    const double a = constants::a_norm(params);
    const double S = kernel::sphere_area(params.N);
    PhiEval phi(params);
    const double tau_cut = std::max(std::log(kernel::kSigmaMax), 55.0 / (2.0 * s + gamma));
    PairIntegrator integ{phi, c, s, a * S, tau_cut};

    DiscreteOperator op;
    op.kind = (gamma == 0.0) ? DiscreteOperator::Kind::frac_laplacian
                             : DiscreteOperator::Kind::weighted_Lgamma;
    op.params = params;
    op.gamma = gamma;
    op.grid = grid;
    op.coupling = Eigen::MatrixXd::Zero(M, M);
    op.weights = Eigen::VectorXd::Zero(M);
    op.kappa = Eigen::VectorXd::Zero(M);

    // lumped weights for the mu measure r^{N-1-2 gamma} dr (times |S|)
    for (int i = 0; i < M; ++i) {
        const Trap& b = basis[i];
        const double aw = N - 2.0 * gamma;
        const ExpMoments m1 = exp_moments(aw, b.k0, b.k1);
        const ExpMoments m2 = exp_moments(aw, b.k1, b.k3);
        op.weights(i) = S * (m1.j1 / (b.k1 - b.k0) + m2.j0 - m2.j1 / (b.k3 - b.k1));
    }

    // couplings (negated Galerkin off-diagonals), exactly symmetric
    double max_coupling = 0.0;
    for (int i = 0; i < M; ++i) {
        for (int j = i + 1; j < M; ++j) {
            const double sij = -integ.entry(basis[i], basis[j]);
            op.coupling(i, j) = sij;
            op.coupling(j, i) = sij;
            max_coupling = std::max(max_coupling, std::abs(sij));
        }
    }
    // sign validation: a genuinely positive Galerkin off-diagonal signals a
    // quadrature failure; tiny negatives are roundoff and are clamped.
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j) continue;
            if (op.coupling(i, j) < -1e-12 * max_coupling)
                throw std::runtime_error("assemble_operator: off-diagonal sign violation");
            if (op.coupling(i, j) < 0.0) op.coupling(i, j) = 0.0;
        }

    // killing rates from the boundary-layer deficit plus the exterior
    for (int i = 0; i < M; ++i) {
        double kf = -integ.entry(basis[i], deficit);
        // analytic remainder beyond tau_cut: E -> -int basis e^{c x}
        double mass_c = 0.0;
        {
            const Trap& b = basis[i];
            const ExpMoments m1 = exp_moments(c, b.k0, b.k1);
            mass_c += m1.j1 / (b.k1 - b.k0);
            const ExpMoments m2 = exp_moments(c, b.k1, b.k3);
            mass_c += m2.j0 - m2.j1 / (b.k3 - b.k1);
        }
        kf += a * S * mass_c * S * std::exp(-(2.0 * s + gamma) * tau_cut) / (2.0 * s + gamma);
        if (kf < 0.0) {
            if (kf < -1e-12 * max_coupling)
                throw std::runtime_error("assemble_operator: negative killing");
            kf = 0.0;
        }
        op.kappa(i) = kf / op.weights(i);
    }
    return op;
}

std::vector<double> power_tail_correction(const DiscreteOperator& op, double theta) {
    const double N = op.params.N, s = op.params.s, gamma = op.gamma;
    if (!(theta > 0.0 && theta < N - 2.0 * s - 2.0 * gamma))
        throw std::invalid_argument("power_tail_correction: theta out of range");
    const double a = constants::a_norm(op.params);
    const int M = op.size();
    std::vector<double> tail(M);
    for (int i = 0; i < M; ++i) {
        const double r = op.grid.nodes[i];
        const double c = op.grid.R / r;
        const double integral =
            kernel::kernel_tail_integral(op.params, c, N - 1.0 - gamma - theta);
        tail[i] = a * std::pow(r, -2.0 * s - 2.0 * gamma - theta) * integral;
    }
    return tail;
}

std::vector<double> lumped_weights(const DiscreteOperator& op, double q) {
    const double N = op.params.N;
    if (!(q < N)) throw std::invalid_argument("lumped_weights: q < N required");
    const double aw = N - q;
    const int M = op.size();
    const double lnR = std::log(op.grid.R);
    const double s = op.params.s, gamma = op.gamma;
    const double c = N - 2.0 * s - 2.0 * gamma;
    const double Lbig = std::clamp(60.0 / std::min({c, 2.0 * s + gamma, 1.0}), 10.0, 2000.0);
    std::vector<double> l(M);
    for (int i = 0; i < M; ++i) l[i] = std::log(op.grid.nodes[i]);
    const double S = kernel::sphere_area(op.params.N);
    std::vector<double> w(M);
    for (int i = 0; i < M; ++i) {
        const double lm = (i == 0) ? l[0] - Lbig : l[i - 1];
        const double lp = (i == M - 1) ? lnR : l[i + 1];
        const ExpMoments m1 = exp_moments(aw, lm, l[i]);
        const ExpMoments m2 = exp_moments(aw, l[i], lp);
        w[i] = S * (m1.j1 / (l[i] - lm) + m2.j0 - m2.j1 / (lp - l[i]));
    }
    return w;
}

}  // namespace hardyheat::discrete
