// Special functions and adaptive quadrature primitives shared by all modules.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardyheat::specfun {

/// Euler-Mascheroni constant used by the Weierstrass product oracle.
inline constexpr double kEulerMascheroni = 0.57721566490153286;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when an adaptive integration exhausts its refinement budget
/// before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;   // >= 0
    std::int64_t evaluations = 0;  // >= 1 on success
};

/// Integrable algebraic endpoint behavior f ~ (x-a)^left resp. (b-x)^right.
/// An exponent of 0 means "no declared singularity". Exponents must be > -1.
struct EndpointSingularity {
    double left = 0.0;
    double right = 0.0;
};

/// Euler Gamma via a Lanczos approximation (reflection for x < 0.5).
/// Throws std::domain_error at the poles x = 0, -1, -2, ... and
/// std::overflow_error above the representable range (x > ~171.62).
double gamma(double x);

/// ln Gamma(x) for x > 0; throws std::domain_error otherwise.
double log_gamma(double x);

/// Independent slow oracle: 1/Gamma(x) = x e^{g x} prod (1+x/n) e^{-x/n},
/// truncated at `terms` factors with an asymptotic tail correction.
double gamma_weierstrass(double x, std::int64_t terms);

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (symmetric half listed).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
void gk15(const F& f, double a, double b, double& value, double& err) {
    const double mid = 0.5 * (a + b);
    const double hlf = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double dx = hlf * kGK15Nodes[k];
        const double f1 = f(mid - dx);
        const double f2 = (k == 7) ? 0.0 : f(mid + dx);
        const double fs = (k == 7) ? f1 : f1 + f2;
        resk += kGK15Weights[k] * fs;
        if (k % 2 == 1) resg += kG7Weights[k / 2] * fs;
    }
    value = resk * hlf;
    err = std::abs(resk - resg) * hlf;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature with interval bisection.
///
/// Supports b = +infinity for a > 0 through the map sigma = 1/t, and
/// integrable algebraic endpoint singularities through the substitution
/// x = a + u^{1/(1+e)} (and mirrored at b). Deterministic: a fixed
/// worst-first refinement order makes repeated calls bit-identical.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double tol,
                                    std::optional<EndpointSingularity> singularity = std::nullopt,
                                    std::int64_t max_intervals = 20000,
                                    double abs_floor = -1.0) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tol must be > 0");
    if (abs_floor < 0.0) abs_floor = tol;  // default: tol doubles as absolute target
    if (std::isinf(b)) {
        if (!(a > 0.0)) throw std::invalid_argument("integrate_adaptive: infinite range needs a > 0");
        if (singularity && singularity->right != 0.0)
            throw std::invalid_argument("integrate_adaptive: right singularity with infinite limit");
        auto g = [&f](double t) { return f(1.0 / t) / (t * t); };
        EndpointSingularity sub;
        if (singularity) sub.right = singularity->left;  // x->a maps to t -> 1/a (right end)
        return integrate_adaptive(g, 0.0, 1.0 / a, tol,
                                  singularity ? std::optional<EndpointSingularity>(sub) : std::nullopt,
                                  max_intervals, abs_floor);
    }
    if (!(a < b)) throw std::invalid_argument("integrate_adaptive: requires a < b");

    const double el = singularity ? singularity->left : 0.0;
    const double er = singularity ? singularity->right : 0.0;
    if (el <= -1.0 || er <= -1.0)
        throw std::invalid_argument("integrate_adaptive: endpoint exponent must be > -1");

    // Remove declared algebraic endpoint behavior by substitution; split when
    // both ends are declared.
    if (el != 0.0 && er != 0.0) {
        const double m = 0.5 * (a + b);
        auto r1 = integrate_adaptive(f, a, m, 0.5 * tol, EndpointSingularity{el, 0.0},
                                     max_intervals, 0.5 * abs_floor);
        auto r2 = integrate_adaptive(f, m, b, 0.5 * tol, EndpointSingularity{0.0, er},
                                     max_intervals, 0.5 * abs_floor);
        return {r1.value + r2.value, r1.error_estimate + r2.error_estimate,
                r1.evaluations + r2.evaluations};
    }
    if (el != 0.0) {
        const double p = 1.0 / (1.0 + el);
        auto g = [&f, a, p](double u) {
            const double up = std::pow(u, p);
            return f(a + up) * p * up / u;  // p * u^{p-1} * f
        };
        const double ub = std::pow(b - a, 1.0 + el);
        return integrate_adaptive(g, 0.0, ub, tol, std::nullopt, max_intervals, abs_floor);
    }
    if (er != 0.0) {
        const double p = 1.0 / (1.0 + er);
        auto g = [&f, b, p](double u) {
            const double up = std::pow(u, p);
            return f(b - up) * p * up / u;
        };
        const double ub = std::pow(b - a, 1.0 + er);
        return integrate_adaptive(g, 0.0, ub, tol, std::nullopt, max_intervals, abs_floor);
    }

    struct Interval {
        double a, b, value, err;
    };
    std::vector<Interval> heap;
    auto worse = [](const Interval& x, const Interval& y) {
        if (x.err != y.err) return x.err < y.err;   // max-heap on error
        return x.a > y.a;                           // deterministic tie-break
    };

    std::int64_t evals = 0;
    auto push = [&](double lo, double hi) {
        Interval iv{lo, hi, 0.0, 0.0};
        detail::gk15(f, lo, hi, iv.value, iv.err);
        evals += 15;
        heap.push_back(iv);
        std::push_heap(heap.begin(), heap.end(), worse);
    };

    push(a, b);
    double total = heap.front().value;
    double toterr = heap.front().err;
    std::int64_t n = 1;
    while (toterr > abs_floor && toterr > tol * std::abs(total)) {
        if (n >= max_intervals)
            throw QuadratureError("integrate_adaptive: refinement budget exhausted (err=" +
                                  std::to_string(toterr) + ")");
        std::pop_heap(heap.begin(), heap.end(), worse);
        Interval iv = heap.back();
        heap.pop_back();
        const double m = 0.5 * (iv.a + iv.b);
        if (!(iv.a < m && m < iv.b)) {  // interval at machine resolution
            heap.push_back(iv);
            std::push_heap(heap.begin(), heap.end(), worse);
            break;
        }
        total -= iv.value;
        toterr -= iv.err;
        push(iv.a, m);
        total += heap.back().value;
        toterr += heap.back().err;
        push(m, iv.b);
        total += heap.back().value;
        toterr += heap.back().err;
        ++n;
    }
    // re-sum for a tighter, order-independent value
    double value = 0.0, err = 0.0;
    std::vector<Interval> sorted(heap.begin(), heap.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& x, const Interval& y) { return x.a < y.a; });
    for (const auto& iv : sorted) {
        value += iv.value;
        err += iv.err;
    }
    return {value, err, evals};
}

}  // namespace hardyheat::specfun
