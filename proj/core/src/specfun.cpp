#include "hardyheat/specfun.hpp"

#include <cmath>

namespace hardyheat::specfun {

namespace {

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double lanczos_sum(double x) {  // x >= 0.5, series in x-1
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    return acc;
}

double gamma_positive(double x) {  // x >= 0.5
    const double t = x - 1.0 + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_sum(x);
}

}  // namespace

double gamma(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma: pole at non-positive integer x=" + std::to_string(x));
    if (x > 171.63)
        throw std::overflow_error("gamma: overflow for x=" + std::to_string(x));
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
    }
    return gamma_positive(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5) {
        // log-reflection keeps relative accuracy for tiny x
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double t = x - 1.0 + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

double gamma_weierstrass(double x, std::int64_t terms) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_weierstrass: pole at non-positive integer");
    if (terms < 1) throw std::invalid_argument("gamma_weierstrass: terms >= 1 required");
    // log|1/Gamma(x)| = log|x| + g x + sum_n [log|1+x/n| - x/n], sign tracked
    // separately (factors 1+x/n are negative exactly for n < -x).
    double acc = 0.0;
    for (std::int64_t n = terms; n >= 1; --n) {  // small terms first
        const double z = x / static_cast<double>(n);
        acc += std::log(std::abs(1.0 + z)) - z;
    }
    // tail over n > terms: log(1+z)-z = -z^2/2 + z^3/3 - z^4/4 + ..., with
    // sum_{n>T} n^{-k} from the polygamma asymptotics at T+1.
    const double z = static_cast<double>(terms) + 1.0;
    const double s2 = 1.0 / z + 1.0 / (2.0 * z * z) + 1.0 / (6.0 * z * z * z);
    const double s3 = 1.0 / (2.0 * z * z) + 1.0 / (2.0 * z * z * z);
    const double s4 = 1.0 / (3.0 * z * z * z);
    acc += -0.5 * x * x * s2 + (x * x * x / 3.0) * s3 - 0.25 * x * x * x * x * s4;
    const double log_abs_inv = std::log(std::abs(x)) + kEulerMascheroni * x + acc;
    double sign = (x < 0.0) ? -1.0 : 1.0;
    if (x < 0.0 && (static_cast<std::int64_t>(std::floor(-x)) % 2 != 0)) sign = -sign;
    return sign * std::exp(-log_abs_inv);
}

}  // namespace hardyheat::specfun
