#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slewind/special.hpp"

namespace slewind::num {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Lanczos g=7, n=9 coefficients (Godfrey). ~1e-14 relative on the half-plane.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

Complex lanczos_gamma(Complex z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos_gamma(1.0 - z));
    }
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    Complex t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    return std::tgamma(x);
}

Complex gamma_fn(Complex z) {
    if (z.imag() == 0.0) {
        if (is_nonpositive_integer(z.real()))
            throw std::domain_error("gamma_fn: pole at nonpositive integer");
        return Complex(std::tgamma(z.real()), 0.0);
    }
    return lanczos_gamma(z);
}

double log_gamma(double x) {
    if (x <= 0.0) throw std::domain_error("log_gamma requires x > 0");
    return std::lgamma(x);
}

double digamma(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("digamma: pole at nonpositive integer");
    // reflection for x < 0, recurrence up to x >= 8, then asymptotic series
    if (x < 0.0)
        return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
    double r = 0.0;
    while (x < 8.0) {
        r -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    // psi(x) ~ ln x - 1/(2x) - sum B_{2n}/(2n x^{2n})
    double s = std::log(x) - 0.5 * inv;
    s -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    return r + s;
}

double beta_fn(double a, double b) {
    if (a > 0.0 && b > 0.0)
        return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
}

}  // namespace slewind::num
