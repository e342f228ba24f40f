#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "slewind/special.hpp"

// 2F1(a,b;c;x) for real parameters, x <= 1.
//
// Route map:
//   x == 0, a or b == 0         -> 1
//   b == c (or a == c)          -> (1-x)^{-a}  (binomial reduction)
//   a or b negative integer     -> terminating series (any x)
//   x < 0                       -> Pfaff x -> x/(x-1), lands in [0,1)
//   0 <= x <= 0.7               -> Gauss series
//   0.7 < x < 1                 -> 1-x connection formula; c-a-b integer
//                                  handled by the psi-series branches
//   x == 1                      -> Gauss summation (needs c-a-b > 0)

namespace slewind::num {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kEps = 1e-16;

bool nonpos_int(double x) { return x <= 0.0 && x == std::floor(x); }

double rgamma(double x) {  // 1/Gamma, zero at poles
    if (nonpos_int(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

double gauss_series(double a, double b, double c, double x) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum) && n > 2) return sum;
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

double terminating_series(double a, double b, double c, double x) {
    // a is a nonpositive integer
    int m = static_cast<int>(-a);
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < m; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
    }
    return sum;
}

// c = a+b+m, integer m >= 0: A&S 15.3.10 / 15.3.11 near x=1.
double log_case(double a, double b, int m, double x) {
    double s = 1.0 - x;
    double lnS = std::log(s);
    double sum = 0.0;
    if (m == 0) {
        double pre = std::tgamma(a + b) * rgamma(a) * rgamma(b);
        double poch = 1.0;
        for (int n = 0; n < kMaxTerms; ++n) {
            double k = 2.0 * digamma(n + 1.0) - digamma(a + n) - digamma(b + n) - lnS;
            double t = poch * k;
            sum += t;
            if (std::abs(t) < kEps * std::abs(sum) && n > 2) break;
            poch *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0)) * s;
        }
        return pre * sum;
    }
    double c = a + b + m;
    // finite part
    double fin = 0.0, t = 1.0;
    for (int n = 0; n < m; ++n) {
        if (n > 0) t *= (a + n - 1.0) * (b + n - 1.0) / (n * (1.0 - m + n - 1.0)) * s;
        fin += t;
    }
    fin *= std::tgamma(m) * std::tgamma(c) * rgamma(a + m) * rgamma(b + m);
    // log part
    double pre = (m % 2 ? -1.0 : 1.0) * std::tgamma(c) * rgamma(a) * rgamma(b);
    double poch = 1.0 / std::tgamma(m + 1.0);
    poch *= std::pow(s, m);
    double logsum = 0.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        double k = digamma(n + 1.0) + digamma(n + m + 1.0) - digamma(a + n + m) - digamma(b + n + m);
        double term = poch * (k - lnS);
        logsum += term;
        if (std::abs(term) < kEps * (std::abs(logsum) + 1e-300) && n > 2) break;
        poch *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * s;
    }
    return fin + pre * logsum;
}

double near_one(double a, double b, double c, double x) {
    double d = c - a - b;
    double dr = std::round(d);
    if (std::abs(d - dr) < 1e-8) {
        int m = static_cast<int>(dr);
        if (m >= 0) return log_case(a, b, m, x);
        // Euler flip to positive integer case
        return std::pow(1.0 - x, d) * log_case(c - a, c - b, -m, x);
    }
    double s = 1.0 - x;
    double t1 = std::tgamma(c) * std::tgamma(d) * rgamma(c - a) * rgamma(c - b) *
                gauss_series(a, b, 1.0 - d, s);
    double t2 = std::tgamma(c) * std::tgamma(-d) * rgamma(a) * rgamma(b) *
                std::pow(s, d) * gauss_series(c - a, c - b, 1.0 + d, s);
    return t1 + t2;
}

}  // namespace

double hyp2f1(double a, double b, double c, double x) {
    if (x > 1.0) throw std::domain_error("hyp2f1: x > 1 unsupported");
    if (nonpos_int(c) && !(nonpos_int(a) && a > c) && !(nonpos_int(b) && b > c))
        throw std::domain_error("hyp2f1: c is a nonpositive integer");
    if (x == 0.0 || a == 0.0 || b == 0.0) return 1.0;
    if (b == c) return std::pow(1.0 - x, -a);
    if (a == c) return std::pow(1.0 - x, -b);
    if (nonpos_int(a)) return terminating_series(a, b, c, x);
    if (nonpos_int(b)) return terminating_series(b, a, c, x);
    if (x == 1.0) {
        if (c - a - b <= 0.0) throw std::domain_error("hyp2f1 divergent at x=1");
        return std::tgamma(c) * std::tgamma(c - a - b) * rgamma(c - a) * rgamma(c - b);
    }
    if (x < 0.0) {
        // Pfaff; transformed argument in (0,1)
        double w = x / (x - 1.0);
        if (w <= 0.7) return std::pow(1.0 - x, -a) * gauss_series(a, c - b, c, w);
        return std::pow(1.0 - x, -a) * near_one(a, c - b, c, w);
    }
    if (x <= 0.7) return gauss_series(a, b, c, x);
    return near_one(a, b, c, x);
}

}  // namespace slewind::num
