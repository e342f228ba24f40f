#pragma once

#include <complex>

#include "slewind/types.hpp"

namespace slewind::num {

// Gamma function. Real arguments delegate to std::tgamma; complex arguments
// use a Lanczos approximation with reflection for Re z < 0.5.
double gamma_fn(double x);
Complex gamma_fn(Complex z);

double log_gamma(double x);   // log |Gamma(x)|, x > 0
double digamma(double x);

double beta_fn(double a, double b);

// Gauss hypergeometric 2F1(a,b;c;x) for real parameters and x <= 1.
// Series on |x| small, Pfaff transformation for x < 0, Gauss/connection
// formulas near x = 1 (including the integer c-a-b logarithmic cases).
double hyp2f1(double a, double b, double c, double x);

}  // namespace slewind::num
