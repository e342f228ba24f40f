#pragma once

#include <Eigen/Dense>

#include "slewind/types.hpp"

namespace slewind::num {

// Gauss-Jacobi rule on (-1,1) with weight (1-x)^alpha (1+x)^beta.
// Nodes/weights from the Golub-Welsch eigenproblem of the Jacobi matrix.
struct JacobiRule {
    int order = 0;
    double alpha_exp = 0.0;
    double beta_exp = 0.0;
    Eigen::ArrayXd nodes;    // strictly increasing in (-1,1)
    Eigen::ArrayXd weights;  // positive, sum = 2^{a+b+1} B(a+1,b+1)
};

JacobiRule jacobi_rule(int order, double alpha_exp, double beta_exp);

// Shared immutable cache (rules are reused heavily across contours/threads).
const JacobiRule& cached_jacobi_rule(int order, double alpha_exp, double beta_exp);

// Richardson extrapolation of lim_{eps->0} value/eps^exponent from samples
// (eps_k, value_k) at geometrically decreasing eps. Returns the limit and an
// error estimate from the last correction applied.
struct RichardsonResult {
    double limit = 0.0;
    double error_estimate = 0.0;
};

RichardsonResult richardson_limit(const std::vector<std::pair<double, double>>& samples,
                                  double exponent);

}  // namespace slewind::num
