#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "slewind/quadrature.hpp"
#include "slewind/types.hpp"

namespace slewind::num {

// (u - base_point)^exponent appearing in a contour integrand.
struct PowerFactor {
    Complex base_point;
    double exponent = 0.0;
};

// Straight contour piece with a branch-anchor convention tag. Branches of all
// power factors are taken principal at the segment midpoint and continued
// outward, so homotopic deformations of the same segment agree.
struct Segment {
    Complex a;
    Complex b;
    std::string branch_anchor = "midpoint-principal";
};

// A quadrature-ready contour: polyline vertices plus endpoint power exponents
// that the first/last panels absorb into Gauss-Jacobi weights.
struct QuadPath {
    std::vector<Complex> verts;  // >= 2, path start .. path end
    double exp_start = 0.0;      // (u - verts.front())^exp_start
    double exp_end = 0.0;        // (u - verts.back())^exp_end
};

// Discretized path: nodes in path order; weights fold in leg jacobians and
// the absorbed endpoint powers.
struct PathNodes {
    Eigen::ArrayXcd u;
    Eigen::ArrayXcd w;
    int start_panel_size = 0;  // nodes belonging to the start-absorbing panel
    int end_panel_start = 0;   // first node index of the end-absorbing panel
    Complex start_point, end_point;
    double exp_start = 0.0, exp_end = 0.0;
    double dir_first_arg = 0.0;  // Arg of first/last leg directions (branch anchors)
    double dir_last_arg = 0.0;
};

enum class FactorRole { PathStart, PathEnd, Foreign };

// Polyline construction: detour around near-contour branch points, keeping
// each strictly-off-line obstacle on the side it already occupies (homotopy
// of the straight segment) and on-line obstacles on the left of travel.
QuadPath build_path(Complex a, Complex b, double exp_a, double exp_b,
                    const std::vector<Complex>& obstacles, double clearance_frac = 1e-3);

// Panelize and emit nodes. Panels split while a refine target is closer than
// 0.8 x panel length; the first/last panels use one-sided Gauss-Jacobi rules.
PathNodes path_nodes(const QuadPath& path, int order,
                     const std::vector<Complex>& refine_points,
                     const std::vector<std::pair<Complex, Complex>>& refine_segments = {});

// Values of (u - p)^e at every node, phase-continued along the path. For the
// PathStart/PathEnd roles the nodes of the absorbing panel yield 1 (their
// contribution lives in the weights).
Eigen::ArrayXcd factor_values(const PathNodes& nodes, Complex p, double e, FactorRole role);

// Phase-continued coupling matrix (u_hi[i] - u_lo[j])^e, anchored principal at
// the midpoint node pair and unwrapped across the grid.
Eigen::ArrayXXcd coupling_matrix(const PathNodes& hi, const PathNodes& lo, double e);

// Spec-level single-segment integral: prod_j (u - p_j)^{e_j} * poly(u) du.
// Endpoint singularities must match the rule's exponents.
Complex segment_integral(const std::vector<PowerFactor>& factors,
                         const std::function<Complex(Complex)>& polynomial_part,
                         const Segment& seg, const JacobiRule& rule);

double dist_point_segment(Complex p, Complex a, Complex b);
double dist_segment_segment(Complex a1, Complex b1, Complex a2, Complex b2);

}  // namespace slewind::num
