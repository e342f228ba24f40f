#pragma once

#include <optional>
#include <span>
#include <vector>

#include "slewind/cft.hpp"
#include "slewind/contour.hpp"
#include "slewind/types.hpp"

namespace slewind::cg {

// Vertex operator V_alpha at a point of the plane.
struct VertexInsertion {
    Complex position;
    Charge charge;
    KacLabel label;
};

// Screening charge Q^+/Q^- integrated along a simple path between two
// insertion positions.
struct ScreeningContour {
    Complex endpoint_a;
    Complex endpoint_b;
    int sign = -1;  // -1 -> V_{alpha_-}, +1 -> V_{alpha_+}
    std::vector<num::Segment> path;
};

// Screened correlator specification. Assembly rejects specs violating the
// neutrality condition.
struct BlockSpec {
    std::vector<VertexInsertion> insertions;
    std::vector<ScreeningContour> contours;
    BoundaryFrame frame;
    Kappa kappa;
};

// Full Coulomb-gas integrand at screening positions u (principal branches;
// the quadrature pipeline tracks phases continuously instead).
Complex integrand(const BlockSpec& spec, std::span<const Complex> u);

// N_1 = e^{2 i pi h_{2,1}} Gamma(2 - k/2) / Gamma(1 - k/4)^2; N_n = N_1^n.
Complex n1_constant(Kappa k);

// The paper's n-fold screening integral over contours (0,eta1), (eta2,eta3),
// ..., with integrand prod_i u_i^{-k/4} (1-u_i) prod_j (u_i-eta_j)^{-k/4}
// prod_{i<j}(u_i-u_j)^{k/2}. etas.size() must be 2n-1.
Complex jn_integral(std::span<const Complex> etas, Kappa k, int order);

// H_n / H_0 in the canonical (0,inf) frame; real by construction on the
// physical slice (conjugate-symmetric contours + one calibrated phase).
double hn_ratio(std::span<const Complex> zs, Kappa k, int order);

// H_n correlator for an arbitrary frame. Values for frames with an endpoint
// at infinity are reported in the infinity-normalized convention (H0 == 1).
CorrelatorValue hn_cg(const std::vector<HalfPlanePoint>& points, const BoundaryFrame& frame,
                      Kappa k, int order);
CorrelatorValue h1_cg(HalfPlanePoint z, const BoundaryFrame& frame, Kappa k, int order);

// All 2^N subset ratios H_{|S|}(Z_S)/H_0, indexed by bitmask; evaluated in
// parallel and memoized by the caller.
std::vector<double> subset_ratios(const std::vector<HalfPlanePoint>& points,
                                  const BoundaryFrame& frame, Kappa k, int order);

// One-point Green's block: <Phi_{3,1} Phi_{1,2} Phi_{1,2}>_H / H0 at kappa=8/3,
// sign-calibrated so the value at z=i in the (0,inf) frame equals +1.
// `order` controls the contour quadrature of the block integral.
double green1_block(HalfPlanePoint z, const BoundaryFrame& frame, int order);

// Two-point Green's block <Phi31 Phi31 Phi12 Phi12>_H / H0 at kappa=8/3 via
// the 4-fold screened twist integrals: the epsilon,delta -> 0 coefficient of
// the pairwise-collapsed H_4 (OPE channel extraction). Normalization fixed by
// the collapse identity against green1_block.
double green2_block(HalfPlanePoint z, HalfPlanePoint w, const BoundaryFrame& frame, int order);

// H_4/H_0 with two collapsing pairs for the Green's pipeline.
double h4_pair_ratio(Complex z1, Complex z2, Complex z3, Complex z4, Kappa k, int order);

}  // namespace slewind::cg
