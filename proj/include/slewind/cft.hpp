#pragma once

#include <vector>

#include "slewind/types.hpp"

namespace slewind::cft {

// alpha_+ = 2/sqrt(kappa), alpha_- = -sqrt(kappa)/2, alpha_0 = (alpha_+ + alpha_-)/2
double alpha_plus(Kappa k);
double alpha_minus(Kappa k);
double alpha_zero(Kappa k);

// c = (6-kappa)(3kappa-8)/(2kappa); equals 1 - 24 alpha_0^2.
double central_charge(Kappa k);

// h_{r,s} = ((kappa r - 4 s)^2 - (kappa-4)^2) / (16 kappa)
double kac_weight(KacLabel label, Kappa k);

// alpha_{r,s} = (1-r) alpha_-/2 + (1-s) alpha_+/2
Charge charge_of(KacLabel label, Kappa k);

// h_alpha = alpha (alpha - 2 alpha_0); invariant under alpha -> 2 alpha_0 - alpha.
double vertex_dimension(Charge c, Kappa k);

// sum(alpha_i) - 2 alpha_0; zero iff the vertex correlator is nonvanishing.
double neutrality_defect(const std::vector<Charge>& charges, Kappa k);

// eta(s) = (z1 - s)(x1 - x2) / ((z1 - x1)(s - x2)), infinite endpoints taken
// analytically (the (. - x2)/(x1 - x2) pair cancels in the limit).
Complex cross_ratio(Complex s, Complex z1, const BoundaryFrame& frame);

// Half-plane Moebius map phi with phi(x1)=0, phi(x2)=inf, phi(H)=H.
// Used to reduce every computation to the canonical (0, inf) frame.
struct FrameMap {
    // phi(s) = (a s + b) / (c s + d), real coefficients, ad - bc > 0
    double a = 1, b = 0, c = 0, d = 1;
    Complex operator()(Complex s) const { return (a * s + b) / (c * s + d); }
    Complex deriv(Complex s) const {
        Complex den = c * s + d;
        return (a * d - b * c) / (den * den);
    }
};

FrameMap frame_map(const BoundaryFrame& frame);

}  // namespace slewind::cft
