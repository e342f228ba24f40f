#include "slewind/cft.hpp"

#include <cmath>

namespace slewind::cft {

double alpha_plus(Kappa k) { return 2.0 / std::sqrt(*k); }
double alpha_minus(Kappa k) { return -std::sqrt(*k) / 2.0; }
double alpha_zero(Kappa k) { return 0.5 * (alpha_plus(k) + alpha_minus(k)); }

double central_charge(Kappa k) {
    double kap = *k;
    return (6.0 - kap) * (3.0 * kap - 8.0) / (2.0 * kap);
}

double kac_weight(KacLabel label, Kappa k) {
    double kap = *k;
    double a = kap * label.r - 4.0 * label.s;
    double b = kap - 4.0;
    return (a * a - b * b) / (16.0 * kap);
}

Charge charge_of(KacLabel label, Kappa k) {
    return Charge{0.5 * (1.0 - label.r) * alpha_minus(k) + 0.5 * (1.0 - label.s) * alpha_plus(k)};
}

double vertex_dimension(Charge c, Kappa k) {
    return c.alpha * (c.alpha - 2.0 * alpha_zero(k));
}

double neutrality_defect(const std::vector<Charge>& charges, Kappa k) {
    if (charges.empty()) throw std::invalid_argument("neutrality_defect: empty charge list");
    double s = 0.0;
    for (const auto& c : charges) s += c.alpha;
    return s - 2.0 * alpha_zero(k);
}

Complex cross_ratio(Complex s, Complex z1, const BoundaryFrame& frame) {
    if (frame.x2_infinite) {
        // (x1-x2)/(s-x2) -> 1
        return (z1 - s) / (z1 - frame.x1);
    }
    if (frame.x1_infinite) {
        // (x1-x2)/(z1-x1) -> 1
        return (z1 - s) / (s - frame.x2);
    }
    if (s == Complex(frame.x2, 0.0))
        throw std::invalid_argument("cross_ratio: s coincides with x2");
    return (z1 - s) * (frame.x1 - frame.x2) / ((z1 - frame.x1) * (s - frame.x2));
}

FrameMap frame_map(const BoundaryFrame& frame) {
    FrameMap m;
    if (frame.is_standard()) return m;
    if (frame.x2_infinite) {
        // s -> s - x1
        m = FrameMap{1.0, -frame.x1, 0.0, 1.0};
    } else if (frame.x1_infinite) {
        // s -> -1/(s - x2)
        m = FrameMap{0.0, -1.0, 1.0, -frame.x2};
    } else if (frame.x1 < frame.x2) {
        // s -> (s - x1)/(x2 - s)
        m = FrameMap{1.0, -frame.x1, -1.0, frame.x2};
    } else {
        // s -> (s - x1)/(s - x2)
        m = FrameMap{1.0, -frame.x1, 1.0, -frame.x2};
    }
    return m;
}

}  // namespace slewind::cft
