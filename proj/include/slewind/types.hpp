#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace slewind {

using Complex = std::complex<double>;

// Dimensionless SLE parameter, dilute regime 2 < kappa < 4.
struct Kappa {
    double value = 8.0 / 3.0;

    Kappa() = default;
    explicit Kappa(double k) : value(k) {
        if (!(k > 2.0 && k < 4.0))
            throw std::invalid_argument("kappa outside dilute range (2,4): " + std::to_string(k));
    }
    double operator*() const { return value; }
};

// Kac label (r,s); r,s nonzero integers (negative = reflected label).
struct KacLabel {
    int r = 1;
    int s = 1;
    KacLabel() = default;
    KacLabel(int r_, int s_) : r(r_), s(s_) {
        if (r == 0 || s == 0) throw std::invalid_argument("Kac label indices must be nonzero");
    }
};

// Coulomb-gas charge.
struct Charge {
    double alpha = 0.0;
};

// Marked bulk point, Im z > 0.
struct HalfPlanePoint {
    Complex z;
    HalfPlanePoint() = default;
    explicit HalfPlanePoint(Complex zz) : z(zz) {
        if (!(zz.imag() > 0.0))
            throw std::invalid_argument("marked point must lie in the upper half-plane");
    }
};

// Boundary anchors (x1, x2); at most one may sit at infinity.
struct BoundaryFrame {
    double x1 = 0.0;
    double x2 = 0.0;
    bool x1_infinite = false;
    bool x2_infinite = true;

    BoundaryFrame() = default;  // canonical (0, inf)
    BoundaryFrame(double a, double b) : x1(a), x2(b), x1_infinite(false), x2_infinite(false) {
        if (a == b) throw std::invalid_argument("degenerate boundary frame x1 == x2");
    }
    static BoundaryFrame standard() { return BoundaryFrame{}; }
    static BoundaryFrame with_x2_at_infinity(double a) {
        BoundaryFrame f;
        f.x1 = a;
        f.x1_infinite = false;
        f.x2_infinite = true;
        return f;
    }
    static BoundaryFrame with_x1_at_infinity(double b) {
        BoundaryFrame f;
        f.x2 = b;
        f.x1_infinite = true;
        f.x2_infinite = false;
        return f;
    }
    bool is_standard() const { return !x1_infinite && x2_infinite && x1 == 0.0; }
    bool has_infinite_endpoint() const { return x1_infinite || x2_infinite; }
};

// Correlator value carrying the branch-phase convention it was produced under.
// For frames with an endpoint at infinity, values are reported in the
// infinity-normalized convention where H0 == 1.
struct CorrelatorValue {
    Complex value{0.0, 0.0};
    BoundaryFrame frame;
    std::string branch_tag = "physical-real";
};

struct ProbabilityValue {
    double p = 0.0;
};

// Raised when assembled weights/probabilities violate positivity beyond
// numerical slack; signals that the quadrature order is too coarse.
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a Richardson ladder diverges instead of settling.
struct extrapolation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a contour cannot be deformed clear of a singularity.
struct contour_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace slewind
