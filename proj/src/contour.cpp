#include "slewind/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slewind::num {

namespace {

constexpr double kPi = std::numbers::pi;

Complex polar_pow(double mag, double theta, double e) {
    return std::polar(std::pow(mag, e), e * theta);
}

// wrap delta into (-pi, pi]
double wrap_angle(double d) {
    return d - 2.0 * kPi * std::round(d / (2.0 * kPi));
}

void unwrap_from(std::vector<double>& th, int k0) {
    for (size_t j = k0 + 1; j < th.size(); ++j) th[j] = th[j - 1] + wrap_angle(th[j] - th[j - 1]);
    for (int j = k0 - 1; j >= 0; --j) th[j] = th[j + 1] + wrap_angle(th[j] - th[j + 1]);
}

struct Panel {
    Complex a, b;
    bool absorb_start = false;
    bool absorb_end = false;
};

void split_panel(const Panel& p, const std::vector<Complex>& pts,
                 const std::vector<std::pair<Complex, Complex>>& segs, double min_len,
                 std::vector<Panel>& out, int depth) {
    double len = std::abs(p.b - p.a);
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& q : pts) dmin = std::min(dmin, dist_point_segment(q, p.a, p.b));
    for (const auto& s : segs)
        dmin = std::min(dmin, dist_segment_segment(p.a, p.b, s.first, s.second));
    if (depth < 24 && len > min_len && dmin < 0.8 * len) {
        Complex m = 0.5 * (p.a + p.b);
        split_panel(Panel{p.a, m, p.absorb_start, false}, pts, segs, min_len, out, depth + 1);
        split_panel(Panel{m, p.b, false, p.absorb_end}, pts, segs, min_len, out, depth + 1);
        return;
    }
    out.push_back(p);
}

}  // namespace

double dist_point_segment(Complex p, Complex a, Complex b) {
    Complex d = b - a;
    double L2 = std::norm(d);
    if (L2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(d)).real() / L2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double dist_segment_segment(Complex a1, Complex b1, Complex a2, Complex b2) {
    auto side = [](Complex a, Complex b, Complex p) {
        return ((b - a).real() * (p - a).imag() - (b - a).imag() * (p - a).real());
    };
    double d1 = side(a1, b1, a2), d2 = side(a1, b1, b2);
    double d3 = side(a2, b2, a1), d4 = side(a2, b2, b1);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;  // proper crossing
    return std::min(std::min(dist_point_segment(a2, a1, b1), dist_point_segment(b2, a1, b1)),
                    std::min(dist_point_segment(a1, a2, b2), dist_point_segment(b1, a2, b2)));
}

QuadPath build_path(Complex a, Complex b, double exp_a, double exp_b,
                    const std::vector<Complex>& obstacles, double clearance_frac) {
    if (a == b) throw std::invalid_argument("build_path: degenerate segment");
    QuadPath path;
    path.exp_start = exp_a;
    path.exp_end = exp_b;
    double L = std::abs(b - a);
    Complex that = (b - a) / L;
    Complex nleft = Complex(0, 1) * that;
    double dmin = clearance_frac * L;

    struct Bump {
        double t0, t1;   // projection interval on [0,1]
        double r;        // lateral radius
        double side;     // +1 bulge left, -1 bulge right
    };
    std::vector<Bump> bumps;
    for (Complex p : obstacles) {
        Complex rel = (p - a) / that;  // path coords: rel.real() along, rel.imag() lateral
        double t = rel.real() / L;
        double lat = rel.imag();
        if (t <= 1e-12 || t >= 1.0 - 1e-12) continue;  // beyond/at endpoints
        if (std::abs(lat) >= dmin) continue;
        // nearest other feature bounds the radius
        double dother = L;
        for (Complex q : obstacles)
            if (q != p) dother = std::min(dother, std::abs(q - p));
        dother = std::min({dother, std::abs(p - a), std::abs(p - b)});
        double r = std::min(0.2 * L, 0.45 * dother);
        if (r < 2.0 * dmin)
            throw contour_error("build_path: no room to deform around singularity");
        double side;
        if (std::abs(lat) < 1e-12 * L)
            side = -1.0;  // on-line: pass on the right, obstacle stays on the left
        else
            side = lat > 0 ? -1.0 : +1.0;  // bulge away
        bumps.push_back(Bump{t - r / L, t + r / L, r, side});
    }
    if (bumps.empty()) {
        path.verts = {a, b};
        return path;
    }
    std::sort(bumps.begin(), bumps.end(), [](const Bump& x, const Bump& y) { return x.t0 < y.t0; });
    // merge overlapping detour intervals (same side wins by larger radius)
    std::vector<Bump> merged;
    for (const auto& bp : bumps) {
        if (!merged.empty() && bp.t0 <= merged.back().t1) {
            merged.back().t1 = std::max(merged.back().t1, bp.t1);
            if (bp.r > merged.back().r) {
                merged.back().r = bp.r;
                merged.back().side = bp.side;
            }
        } else {
            merged.push_back(bp);
        }
    }
    path.verts.push_back(a);
    for (const auto& bp : merged) {
        double t0 = std::max(bp.t0, 0.02), t1 = std::min(bp.t1, 0.98);
        Complex off = bp.side * bp.r * nleft;
        path.verts.push_back(a + t0 * L * that);
        path.verts.push_back(a + t0 * L * that + off);
        path.verts.push_back(a + t1 * L * that + off);
        path.verts.push_back(a + t1 * L * that);
    }
    path.verts.push_back(b);
    return path;
}

PathNodes path_nodes(const QuadPath& path, int order, const std::vector<Complex>& refine_points,
                     const std::vector<std::pair<Complex, Complex>>& refine_segments) {
    if (path.verts.size() < 2) throw std::invalid_argument("path_nodes: need >= 2 vertices");
    double total_len = 0.0;
    for (size_t i = 0; i + 1 < path.verts.size(); ++i)
        total_len += std::abs(path.verts[i + 1] - path.verts[i]);
    double min_len = std::max(1e-9 * total_len, 1e-14);

    // refine targets exclude the path's own endpoints
    std::vector<Complex> pts;
    for (Complex q : refine_points)
        if (q != path.verts.front() && q != path.verts.back()) pts.push_back(q);

    std::vector<Panel> panels;
    for (size_t i = 0; i + 1 < path.verts.size(); ++i) {
        Panel leg{path.verts[i], path.verts[i + 1], i == 0, i + 2 == path.verts.size()};
        split_panel(leg, pts, refine_segments, min_len, panels, 0);
    }

    PathNodes out;
    out.start_point = path.verts.front();
    out.end_point = path.verts.back();
    out.exp_start = path.exp_start;
    out.exp_end = path.exp_end;
    out.dir_first_arg = std::arg(path.verts[1] - path.verts[0]);
    out.dir_last_arg = std::arg(path.verts.back() - path.verts[path.verts.size() - 2]);

    std::vector<Complex> us, ws;
    out.start_panel_size = 0;
    for (size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& pan = panels[pi];
        double ea = pan.absorb_start ? path.exp_start : 0.0;
        double eb = pan.absorb_end ? path.exp_end : 0.0;
        const JacobiRule& rule = cached_jacobi_rule(order, eb, ea);  // alpha at +1 end, beta at -1 end
        Complex d = pan.b - pan.a;
        Complex base = d * 0.5;
        Complex wfac = base;  // du = d * dt, dt = dx/2
        if (pan.absorb_start)
            wfac *= polar_pow(std::abs(d) / 2.0, std::arg(d), path.exp_start);
        if (pan.absorb_end)
            wfac *= polar_pow(std::abs(d) / 2.0, std::arg(d) + kPi, path.exp_end);
        if (pan.absorb_end) out.end_panel_start = static_cast<int>(us.size());
        for (int i = 0; i < rule.order; ++i) {
            double t = 0.5 * (rule.nodes(i) + 1.0);
            us.push_back(pan.a + t * d);
            ws.push_back(rule.weights(i) * wfac);
        }
        if (pan.absorb_start) out.start_panel_size = static_cast<int>(us.size());
    }
    if (panels.back().absorb_end == false)
        out.end_panel_start = static_cast<int>(us.size());  // no absorbing panel (exp 0 still absorbs trivially)

    out.u = Eigen::Map<Eigen::ArrayXcd>(us.data(), static_cast<long>(us.size()));
    out.w = Eigen::Map<Eigen::ArrayXcd>(ws.data(), static_cast<long>(ws.size()));
    return out;
}

Eigen::ArrayXcd factor_values(const PathNodes& nodes, Complex p, double e, FactorRole role) {
    const long n = nodes.u.size();
    Eigen::ArrayXcd out(n);
    std::vector<double> th(n);
    for (long i = 0; i < n; ++i) th[i] = std::arg(nodes.u(i) - p);

    long lo = 0, hi = n;  // node range the factor is evaluated on
    int anchor;
    double anchor_phase;
    if (role == FactorRole::PathStart) {
        lo = nodes.start_panel_size;
        if (lo >= n) {
            out.setOnes();
            return out;
        }
        anchor = static_cast<int>(lo);
        anchor_phase = nodes.dir_first_arg;
    } else if (role == FactorRole::PathEnd) {
        hi = nodes.end_panel_start;
        if (hi <= 0) {
            out.setOnes();
            return out;
        }
        anchor = static_cast<int>(hi - 1);
        anchor_phase = nodes.dir_last_arg + kPi;
    } else {
        anchor = static_cast<int>(n / 2);
        anchor_phase = th[anchor];
    }
    th[anchor] += 2.0 * kPi * std::round((anchor_phase - th[anchor]) / (2.0 * kPi));
    unwrap_from(th, anchor);
    for (long i = 0; i < n; ++i) {
        if (i < lo || i >= hi)
            out(i) = 1.0;
        else
            out(i) = polar_pow(std::abs(nodes.u(i) - p), th[i], e);
    }
    return out;
}

Eigen::ArrayXXcd coupling_matrix(const PathNodes& hi, const PathNodes& lo, double e) {
    const long m = hi.u.size(), n = lo.u.size();
    Eigen::ArrayXXd th(m, n);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < n; ++j) th(i, j) = std::arg(hi.u(i) - lo.u(j));
    long mi = m / 2;
    {  // unwrap anchor row, then every column
        std::vector<double> row(n);
        for (long j = 0; j < n; ++j) row[j] = th(mi, j);
        unwrap_from(row, static_cast<int>(n / 2));
        for (long j = 0; j < n; ++j) th(mi, j) = row[j];
    }
    std::vector<double> col(m);
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < m; ++i) col[i] = th(i, j);
        unwrap_from(col, static_cast<int>(mi));
        for (long i = 0; i < m; ++i) th(i, j) = col[i];
    }
    Eigen::ArrayXXcd out(m, n);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < n; ++j)
            out(i, j) = polar_pow(std::abs(hi.u(i) - lo.u(j)), th(i, j), e);
    return out;
}

Complex segment_integral(const std::vector<PowerFactor>& factors,
                         const std::function<Complex(Complex)>& polynomial_part,
                         const Segment& seg, const JacobiRule& rule) {
    double ea = 0.0, eb = 0.0;
    std::vector<Complex> foreign;
    std::vector<const PowerFactor*> foreign_factors;
    for (const auto& f : factors) {
        if (f.base_point == seg.a)
            ea += f.exponent;
        else if (f.base_point == seg.b)
            eb += f.exponent;
        else {
            foreign.push_back(f.base_point);
            foreign_factors.push_back(&f);
        }
    }
    if (std::abs(ea - rule.beta_exp) > 1e-12 || std::abs(eb - rule.alpha_exp) > 1e-12)
        throw std::invalid_argument("segment_integral: rule exponents do not match endpoint singularities");

    QuadPath path = build_path(seg.a, seg.b, ea, eb, foreign);
    PathNodes nodes = path_nodes(path, rule.order, foreign);
    Eigen::ArrayXcd f = Eigen::ArrayXcd::Ones(nodes.u.size());
    f *= factor_values(nodes, seg.a, ea, FactorRole::PathStart);
    f *= factor_values(nodes, seg.b, eb, FactorRole::PathEnd);
    for (const auto* pf : foreign_factors)
        f *= factor_values(nodes, pf->base_point, pf->exponent, FactorRole::Foreign);
    Complex sum = 0.0;
    for (long i = 0; i < nodes.u.size(); ++i)
        sum += nodes.w(i) * f(i) * polynomial_part(nodes.u(i));
    return sum;
}

}  // namespace slewind::num
