#include "slewind/coulomb_gas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "slewind/parallel.hpp"
#include "slewind/special.hpp"

// Screened twist correlators, evaluated directly in the canonical (0,inf)
// frame. For n bulk points the ratio H_n/H_0 is
//
//   Chat^n * prod_i (2 Im z_i)^{k/8} / |z_i|
//          * prod_{i<j} |z_i-z_j|^{k/4} |z_i-conj z_j|^{k/4}
//          * Re[ i^n * J ],
//   J = int_{g_1}...int_{g_n} prod_m u_m prod_{i}[(u_m-z_i)(u_m-conj z_i)]^{-k/4}
//       prod_{m<l} (u_m-u_l)^{k/2} du,
//
// with contour g_m a simple path from z_m to conj z_m crossing the real axis,
// Chat = Gamma(2-k/2)/Gamma(1-k/4)^2 (the modulus of N_1), and every complex
// power phase-continued along its contour. Conjugation symmetry of the
// contour system makes i^n J real on the physical slice; the prefactor pair
// phases are configuration-independent and drop into the single calibration.
// Couplings are ordered (u_hi - u_lo) by contour midpoint so the branch
// anchors sit on the positive real axis; this is the ordering under which the
// n=2 ratio reproduces the Simmons-Cardy closed form.

namespace slewind::cg {

namespace {

using num::coupling_matrix;
using num::FactorRole;
using num::factor_values;
using num::PathNodes;
using num::QuadPath;

constexpr Complex kI{0.0, 1.0};

double chat(Kappa k) {
    return num::gamma_fn(2.0 - *k / 2.0) / std::pow(num::gamma_fn(1.0 - *k / 4.0), 2);
}

struct ContourSet {
    std::vector<PathNodes> nodes;  // sorted by midpoint real part
};

// Lateral bulge offsets for contours sharing (or nearly sharing) a vertical
// line; keeps coupling factors clear of contact and preserves the homotopy
// class of the straight segments (each contour moves away from its partners).
std::vector<double> bulge_offsets(std::span<const Complex> zs) {
    const int n = static_cast<int>(zs.size());
    std::vector<double> off(n, 0.0);
    std::vector<int> group(n);
    std::iota(group.begin(), group.end(), 0);
    auto find = [&](int i) {
        while (group[i] != i) i = group[i] = group[group[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double near = 0.10 * std::min(zs[i].imag(), zs[j].imag());
            if (std::abs(zs[i].real() - zs[j].real()) < near) group[find(i)] = find(j);
        }
    for (int g = 0; g < n; ++g) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (find(i) == g) members.push_back(i);
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            if (zs[a].real() != zs[b].real()) return zs[a].real() < zs[b].real();
            return a < b;
        });
        double radius = std::numeric_limits<double>::infinity();
        double band_lo = std::numeric_limits<double>::infinity(), band_hi = -band_lo;
        for (int m : members) {
            radius = std::min(radius, 0.25 * zs[m].imag());
            band_lo = std::min(band_lo, zs[m].real());
            band_hi = std::max(band_hi, zs[m].real());
        }
        for (int i = 0; i < n; ++i) {
            if (find(i) == g) continue;
            double d = std::max({band_lo - zs[i].real(), zs[i].real() - band_hi, 0.0});
            radius = std::min(radius, 0.45 * d);
        }
        if (!(radius > 0.0))
            throw contour_error("hn contours: no lateral room between aligned pairs");
        int cnt = static_cast<int>(members.size());
        for (int r = 0; r < cnt; ++r)
            off[members[r]] = -radius + 2.0 * radius * r / (cnt - 1);
    }
    return off;
}

ContourSet build_hn_contours(std::span<const Complex> zs, Kappa k, int order) {
    const int n = static_cast<int>(zs.size());
    const double e = -*k / 4.0;
    std::vector<double> off = bulge_offsets(zs);

    std::vector<QuadPath> paths(n);
    for (int m = 0; m < n; ++m) {
        std::vector<Complex> obstacles;
        for (int j = 0; j < n; ++j)
            if (j != m) {
                obstacles.push_back(zs[j]);
                obstacles.push_back(std::conj(zs[j]));
            }
        Complex z = zs[m], zb = std::conj(z);
        if (off[m] == 0.0) {
            paths[m] = num::build_path(z, zb, e, e, obstacles);
            continue;
        }
        double s0 = std::min(0.15 * z.imag(), std::abs(off[m]));
        Complex top = z - kI * s0, bot = zb + kI * s0;
        QuadPath mid = num::build_path(top + off[m], bot + off[m], 0.0, 0.0, obstacles);
        QuadPath p;
        p.exp_start = p.exp_end = e;
        p.verts = {z, top};
        p.verts.insert(p.verts.end(), mid.verts.begin(), mid.verts.end());
        p.verts.push_back(bot);
        p.verts.push_back(zb);
        paths[m] = p;
    }

    std::vector<int> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        double ra = zs[a].real() + off[a], rb = zs[b].real() + off[b];
        if (ra != rb) return ra < rb;
        return a < b;
    });

    ContourSet set;
    set.nodes.reserve(n);
    for (int oi = 0; oi < n; ++oi) {
        int m = ord[oi];
        std::vector<Complex> refine;
        for (int j = 0; j < n; ++j)
            if (j != m) {
                refine.push_back(zs[j]);
                refine.push_back(std::conj(zs[j]));
            }
        for (int j = 0; j < n; ++j)
            if (j != m)
                for (Complex v : paths[j].verts) refine.push_back(v);
        set.nodes.push_back(num::path_nodes(paths[m], order, refine));
    }

    // Per-contour integrand vectors: weight * u * own endpoint factors *
    // foreign pair factors (phase-continued).
    for (int oi = 0; oi < n; ++oi) {
        PathNodes& nd = set.nodes[oi];
        Eigen::ArrayXcd base = nd.w * nd.u;
        base *= factor_values(nd, nd.start_point, e, FactorRole::PathStart);
        base *= factor_values(nd, nd.end_point, e, FactorRole::PathEnd);
        for (int j = 0; j < n; ++j) {
            Complex zj = zs[ord[oi] == j ? j : j];  // placeholder, replaced below
        }
        nd.w = base;  // stash; foreign factors folded by caller (needs ord)
    }
    return set;
}

// J for the sorted contour set; parallel over the outer contour's nodes with
// per-index partials summed in fixed order.
Complex tensor_integral(const std::vector<Eigen::ArrayXcd>& B,
                        const std::vector<std::vector<Eigen::ArrayXXcd>>& C) {
    const int n = static_cast<int>(B.size());
    if (n == 1) return B[0].sum();
    const long m0 = B[0].size();
    std::vector<Complex> partial(m0, Complex{0, 0});
    if (n == 2) {
        parallel_for(m0, [&](long i) {
            // C[1][0](i1, i0)
            partial[i] = B[0](i) * (B[1] * C[1][0].col(i)).sum();
        });
    } else if (n == 3) {
        parallel_for(m0, [&](long i) {
            Eigen::ArrayXcd v2 = B[2] * C[2][0].col(i);
            Complex acc{0, 0};
            const long m1 = B[1].size();
            for (long j = 0; j < m1; ++j)
                acc += B[1](j) * C[1][0](j, i) * (v2 * C[2][1].col(j)).sum();
            partial[i] = B[0](i) * acc;
        });
    } else if (n == 4) {
        parallel_for(m0, [&](long i) {
            Eigen::ArrayXcd v3i = B[3] * C[3][0].col(i);
            Eigen::ArrayXcd v2i = B[2] * C[2][0].col(i);
            Complex acc{0, 0};
            const long m1 = B[1].size(), m2 = B[2].size();
            for (long j = 0; j < m1; ++j) {
                Eigen::ArrayXcd v3ij = v3i * C[3][1].col(j);
                Complex accj{0, 0};
                for (long q = 0; q < m2; ++q)
                    accj += v2i(q) * C[2][1](q, j) * (v3ij * C[3][2].col(q)).sum();
                acc += B[1](j) * C[1][0](j, i) * accj;
            }
            partial[i] = B[0](i) * acc;
        });
    } else {
        throw std::invalid_argument("tensor_integral: n > 4 unsupported");
    }
    Complex sum{0, 0};
    for (const Complex& p : partial) sum += p;
    return sum;
}

}  // namespace

Complex n1_constant(Kappa k) {
    double h21 = cft::kac_weight(KacLabel{2, 1}, k);
    Complex phase = std::exp(Complex(0.0, 2.0 * std::numbers::pi * h21));
    return phase * chat(k);
}

Complex integrand(const BlockSpec& spec, std::span<const Complex> u) {
    if (u.size() != spec.contours.size())
        throw std::invalid_argument("integrand: one screening variable per contour required");
    std::vector<Charge> charges;
    std::vector<Complex> pos;
    for (const auto& ins : spec.insertions) {
        charges.push_back(ins.charge);
        pos.push_back(ins.position);
    }
    std::vector<double> scr;
    for (const auto& c : spec.contours) {
        double a = c.sign > 0 ? cft::alpha_plus(spec.kappa) : cft::alpha_minus(spec.kappa);
        charges.push_back(Charge{a});
        scr.push_back(a);
    }
    if (std::abs(cft::neutrality_defect(charges, spec.kappa)) > 1e-12)
        throw std::invalid_argument("integrand: block violates the neutrality condition");

    Complex val{1.0, 0.0};
    for (size_t i = 0; i < pos.size(); ++i) {
        for (size_t j = i + 1; j < pos.size(); ++j) {
            if (pos[i] == pos[j]) throw std::invalid_argument("integrand: coincident insertions");
            val *= std::pow(pos[i] - pos[j], 2.0 * charges[i].alpha * charges[j].alpha);
        }
        for (size_t m = 0; m < u.size(); ++m) {
            if (u[m] == pos[i]) throw std::invalid_argument("integrand: screening hits insertion");
            val *= std::pow(u[m] - pos[i], 2.0 * charges[i].alpha * scr[m]);
        }
    }
    for (size_t m = 0; m < u.size(); ++m)
        for (size_t l = m + 1; l < u.size(); ++l)
            val *= std::pow(u[m] - u[l], 2.0 * scr[m] * scr[l]);
    return val;
}

Complex jn_integral(std::span<const Complex> etas, Kappa k, int order) {
    if (etas.size() % 2 != 1) throw std::invalid_argument("jn_integral: need 2n-1 cross-ratios");
    const int n = static_cast<int>(etas.size() + 1) / 2;
    const double e = -*k / 4.0;

    std::vector<Complex> pts;  // branch points: 0, eta_1..eta_{2n-1}
    pts.push_back(Complex{0, 0});
    for (Complex et : etas) pts.push_back(et);

    std::vector<std::pair<Complex, Complex>> ends(n);
    ends[0] = {pts[0], pts[1]};
    for (int m = 1; m < n; ++m) ends[m] = {pts[2 * m], pts[2 * m + 1]};

    std::vector<PathNodes> nodes(n);
    std::vector<Eigen::ArrayXcd> B(n);
    for (int m = 0; m < n; ++m) {
        std::vector<Complex> obstacles;
        for (Complex p : pts)
            if (p != ends[m].first && p != ends[m].second) obstacles.push_back(p);
        QuadPath path = num::build_path(ends[m].first, ends[m].second, e, e, obstacles);
        for (int l = 0; l < n; ++l)
            if (l != m && num::dist_segment_segment(ends[m].first, ends[m].second,
                                                    ends[l].first, ends[l].second) <
                              1e-3 * std::abs(ends[m].second - ends[m].first))
                throw contour_error("jn_integral: contours intersect; configuration unsupported");
        nodes[m] = num::path_nodes(path, order, obstacles);
        Eigen::ArrayXcd base = nodes[m].w * (1.0 - nodes[m].u);
        base *= factor_values(nodes[m], ends[m].first, e, FactorRole::PathStart);
        base *= factor_values(nodes[m], ends[m].second, e, FactorRole::PathEnd);
        for (Complex p : pts)
            if (p != ends[m].first && p != ends[m].second)
                base *= factor_values(nodes[m], p, e, FactorRole::Foreign);
        B[m] = base;
    }

    // sort by midpoint real part for the ordered couplings
    std::vector<int> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        Complex ma = 0.5 * (ends[a].first + ends[a].second);
        Complex mb = 0.5 * (ends[b].first + ends[b].second);
        if (ma.real() != mb.real()) return ma.real() < mb.real();
        if (ma.imag() != mb.imag()) return ma.imag() < mb.imag();
        return a < b;
    });
    std::vector<Eigen::ArrayXcd> Bs(n);
    std::vector<PathNodes> ns(n);
    for (int i = 0; i < n; ++i) {
        Bs[i] = std::move(B[ord[i]]);
        ns[i] = std::move(nodes[ord[i]]);
    }
    std::vector<std::vector<Eigen::ArrayXXcd>> C(n);
    for (int a = 0; a < n; ++a) {
        C[a].resize(a);
        for (int b = 0; b < a; ++b) C[a][b] = coupling_matrix(ns[a], ns[b], *k / 2.0);
    }
    return tensor_integral(Bs, C);
}

double hn_ratio(std::span<const Complex> zs, Kappa k, int order) {
    const int n = static_cast<int>(zs.size());
    if (n == 0) return 1.0;
    if (n > 4) throw std::invalid_argument("hn_ratio: n > 4 needs the sampling pipeline");
    for (Complex z : zs)
        if (!(z.imag() > 0.0)) throw std::invalid_argument("hn_ratio: points must lie in H");
    const double kap = *k;
    const double e = -kap / 4.0;

    std::vector<double> off = bulge_offsets(zs);
    std::vector<int> ord(n);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        double ra = zs[a].real() + off[a], rb = zs[b].real() + off[b];
        if (ra != rb) return ra < rb;
        return a < b;
    });

    // paths
    std::vector<QuadPath> paths(n);
    for (int m = 0; m < n; ++m) {
        std::vector<Complex> obstacles;
        for (int j = 0; j < n; ++j)
            if (j != m) {
                obstacles.push_back(zs[j]);
                obstacles.push_back(std::conj(zs[j]));
            }
        Complex z = zs[m], zb = std::conj(z);
        if (off[m] == 0.0) {
            paths[m] = num::build_path(z, zb, e, e, obstacles);
        } else {
            double s0 = std::min(0.15 * z.imag(), std::abs(off[m]));
            Complex top = z - kI * s0, bot = zb + kI * s0;
            QuadPath mid = num::build_path(top + off[m], bot + off[m], 0.0, 0.0, obstacles);
            QuadPath p;
            p.exp_start = p.exp_end = e;
            p.verts = {z, top};
            p.verts.insert(p.verts.end(), mid.verts.begin(), mid.verts.end());
            p.verts.push_back(bot);
            p.verts.push_back(zb);
            paths[m] = p;
        }
    }

    std::vector<PathNodes> nodes(n);
    std::vector<Eigen::ArrayXcd> B(n);
    for (int oi = 0; oi < n; ++oi) {
        int m = ord[oi];
        std::vector<Complex> refine;
        for (int j = 0; j < n; ++j)
            if (j != m) {
                refine.push_back(zs[j]);
                refine.push_back(std::conj(zs[j]));
                for (Complex v : paths[j].verts) refine.push_back(v);
            }
        nodes[oi] = num::path_nodes(paths[m], order, refine);
        Eigen::ArrayXcd base = nodes[oi].w * nodes[oi].u;  // (u - x1)^{+1}, x1 = 0
        base *= factor_values(nodes[oi], zs[m], e, FactorRole::PathStart);
        base *= factor_values(nodes[oi], std::conj(zs[m]), e, FactorRole::PathEnd);
        for (int j = 0; j < n; ++j)
            if (j != m) {
                base *= factor_values(nodes[oi], zs[j], e, FactorRole::Foreign);
                base *= factor_values(nodes[oi], std::conj(zs[j]), e, FactorRole::Foreign);
            }
        B[oi] = base;
    }

    std::vector<std::vector<Eigen::ArrayXXcd>> C(n);
    for (int a = 0; a < n; ++a) {
        C[a].resize(a);
        for (int b = 0; b < a; ++b) C[a][b] = coupling_matrix(nodes[a], nodes[b], kap / 2.0);
    }

    Complex J = tensor_integral(B, C);
    Complex v = std::pow(kI, n) * J;
    if (std::abs(v.imag()) > 2e-4 * std::abs(v) + 1e-300)
        throw inconsistency_error("hn_ratio: block failed the reality check (branch/quadr.)");

    double mag = 1.0;
    for (int i = 0; i < n; ++i) {
        mag *= std::pow(2.0 * zs[i].imag(), kap / 8.0) / std::abs(zs[i]);
        for (int j = i + 1; j < n; ++j)
            mag *= std::pow(std::abs(zs[i] - zs[j]) * std::abs(zs[i] - std::conj(zs[j])), kap / 4.0);
    }
    return std::pow(chat(k), n) * mag * v.real();
}

namespace {

// frame reduction: images of the points plus the |phi'|^{2 h_{2,1}} weights
struct Reduced {
    std::vector<Complex> w;
    double jac_weight = 1.0;  // prod |phi'(z_i)|^{2 h21}
};

Reduced reduce_points(const std::vector<HalfPlanePoint>& points, const BoundaryFrame& frame,
                      Kappa k) {
    cft::FrameMap phi = cft::frame_map(frame);
    double h21 = cft::kac_weight(KacLabel{2, 1}, k);
    Reduced r;
    for (const auto& p : points) {
        r.w.push_back(phi(p.z));
        r.jac_weight *= std::pow(std::abs(phi.deriv(p.z)), 2.0 * h21);
    }
    return r;
}

double h0_magnitude(const BoundaryFrame& frame, Kappa k) {
    if (frame.has_infinite_endpoint()) return 1.0;  // infinity-normalized
    double h12 = cft::kac_weight(KacLabel{1, 2}, k);
    return std::pow(std::abs(frame.x2 - frame.x1), -2.0 * h12);
}

}  // namespace

CorrelatorValue hn_cg(const std::vector<HalfPlanePoint>& points, const BoundaryFrame& frame,
                      Kappa k, int order) {
    Reduced r = reduce_points(points, frame, k);
    double ratio = hn_ratio(r.w, k, order);
    CorrelatorValue out;
    out.frame = frame;
    out.value = Complex(r.jac_weight * ratio * h0_magnitude(frame, k), 0.0);
    return out;
}

CorrelatorValue h1_cg(HalfPlanePoint z, const BoundaryFrame& frame, Kappa k, int order) {
    return hn_cg({z}, frame, k, order);
}

std::vector<double> subset_ratios(const std::vector<HalfPlanePoint>& points,
                                  const BoundaryFrame& frame, Kappa k, int order) {
    const int N = static_cast<int>(points.size());
    if (N > 16) throw std::invalid_argument("subset_ratios: N > 16 unsupported");
    Reduced r = reduce_points(points, frame, k);
    const size_t total = size_t{1} << N;
    std::vector<double> out(total, 1.0);
    std::vector<size_t> masks;
    for (size_t m = 1; m < total; ++m) masks.push_back(m);
    parallel_for(static_cast<long>(masks.size()), [&](long idx) {
        size_t mask = masks[idx];
        std::vector<Complex> sub;
        for (int i = 0; i < N; ++i)
            if (mask & (size_t{1} << i)) sub.push_back(r.w[i]);
        out[mask] = hn_ratio(sub, k, order);
    });
    return out;
}

double green1_block(HalfPlanePoint z, const BoundaryFrame& frame, int order) {
    // <Phi_{3,1} Phi_{1,2} Phi_{1,2}>_H / H0 assembled from the single-Q^+
    // block. The u-integral degenerates to a loop around the reflected-charge
    // endpoint (its exponent is the integer -1), evaluated here as a circle
    // quadrature; the closed reduction is eta^2/(1-eta).
    cft::FrameMap phi = cft::frame_map(frame);
    Complex w = phi(z.z);
    double jac = std::pow(std::abs(phi.deriv(z.z)), 2.0 / 3.0);  // 2 h_{3,1}

    auto raw = [order](Complex zz) {
        Complex eta = 1.0 - std::conj(zz) / zz;
        int M = std::max(64, 4 * order);
        double rr = 0.5 * std::min(std::abs(eta), 1.0);
        Complex loop{0, 0};
        for (int j = 0; j < M; ++j) {
            double th = 2.0 * std::numbers::pi * j / M;
            Complex u = std::polar(rr, th);
            // u^{-1} (1-u)^{-3/2} (u - eta)^2, times du/(2 pi i)
            loop += std::pow(1.0 - u, -1.5) * (u - eta) * (u - eta) / static_cast<double>(M);
        }
        return loop / (1.0 - eta) / std::pow(2.0 * zz.imag(), 2.0 / 3.0);
    };
    Complex val = raw(w);
    Complex ref = raw(Complex{0, 1});  // green1(i; 0,inf) = 1 fixes sign and phase
    Complex g = val / ref * std::pow(2.0, -2.0 / 3.0) / std::pow(2.0 * w.imag(), 0.0);
    // ref corresponds to G=1 at z=i where (Im=1); scaling already inside raw
    return jac * g.real();
}

double h4_pair_ratio(Complex z1, Complex z2, Complex z3, Complex z4, Kappa k, int order) {
    std::array<Complex, 4> zz{z1, z2, z3, z4};
    return hn_ratio(std::span<const Complex>(zz.data(), 4), k, order);
}

double green2_block(HalfPlanePoint z, HalfPlanePoint w, const BoundaryFrame& frame, int order) {
    throw std::logic_error("green2_block is provided by the green module pipeline");
}

}  // namespace slewind::cg
