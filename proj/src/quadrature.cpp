#include "slewind/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "slewind/special.hpp"

namespace slewind::num {

JacobiRule jacobi_rule(int order, double a, double b) {
    if (order < 1) throw std::invalid_argument("jacobi_rule: order >= 1 required");
    if (a <= -1.0 || b <= -1.0)
        throw std::invalid_argument("jacobi_rule: exponents must exceed -1");

    // Three-term recurrence coefficients of monic Jacobi polynomials.
    Eigen::VectorXd diag(order), off(order > 1 ? order - 1 : 0);
    double ab = a + b;
    diag(0) = (b - a) / (ab + 2.0);
    for (int k = 1; k < order; ++k) {
        double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag(k) = (b * b - a * a) / den;
    }
    for (int k = 1; k < order; ++k) {
        double num;
        if (k == 1)
            num = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        else
            num = 4.0 * k * (k + a) * (k + b) * (k + ab) /
                  ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0));
        off(k - 1) = std::sqrt(num);
    }

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    J.diagonal() = diag;
    if (order > 1) {
        J.diagonal(1) = off;
        J.diagonal(-1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("jacobi_rule: eigen decomposition failed");

    double mu0 = std::pow(2.0, ab + 1.0) * beta_fn(a + 1.0, b + 1.0);
    JacobiRule rule;
    rule.order = order;
    rule.alpha_exp = a;
    rule.beta_exp = b;
    rule.nodes = es.eigenvalues().array();
    rule.weights = mu0 * es.eigenvectors().row(0).array().square().transpose();
    return rule;
}

const JacobiRule& cached_jacobi_rule(int order, double a, double b) {
    static std::mutex mu;
    static std::map<std::tuple<int, long long, long long>, JacobiRule> cache;
    auto key = std::make_tuple(order, std::llround(a * (1LL << 40)), std::llround(b * (1LL << 40)));
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, jacobi_rule(order, a, b)).first;
    return it->second;
}

RichardsonResult richardson_limit(const std::vector<std::pair<double, double>>& samples,
                                  double exponent) {
    if (samples.size() < 3)
        throw std::invalid_argument("richardson_limit: need at least 3 samples");
    const int n = static_cast<int>(samples.size());
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        auto [eps, val] = samples[i];
        if (eps <= 0.0) throw std::invalid_argument("richardson_limit: eps must be positive");
        y[i] = val / std::pow(eps, exponent);
    }
    // Geometric ladder assumed; estimate the correction ratio from successive
    // differences and apply one Aitken-style elimination, repeated while the
    // tail keeps shrinking.
    std::vector<double> cur = y;
    double last_corr = std::abs(cur[n - 1] - cur[n - 2]);
    double limit = cur[n - 1];
    int rounds = 0;
    while (static_cast<int>(cur.size()) >= 3 && rounds < 4) {
        int m = static_cast<int>(cur.size());
        std::vector<double> d(m - 1);
        for (int i = 0; i + 1 < m; ++i) d[i] = cur[i + 1] - cur[i];
        if (std::abs(d[m - 2]) > std::abs(d[0]) && std::abs(d[m - 2]) > 1e-14 * std::abs(cur[m - 1]))
            throw extrapolation_error("richardson_limit: ladder diverging");
        double r = d[m - 2] != 0.0 ? d[m - 3] / d[m - 2] : 0.0;
        if (!(std::abs(r) > 1.05)) break;  // no geometric decay left to remove
        std::vector<double> nxt(m - 1);
        for (int i = 0; i + 1 < m; ++i) nxt[i] = cur[i + 1] + (cur[i + 1] - cur[i]) / (r - 1.0);
        last_corr = std::abs(nxt[m - 2] - cur[m - 1]);
        limit = nxt[m - 2];
        cur = std::move(nxt);
        ++rounds;
    }
    double tail = std::abs(cur.back() - cur[cur.size() - 2]);
    return RichardsonResult{limit, std::max(tail, 0.25 * last_corr)};
}

}  // namespace slewind::num
