#include "obq/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "obq/errors.hpp"

namespace obq {

namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
// orthogonal-polynomial recurrence, weights mu0 * (first eigvec entry)^2.
QuadRule golub_welsch(const std::vector<double>& diag,
                      const std::vector<double>& offdiag, double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) jacobi(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) {
        jacobi(i, i + 1) = offdiag[i];
        jacobi(i + 1, i) = offdiag[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    if (es.info() != Eigen::Success) throw numerical_error("golub_welsch: eigen solve failed");

    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.x[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.w[i] = mu0 * v0 * v0;
    }
    return rule;
}

const QuadRule& cached_legendre(int n) {
    static std::mutex mu;
    static std::map<int, QuadRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

}  // namespace

void QuadratureSpec::check() const {
    if (nodes < 16) throw std::invalid_argument("QuadratureSpec: node count must be >= 16");
}

QuadRule gauss_laguerre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be >= 1");
    std::vector<double> diag(n), off(std::max(0, n - 1));
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + 1.0;
    for (int k = 1; k < n; ++k) off[k - 1] = k;
    return golub_welsch(diag, off, 1.0);
}

QuadRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    std::vector<double> diag(n, 0.0), off(std::max(0, n - 1));
    for (int k = 1; k < n; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    return golub_welsch(diag, off, 2.0);
}

QuadRule gauss_legendre_on(int n, double a, double b) {
    const QuadRule& base = cached_legendre(n);
    QuadRule rule;
    rule.x.resize(base.x.size());
    rule.w.resize(base.w.size());
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < base.x.size(); ++i) {
        rule.x[i] = mid + half * base.x[i];
        rule.w[i] = half * base.w[i];
    }
    return rule;
}

namespace {

double fading_expectation_n(const std::function<double(double)>& g, int nodes,
                            double u_scale) {
    // Panels in u = |h|; the leftmost one brackets the boundary layer.
    const double hint = std::clamp(u_scale, 1e-6, 1.0);
    const double a = std::min(1.0, 8.0 * hint);
    const double b = std::max(2.0, 2.0 * a);
    const double edges[4] = {0.0, a, b, 7.5};

    double total = 0.0;
    for (int p = 0; p < 3; ++p) {
        const QuadRule rule = gauss_legendre_on(nodes, edges[p], edges[p + 1]);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double u = rule.x[i];
            total += rule.w[i] * 2.0 * u * std::exp(-u * u) * g(u * u);
        }
    }
    return total;
}

}  // namespace

double fading_expectation(const std::function<double(double)>& g,
                          const QuadratureSpec& spec, double u_scale) {
    spec.check();
    return fading_expectation_n(g, spec.nodes, u_scale);
}

double fading_expectation_checked(const std::function<double(double)>& g,
                                  const QuadratureSpec& spec, double u_scale) {
    spec.check();
    const double coarse = fading_expectation_n(g, spec.nodes, u_scale);
    if (!spec.validate) return coarse;
    const double fine = fading_expectation_n(g, 2 * spec.nodes, u_scale);
    const double denom = std::max(std::abs(fine), 1e-300);
    if (std::abs(fine - coarse) > 1e-6 * denom) {
        throw numerical_error("fading_expectation: node-doubling check failed");
    }
    return fine;
}

}  // namespace obq
