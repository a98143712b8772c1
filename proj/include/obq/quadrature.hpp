#pragma once

#include <functional>
#include <vector>

namespace obq {

// Controls the fading averages E[g(|H|^2)] with |H|^2 ~ Exp(1).
// `validate` additionally re-evaluates every average with doubled node
// counts and raises numerical_error on relative disagreement > 1e-6.
struct QuadratureSpec {
    int nodes = 64;
    bool validate = false;

    void check() const;  // nodes >= 16
};

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Laguerre rule: integrates f against exp(-t) dt on [0, inf).
QuadRule gauss_laguerre(int n);

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
QuadRule gauss_legendre_on(int n, double a, double b);

// E[g(|H|^2)] for |H|^2 ~ Exp(1), evaluated in the amplitude variable
// u = |H| as int_0^inf 2 u exp(-u^2) g(u^2) du over panels whose split
// points adapt to `u_scale`, the characteristic u-width of g's variation
// near zero (pass 1 when g has no boundary layer). Panels resolve sharp
// transitions far below the reach of a direct exponential-weight rule.
double fading_expectation(const std::function<double(double)>& g,
                          const QuadratureSpec& spec, double u_scale);

// As above, but also honours spec.validate (node-doubling cross-check).
double fading_expectation_checked(const std::function<double(double)>& g,
                                  const QuadratureSpec& spec, double u_scale);

}  // namespace obq
