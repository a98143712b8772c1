#include "obq/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace obq {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2
constexpr double kInf = std::numeric_limits<double>::infinity();

double require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite argument");
    return x;
}

// log of the Poisson pmf at integer k (passed as double to avoid overflow
// in intermediate integer arithmetic for very large modes).
double log_poisson_pmf(double k, double lambda) {
    if (k == 0.0) return -lambda;
    return -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
}

// P(Poisson(lambda) <= m) for integer m, summed outward from the largest
// term so that anchor underflow cannot wipe out a representable result.
double poisson_cdf(double m, double lambda) {
    if (m < 0.0) return 0.0;
    if (lambda <= 0.0) return 1.0;
    const double j0 = std::min(m, std::floor(lambda));
    double t = std::exp(log_poisson_pmf(j0, lambda));
    if (t == 0.0) {
        // The whole mass below m is beneath double underflow; the cdf itself
        // is then either ~0 (m far below the mode) or the anchor choice was
        // the mode, where the pmf cannot underflow. Only the first case
        // reaches here.
        return 0.0;
    }
    double sum = t;
    // downward from j0
    double td = t;
    for (double j = j0; j >= 1.0; j -= 1.0) {
        td *= j / lambda;
        sum += td;
        if (td < sum * 1e-18) break;
    }
    // upward from j0+1 to m
    double tu = t;
    for (double j = j0 + 1.0; j <= m; j += 1.0) {
        tu *= lambda / j;
        sum += tu;
        if (tu < sum * 1e-18) break;
    }
    return std::min(sum, 1.0);
}

// sum_k Poisson(k; w) * P(Poisson(v) <= k - shift), shift in {0,1}.
// Anchored at k0 = floor(w); both the mixture pmf and the inner cdf are
// updated by one-step recurrences while iterating outward from k0.
double marcum_core(double w, double v, int shift) {
    const double k0 = std::max(0.0, std::floor(w));
    const double p0 = std::exp(log_poisson_pmf(k0, w));
    const double c0 = poisson_cdf(k0 - shift, v);
    // the mixture mass outside k0 +- width is far below double resolution
    const double width = 12.0 * std::sqrt(w + 1.0) + 60.0;

    double sum = p0 * c0;

    // downward: C_{k-1} = C_k - pmf(k-shift; v). The subtraction can clamp
    // to zero a few ulps early deep in the lower tail; the terms abandoned
    // there are below double resolution.
    if (k0 >= 1.0) {
        double pk = p0;
        double c = c0;
        double g = (k0 - shift >= 0.0) ? std::exp(log_poisson_pmf(k0 - shift, v)) : 0.0;
        const double kmin = std::max(0.0, k0 - width);
        for (double k = k0 - 1.0; k >= kmin; k -= 1.0) {
            pk *= (k + 1.0) / w;
            c = std::max(c - g, 0.0);
            g *= (k + 1.0 - shift) / v;
            sum += pk * c;
            if (pk == 0.0 || c == 0.0) break;
        }
    }
    // upward: C_{k+1} = C_k + pmf(k+1-shift; v)
    {
        double pk = p0;
        double c = c0;
        double g = (k0 + 1.0 - shift >= 0.0)
                       ? std::exp(log_poisson_pmf(k0 + 1.0 - shift, v))
                       : 0.0;
        const double kmax = k0 + width;
        for (double k = k0 + 1.0; k <= kmax; k += 1.0) {
            pk *= w / k;
            c = std::min(c + g, 1.0);
            g *= v / (k + 1.0 - shift);
            sum += pk * c;
            if (pk == 0.0) break;
        }
    }
    return std::min(sum, 1.0);
}

}  // namespace

Probability Probability::from_value(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("Probability::from_value: outside [0,1]");
    return {v, std::log(v)};
}

Probability Probability::from_log(double lv) {
    if (lv > 0.0 || std::isnan(lv)) throw std::domain_error("Probability::from_log: log above 0");
    return {std::exp(lv), lv};
}

Probability Probability::complement() const {
    if (value > 0.5) {
        const double cv = -std::expm1(log_value);
        return {cv, std::log(cv)};
    }
    return {1.0 - value, std::log1p(-value)};
}

Probability gaussian_q(double z) {
    require_finite(z, "gaussian_q");
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    if (z > 8.0) {
        // Mills ratio: Q(z) = phi(z) / (z + 1/(z + 2/(z + 3/(...))))
        double cf = z;
        for (int k = 64; k >= 1; --k) cf = z + k / cf;
        return Probability::from_log(-0.5 * z * z - kHalfLog2Pi - std::log(cf));
    }
    if (z < -1.0) {
        const double q = 0.5 * std::erfc(-z * kInvSqrt2);  // upper tail at |z|
        return {1.0 - q, std::log1p(-q)};
    }
    const double v = 0.5 * std::erfc(z * kInvSqrt2);
    return {v, std::log(v)};
}

Probability marcum_q1(double a, double b) {
    require_finite(a, "marcum_q1");
    require_finite(b, "marcum_q1");
    if (a < 0.0 || b < 0.0) throw std::domain_error("marcum_q1: negative argument");
    if (b == 0.0) return {1.0, 0.0};
    if (a == 0.0) return Probability::from_log(-0.5 * b * b);

    const double x = 0.5 * a * a;  // mixture parameter
    const double y = 0.5 * b * b;  // tail point
    if (y > x + 1.0) {
        const double q = marcum_core(x, y, 0);
        return {q, std::log(q)};
    }
    const double comp = marcum_core(y, x, 1);  // 1 - Q1
    return {1.0 - comp, std::log1p(-comp)};
}

double marcum_lower_bound(double a, double b) {
    require_finite(a, "marcum_lower_bound");
    require_finite(b, "marcum_lower_bound");
    if (!(a > b && b >= 0.0)) throw std::domain_error("marcum_lower_bound: requires a > b >= 0");
    const double d = a - b;
    const double s = a + b;
    return 1.0 - 0.5 * (std::exp(-0.5 * d * d) - std::exp(-0.5 * s * s));
}

double binary_entropy(const Probability& p) {
    if (!(p.value >= 0.0 && p.value <= 1.0)) throw std::domain_error("binary_entropy: p outside [0,1]");
    const Probability c = p.complement();
    const double t1 = (p.value == 0.0) ? 0.0 : -p.value * p.log_value;
    const double t2 = (c.value == 0.0) ? 0.0 : -c.value * c.log_value;
    return t1 + t2;
}

double binary_kl(const Probability& p, const Probability& q) {
    if (!(p.value >= 0.0 && p.value <= 1.0)) throw std::domain_error("binary_kl: p outside [0,1]");
    if (!(q.value >= 0.0 && q.value <= 1.0)) throw std::domain_error("binary_kl: q outside [0,1]");

    const Probability pc = p.complement();
    const Probability qc = q.complement();

    double t1 = 0.0;
    if (p.value != 0.0) {
        if (q.log_value == -kInf) return kInf;  // p << q fails
        t1 = p.value * (p.log_value - q.log_value);
    }
    double t2 = 0.0;
    if (pc.value != 0.0) {
        if (qc.log_value == -kInf) return kInf;
        t2 = pc.value * (pc.log_value - qc.log_value);
    }
    // KL is nonnegative; tiny negatives are roundoff from nearly equal laws.
    return std::max(t1 + t2, 0.0);
}

}  // namespace obq
