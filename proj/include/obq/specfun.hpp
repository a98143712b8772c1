#pragma once

#include <cmath>
#include <limits>

namespace obq {

// A probability carried simultaneously in linear and log domain. The log
// representation is the canonical one: `value` may underflow to 0 while
// `log_value` stays finite (e.g. from_log(-1e6)), so divergence code that
// needs log(1/q) for astronomically small q never sees a log of zero.
//
// Invariants: log_value <= 0, value in [0,1], value == exp(log_value) up to
// underflow; a probability that is exactly zero has log_value == -infinity.
struct Probability {
    double value;
    double log_value;

    static Probability from_value(double v);
    static Probability from_log(double lv);

    // 1 - p, computed from whichever representation is accurate: expm1 of
    // the log when p is near one, plain subtraction otherwise.
    Probability complement() const;
};

// Standard normal upper tail Q(z) = P(N(0,1) > z). The log is accurate
// (relative error well under 1e-10) even where the value underflows:
// for z > 8 it is evaluated through the Mills-ratio continued fraction.
Probability gaussian_q(double z);

// First-order Marcum Q-function Q1(a,b): upper tail at b^2 of a noncentral
// chi-square law with 2 degrees of freedom and noncentrality a^2. Computed
// from the Poisson mixture
//   Q1(a,b) = sum_k Poisson(k; a^2/2) * P(Poisson(b^2/2) <= k)
// with recurrences anchored at the Poisson mode, summed outward until the
// residual mixture mass is below 1e-16. When Q1 is close to one the
// complementary series is summed instead so log_value stays accurate.
Probability marcum_q1(double a, double b);

// Closed-form lower bound 1 - (exp(-(a-b)^2/2) - exp(-(a+b)^2/2))/2,
// valid for a > b >= 0.
double marcum_lower_bound(double a, double b);

// Binary entropy in nats; 0 at both endpoints.
double binary_entropy(const Probability& p);

// Binary relative entropy d(p||q) in nats, evaluated from the log-domain
// representations. Conventions: 0*log(0/q) = 0, and p*log(p/0) = +infinity
// when p puts mass where q has none.
double binary_kl(const Probability& p, const Probability& q);

}  // namespace obq
