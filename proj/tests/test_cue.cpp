#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "obq/channel.hpp"
#include "obq/cue.hpp"
#include "obq/errors.hpp"
#include "obq/rng.hpp"
#include "obq/specfun.hpp"

using namespace obq;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvE = 0.36787944117144232160;

QuadratureSpec quad64(bool validate = false) {
    QuadratureSpec q;
    q.validate = validate;
    return q;
}
}  // namespace

TEST_CASE("div_noncoherent_radial examples") {
    CHECK(div_noncoherent_radial(2.0, 0.0, 1.0) == 0.0);
    // kl(e^-1, e^-4), frozen from direct high-precision arithmetic
    CHECK(div_noncoherent_radial(3.0, 4.0, 1.0) ==
          doctest::Approx(0.8253853652692498).epsilon(1e-14));
    for (double xi2 : {0.5, 3.0, 40.0}) {
        for (double tau : {0.2, 4.0, 90.0}) {
            CHECK(div_noncoherent_radial(xi2, tau, 1.0) <=
                  unquantized_kl_bound(xi2, 1.0) + 1e-12);
        }
    }
}

TEST_CASE("bounds: closed forms") {
    CHECK(unquantized_kl_bound(0.0, 1.0) == 0.0);
    CHECK(unquantized_kl_bound(1.0, 1.0) ==
          doctest::Approx(0.30685281944005469).epsilon(1e-15));
    CHECK(exp_bound(0.0, 1.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-15));
    CHECK(exp_bound(std::exp(1.0), 1.0) ==
          doctest::Approx(1.0 + 2.0 / std::exp(1.0)).epsilon(1e-15));
    // ratios to xi2 tend to 1/(e sigma^2) and 1/sigma^2 respectively
    CHECK(exp_bound(1e9, 2.0) / 1e9 == doctest::Approx(0.5 / std::exp(1.0)).epsilon(1e-6));
    CHECK(unquantized_kl_bound(1e9, 2.0) / 1e9 == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("noncoherent radial: bound conformance on a log grid") {
    const auto xi2s = log_grid(1e-3, 1e4, 64);
    const auto taus = log_grid(1e-3, 1e5, 64);
    for (double xi2 : xi2s) {
        const double u = unquantized_kl_bound(xi2, 1.0);
        const double e = exp_bound(xi2, 1.0);
        for (double tau : taus) {
            const double d = div_noncoherent_radial(xi2, tau, 1.0);
            CHECK(d <= u + 1e-12);
            CHECK(d <= e + 1e-12);
        }
    }
}

TEST_CASE("noncoherent radial: paper threshold dominates its halvings/doublings") {
    for (double xi2 : {10.0, 50.0, 300.0, 1e3}) {
        const double tau_star = xi2 + 1.0;
        const double at_star = div_noncoherent_radial(xi2, tau_star, 1.0);
        CHECK(at_star >= div_noncoherent_radial(xi2, 0.5 * tau_star, 1.0));
        CHECK(at_star >= div_noncoherent_radial(xi2, 2.0 * tau_star, 1.0));
    }
}

TEST_CASE("div_coherent_radial: paper bound chain and spec windows") {
    // mu = 0.95, xi2 = 1e4: chain bound 0.8957904613687995
    const double v = div_coherent_radial(1e4, 0.95, 1.0, quad64(true)) / 1e4;
    CHECK(v >= 0.8957904613687995 - 1e-9);
    CHECK(v <= 1.0 + 1e-9);
    CHECK(v == doctest::Approx(0.902252).epsilon(2e-4));  // scipy cross-reference

    // mu = 0.5, xi2 = 100: window [0.25 - 0.0081, 1]
    const double w = div_coherent_radial(100.0, 0.5, 1.0, quad64(true)) / 100.0;
    CHECK(w >= 0.25 - 0.0081);
    CHECK(w <= 1.0);

    // small probe energies: ratio stays bounded and positive
    for (double xi2 : {1e-4, 1e-2, 1.0}) {
        const double r = div_coherent_radial(xi2, 0.7, 1.0, quad64()) / xi2;
        CHECK(r > 0.0);
        CHECK(r <= 1.0 + 1e-9);
    }
}

TEST_CASE("div_coherent_radial: chain lower bound holds across (mu, xi2)") {
    for (double mu : {0.3, 0.6, 0.9}) {
        for (double xi2 : {50.0, 500.0, 5000.0}) {
            const double value = div_coherent_radial(xi2, mu, 1.0, quad64()) / xi2;
            const double chain =
                mu * mu -
                (mu * mu / (2.0 * std::exp(1.0) * (1.0 - mu) * (1.0 - mu)) + std::log(2.0)) /
                    xi2;
            CHECK(value >= chain - 1e-12);
        }
    }
}

TEST_CASE("div_coherent_radial: quadrature average agrees with Monte Carlo") {
    const double xi2 = 4.0, mu = 0.6, s2 = 1.0;
    const double quad_value = div_coherent_radial(xi2, mu, s2, quad64(true));

    const CounterRng rng(99);
    const double scale = std::sqrt(2.0 / s2);
    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = -std::log(rng.uniform(i, 0));
        const double a = scale * std::sqrt(t) * std::sqrt(xi2);
        const double g = binary_kl(marcum_q1(a, mu * a),
                                   Probability::from_log(-mu * mu * t * xi2 / s2));
        sum += g;
        sumsq += g * g;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK(std::abs(quad_value - mean) <= 4.0 * se);
}

TEST_CASE("div_percomponent_noncoherent examples") {
    CHECK(div_percomponent_noncoherent(1.0, 0.0, 0.0, 1.0) == 0.0);
    // 2 kl(Q(1), Q(sqrt 2)), frozen from direct high-precision arithmetic
    CHECK(div_percomponent_noncoherent(1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(0.06981294475712922).epsilon(1e-13));
    // Theorem-2 operating point is well defined and nonnegative
    const double t = (1.0 + 1.0) / 2.0;
    CHECK(div_percomponent_noncoherent(1.0, t, t, 1.0) >= 0.0);
    // thresholds of either sign give the same divergence (flip symmetry)
    CHECK(div_percomponent_noncoherent(2.0, 1.3, -0.4, 1.0) ==
          doctest::Approx(div_percomponent_noncoherent(2.0, -1.3, 0.4, 1.0)).epsilon(1e-12));
}

TEST_CASE("div_percomponent_coherent: beats the symmetric constant at scale") {
    const double xi2 = 1e4;
    const double v =
        div_percomponent_coherent({std::sqrt(xi2), 0.0}, 0.9, 1.0, quad64(true)) / xi2;
    CHECK(v > 2.0 / kPi);
    CHECK(v <= 1.0 + 1e-9);
    CHECK(v == doctest::Approx(0.810761).epsilon(2e-4));  // scipy cross-reference

    CHECK(div_percomponent_coherent({0.0, 0.0}, 0.5, 1.0, quad64()) == 0.0);

    // mu -> 0 collapses to the symmetric quantizer: still strictly positive
    // in the coherent case
    CHECK(div_percomponent_coherent({2.0, 0.0}, 1e-3, 1.0, quad64()) > 0.0);
}

TEST_CASE("div_percomponent_coherent: quadrature average agrees with Monte Carlo") {
    const double xi2 = 9.0, mu = 0.7, s2 = 1.0;
    const double quad_value =
        div_percomponent_coherent({3.0, 0.0}, mu, s2, quad64(true));

    const ChannelParams params{s2, 1.0};
    const CounterRng rng(7);
    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto [hr, hi] = rng.normal_pair(i, 0);
        const double mr = hr * std::sqrt(0.5) * std::sqrt(xi2);
        const double mi = hi * std::sqrt(0.5) * std::sqrt(xi2);
        double g = 0.0;
        for (double m : {mr, mi}) {
            g += binary_kl(percomponent_prob_coherent(m, mu * m, params),
                           percomponent_prob_coherent(0.0, mu * m, params));
        }
        sum += g;
        sumsq += g * g;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK(std::abs(quad_value - mean) <= 4.0 * se);
}

TEST_CASE("cue_noncoherent_radial: window, flag, strictness") {
    SweepSpec sweep;
    const CueResult res = cue_noncoherent_radial(1.0, sweep);
    CHECK(res.value >= kInvE - 5e-3);
    CHECK(res.value < kInvE);
    CHECK(res.supremum_at_infinity);
    CHECK(res.probe_energy == doctest::Approx(1e3).epsilon(1e-12));
    CHECK(res.threshold == doctest::Approx(1e3 + 1.54).epsilon(5e-3));
    CHECK(res.all_bounds_satisfied());
    CHECK(res.threshold_kind == "tau");
}

TEST_CASE("cue_noncoherent_radial: 1/sigma^2 scaling") {
    SweepSpec sweep;
    const CueResult base = cue_noncoherent_radial(1.0, sweep);
    SweepSpec scaled = sweep;
    scaled.xi2_min *= 4.0;
    scaled.xi2_max *= 4.0;
    scaled.tau_min *= 4.0;
    scaled.tau_max *= 4.0;
    const CueResult quarter = cue_noncoherent_radial(4.0, scaled);
    CHECK(quarter.value == doctest::Approx(base.value / 4.0).epsilon(1e-8));
}

TEST_CASE("cue_coherent_radial: larger mu wins at large probe energy") {
    SweepSpec sweep;
    sweep.xi2_min = 1.0;
    sweep.xi2_max = 1e4;
    sweep.xi2_points = 16;
    const CueResult res = cue_coherent_radial(1.0, {0.5, 0.95}, sweep, quad64());
    CHECK(res.threshold == 0.95);  // mu = 0.95 dominates mu = 0.5
    CHECK(res.value > 0.85);
    CHECK(res.value <= 1.0 + 1e-9);
    CHECK(res.supremum_at_infinity);
    CHECK(res.all_bounds_satisfied());
}

TEST_CASE("cue_percomponent_noncoherent: interior maximum and diagnostics") {
    SweepSpec sweep;
    const CueResult free = cue_percomponent_noncoherent(1.0, sweep, false);
    CHECK(free.value > 0.0);
    CHECK(free.value < 1.0);
    CHECK_FALSE(free.supremum_at_infinity);  // interior peak
    // frozen from an independent 2-D optimization over (xi2, T)
    CHECK(free.value == doctest::Approx(0.16929070173903754).epsilon(1e-6));
    CHECK(free.probe_energy == doctest::Approx(30.766760106957975).epsilon(1e-3));
    CHECK(free.threshold == doctest::Approx(4.698396473941118).epsilon(1e-3));
    CHECK(free.all_bounds_satisfied());

    REQUIRE(free.diagnostics.size() >= 1);
    bool found = false;
    for (const auto& d : free.diagnostics) {
        if (d.name == "theorem2_mode_value_vs_2q1") {
            found = true;
            CHECK(d.value == doctest::Approx(0.13619747522545939).epsilon(1e-5));
            CHECK(d.reference == doctest::Approx(0.3173105078629141).epsilon(1e-12));
        }
    }
    CHECK(found);

    const CueResult t2 = cue_percomponent_noncoherent(1.0, sweep, true);
    CHECK(t2.value == doctest::Approx(0.13619747522545939).epsilon(1e-6));
    CHECK(t2.probe_energy == doctest::Approx(3.2936374944122333).epsilon(1e-3));
}

TEST_CASE("cue_symmetric_limit: the 2/pi constant and the noncoherent null") {
    const CueResult coh = cue_symmetric_limit(1.0, true, quad64());
    CHECK(coh.value == doctest::Approx(2.0 / kPi).epsilon(1e-4));
    CHECK(coh.all_bounds_satisfied());

    const CueResult coh4 = cue_symmetric_limit(4.0, true, quad64());
    CHECK(coh4.value == doctest::Approx(2.0 / (4.0 * kPi)).epsilon(1e-4));

    const CueResult nc = cue_symmetric_limit(1.0, false, quad64());
    CHECK(nc.value == 0.0);
    CHECK(nc.all_bounds_satisfied());
}

TEST_CASE("np_radial_dominance_check: radial regions win") {
    const DominanceReport rep = np_radial_dominance_check(4.0, 1.0, 60, 2024);
    CHECK(rep.worst_margin >= -1e-9);
    CHECK(rep.regions_tested >= 60);
    CHECK(rep.mass_deficit <= 1e-6);
    CHECK(rep.best_radial_tau == doctest::Approx(5.0 + 1.35).epsilon(0.15));

    CHECK_THROWS_AS(np_radial_dominance_check(4.0, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("cue driver input validation") {
    SweepSpec bad;
    bad.xi2_points = 4;
    CHECK_THROWS_AS(cue_noncoherent_radial(1.0, bad), std::invalid_argument);
    SweepSpec sweep;
    CHECK_THROWS_AS(cue_coherent_radial(1.0, {}, sweep, quad64()), std::invalid_argument);
    CHECK_THROWS_AS(cue_coherent_radial(1.0, {1.5}, sweep, quad64()), std::domain_error);
    CHECK_THROWS_AS(div_noncoherent_radial(-1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(div_coherent_radial(1.0, 0.5, -1.0, quad64()), std::domain_error);
}
