#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "obq/specfun.hpp"
#include "obq/sweep.hpp"
#include "oracles.hpp"

using obq::Probability;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("probability representations stay consistent") {
    const Probability p = Probability::from_value(0.25);
    CHECK(p.value == 0.25);
    CHECK(p.log_value == doctest::Approx(std::log(0.25)).epsilon(1e-15));

    const Probability tiny = Probability::from_log(-1e6);
    CHECK(tiny.value == 0.0);  // underflow is fine, the log carries the mass
    CHECK(tiny.log_value == -1e6);

    const Probability zero = Probability::from_value(0.0);
    CHECK(zero.log_value == -kInf);

    CHECK_THROWS_AS(Probability::from_value(1.5), std::domain_error);
    CHECK_THROWS_AS(Probability::from_log(0.5), std::domain_error);
}

TEST_CASE("complement is accurate near both endpoints") {
    const Probability near_one = Probability::from_log(-1e-18);
    CHECK(near_one.complement().value == doctest::Approx(1e-18).epsilon(1e-12));

    const Probability small = Probability::from_value(1e-18);
    CHECK(small.complement().value == doctest::Approx(1.0));
    CHECK(small.complement().log_value == doctest::Approx(-1e-18).epsilon(1e-12));
}

TEST_CASE("gaussian_q spec examples") {
    CHECK(obq::gaussian_q(0.0).value == 0.5);
    // oracle: adaptive integration of the normal density
    CHECK(oracle::gaussian_q(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-12));
    CHECK(obq::gaussian_q(1.0).value == doctest::Approx(0.15865525393145705).epsilon(1e-13));
    const Probability far_left = obq::gaussian_q(-40.0);
    CHECK(far_left.value == doctest::Approx(1.0));
    CHECK(std::abs(far_left.log_value) < 1e-300);
    CHECK_THROWS_AS(obq::gaussian_q(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(obq::gaussian_q(kInf), std::domain_error);
}

TEST_CASE("gaussian_q log accuracy to z = 40 against quadrature") {
    for (double z = 0.0; z <= 40.0; z += 0.25) {
        const double impl = obq::gaussian_q(z).log_value;
        const double ref = oracle::log_gaussian_q(z);
        CHECK(std::abs(impl - ref) <= 1e-10 * std::abs(ref));
    }
}

TEST_CASE("gaussian_q symmetry: Q(z) + Q(-z) = 1") {
    for (double z = -8.0; z <= 8.0; z += 0.37) {
        CHECK(obq::gaussian_q(z).value + obq::gaussian_q(-z).value ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("marcum_q1 spec examples and oracle agreement") {
    for (double a : {0.0, 0.3, 1.0, 5.0, 22.0}) {
        CHECK(obq::marcum_q1(a, 0.0).value == 1.0);
    }
    for (double b : {0.1, 1.0, 3.0, 10.0}) {
        CHECK(obq::marcum_q1(0.0, b).value ==
              doctest::Approx(std::exp(-0.5 * b * b)).epsilon(1e-14));
    }

    // frozen from the noncentral chi-squared oracle (and the paper's lower
    // bound 0.7022891684 at this point)
    const double q21 = obq::marcum_q1(2.0, 1.0).value;
    CHECK(q21 == doctest::Approx(0.9181076963694060).epsilon(1e-11));
    CHECK(q21 >= 0.702289);
    CHECK(oracle::marcum_q1_boost(2.0, 1.0) == doctest::Approx(0.9181076963694060).epsilon(1e-9));
    CHECK(oracle::marcum_q1_series(2.0, 1.0) == doctest::Approx(0.9181076963694060).epsilon(1e-12));

    CHECK(obq::marcum_q1(1.0, 1.0).value == doctest::Approx(0.7328798037968202).epsilon(1e-11));

    CHECK_THROWS_AS(obq::marcum_q1(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(obq::marcum_q1(1.0, -1.0), std::domain_error);
}

TEST_CASE("marcum_q1 matches boost across magnitudes") {
    for (double a : {0.05, 0.7, 2.0, 6.0, 13.0, 27.0, 44.0}) {
        for (double b : {0.02, 0.9, 2.5, 7.0, 16.0, 31.0, 50.0}) {
            const double ours = obq::marcum_q1(a, b).value;
            const double ref = oracle::marcum_q1_boost(a, b);
            CHECK(std::abs(ours - ref) <= 1e-10);
        }
    }
}

TEST_CASE("marcum_q1 log accuracy near one") {
    // Q1(a, mu a) -> 1 for large a; the log must track the complement
    const Probability p = obq::marcum_q1(12.0, 6.0);
    const double comp_ref = 1.0 - oracle::marcum_q1_boost(12.0, 6.0);
    CHECK(p.log_value == doctest::Approx(std::log1p(-comp_ref)).epsilon(1e-9));
    CHECK(p.log_value < 0.0);
}

TEST_CASE("marcum_q1 monotonicity") {
    // nondecreasing in a, nonincreasing in b
    for (double b : {0.5, 2.0, 8.0}) {
        double prev = -1.0;
        for (double a = 0.0; a <= 12.0; a += 0.5) {
            const double v = obq::marcum_q1(a, b).value;
            CHECK(v >= prev - 1e-13);
            prev = v;
        }
    }
    for (double a : {0.5, 2.0, 8.0}) {
        double prev = 2.0;
        for (double b = 0.0; b <= 12.0; b += 0.5) {
            const double v = obq::marcum_q1(a, b).value;
            CHECK(v <= prev + 1e-13);
            prev = v;
        }
    }
}

TEST_CASE("marcum lower bound: closed form, domain, and dominance") {
    CHECK(obq::marcum_lower_bound(3.0, 0.0) == doctest::Approx(1.0));
    CHECK(obq::marcum_lower_bound(2.0, 1.0) ==
          doctest::Approx(0.7022891684128044).epsilon(1e-14));
    CHECK_THROWS_AS(obq::marcum_lower_bound(1.0, 1.0), std::domain_error);

    const auto grid = obq::log_grid(1e-2, 20.0, 100);
    for (double a : grid) {
        for (double b : grid) {
            if (!(a > b)) continue;
            CHECK(obq::marcum_q1(a, b).value >= obq::marcum_lower_bound(a, b) - 1e-12);
        }
    }
}

TEST_CASE("binary_entropy examples and ceiling") {
    CHECK(obq::binary_entropy(Probability::from_value(0.0)) == 0.0);
    CHECK(obq::binary_entropy(Probability::from_value(1.0)) == 0.0);
    CHECK(obq::binary_entropy(Probability::from_value(0.5)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(obq::binary_entropy(Probability::from_value(0.25)) ==
          doctest::Approx(0.5623351446188083).epsilon(1e-14));
    for (double p = 0.0; p <= 1.0; p += 0.01) {
        CHECK(obq::binary_entropy(Probability::from_value(p)) <= std::log(2.0) + 1e-15);
    }
}

TEST_CASE("binary_kl examples") {
    const Probability half = Probability::from_value(0.5);
    const Probability quarter = Probability::from_value(0.25);
    CHECK(obq::binary_kl(half, half) == 0.0);
    CHECK(obq::binary_kl(quarter, quarter) == 0.0);
    CHECK(obq::binary_kl(half, quarter) == doctest::Approx(0.14384103622589046).epsilon(1e-14));

    // degenerate p: KL reduces to log(1/q), exactly, straight from the log
    CHECK(obq::binary_kl(Probability::from_value(1.0), Probability::from_log(-4.0)) == 4.0);
    CHECK(obq::binary_kl(Probability::from_value(1.0), Probability::from_log(-1e6)) == 1e6);
    CHECK(obq::binary_kl(Probability::from_value(1.0), Probability::from_value(0.0)) == kInf);
    CHECK(obq::binary_kl(Probability::from_value(0.5), Probability::from_value(1.0)) == kInf);
}

TEST_CASE("binary_kl nonnegativity and identity on a dense grid") {
    for (double p = 0.0; p <= 1.0; p += 0.04) {
        for (double q = 0.02; q <= 0.98; q += 0.04) {
            const double d = obq::binary_kl(Probability::from_value(p), Probability::from_value(q));
            CHECK(d >= 0.0);
            if (std::abs(p - q) > 1e-9) CHECK(d > 0.0);
        }
    }
}

TEST_CASE("binary_kl convexity in q") {
    const Probability p = Probability::from_value(0.3);
    for (double q1 = 0.05; q1 <= 0.9; q1 += 0.08) {
        for (double q2 = q1 + 0.05; q2 <= 0.95; q2 += 0.08) {
            for (double lam : {0.2, 0.5, 0.8}) {
                const double qm = lam * q1 + (1.0 - lam) * q2;
                const double lhs = obq::binary_kl(p, Probability::from_value(qm));
                const double rhs =
                    lam * obq::binary_kl(p, Probability::from_value(q1)) +
                    (1.0 - lam) * obq::binary_kl(p, Probability::from_value(q2));
                CHECK(lhs <= rhs + 1e-12);
            }
        }
    }
}
