#include "obq/acceptance.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "obq/capacity.hpp"
#include "obq/channel.hpp"
#include "obq/cue.hpp"
#include "obq/specfun.hpp"
#include "obq/sweep.hpp"

namespace obq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvE = 0.36787944117144232160;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ---- independent oracle: log Q(z) by adaptive Simpson ----------------------
// log Q(z) = -z^2/2 - log(2 pi)/2 + log(int_0^inf exp(-z s - s^2/2) ds);
// the remaining integrand is O(1) and perfectly integrable for any z >= 0.

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 1e-14 * std::abs(left + right)) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, m, fa, flm, fm, left, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, 48);
}

double log_gaussian_q_oracle(double z) {
    const auto integrand = [z](double s) { return std::exp(-z * s - 0.5 * s * s); };
    const double integral = adaptive_simpson(integrand, 0.0, 9.5);
    return -0.5 * z * z - 0.5 * std::log(2.0 * kPi) + std::log(integral);
}

// ---------------------------------------------------------------------------

CheckResult criterion_coherent_radial(const QuadratureSpec& quad) {
    CheckResult r{"coherent_radial_achievability", false, ""};
    const double value = div_coherent_radial(1e4, 0.95, 1.0, quad) / 1e4;
    bool ok = value >= 0.8957 && value <= 1.0 + 1e-9;

    std::vector<double> seq;
    for (double mu : {0.9, 0.95, 0.99}) {
        const double xi2 = 100.0 / ((1.0 - mu) * (1.0 - mu));
        seq.push_back(div_coherent_radial(xi2, mu, 1.0, quad) / xi2);
    }
    ok = ok && seq[0] < seq[1] && seq[1] < seq[2] && seq[2] > 0.95;

    r.passed = ok;
    r.detail = "value=" + fmt(value) + " seq=" + fmt(seq[0]) + "," + fmt(seq[1]) + "," +
               fmt(seq[2]);
    return r;
}

CheckResult criterion_noncoherent_radial(const CueResult& res, double sigma_sq) {
    CheckResult r{"noncoherent_radial_strict_gap", false, ""};
    const double lo = kInvE / sigma_sq - 5e-3 / sigma_sq;
    const double hi = kInvE / sigma_sq;
    const bool window = res.value >= lo && res.value < hi;
    bool strict = false;
    for (const auto& b : res.bound_checks) {
        if (b.name == "strict_ceiling_all_points") strict = b.satisfied;
    }
    r.passed = window && res.supremum_at_infinity && strict;
    r.detail = "value=" + fmt(res.value) + " window=[" + fmt(lo) + "," + fmt(hi) + ")" +
               " sup_at_inf=" + (res.supremum_at_infinity ? "yes" : "no");
    return r;
}

CheckResult criterion_bound_conformance() {
    CheckResult r{"paper_bound_conformance", false, ""};
    const auto xi2s = log_grid(1e-3, 1e4, 64);
    const auto taus = log_grid(1e-3, 1e5, 64);
    double worst_slack = std::numeric_limits<double>::infinity();
    for (double xi2 : xi2s) {
        const double u = unquantized_kl_bound(xi2, 1.0);
        const double e = exp_bound(xi2, 1.0);
        for (double tau : taus) {
            const double d = div_noncoherent_radial(xi2, tau, 1.0);
            worst_slack = std::min(worst_slack, std::min(u - d, e - d));
        }
    }
    r.passed = worst_slack >= -1e-12;
    r.detail = "worst_slack=" + fmt(worst_slack);
    return r;
}

CheckResult criterion_symmetric_coherent(const QuadratureSpec& quad) {
    CheckResult r{"symmetric_coherent_constant", false, ""};
    const double v1 = cue_symmetric_limit(1.0, true, quad).value;
    const double v4 = cue_symmetric_limit(4.0, true, quad).value;
    const double t1 = 2.0 / kPi;
    const double t4 = 2.0 / (4.0 * kPi);
    r.passed = std::abs(v1 - t1) <= 1e-3 * t1 && std::abs(v4 - t4) <= 1e-3 * t4;
    r.detail = "sigma2=1: " + fmt(v1) + " vs " + fmt(t1) + "; sigma2=4: " + fmt(v4) + " vs " +
               fmt(t4);
    return r;
}

CheckResult criterion_symmetric_noncoherent() {
    CheckResult r{"symmetric_noncoherent_nullity", false, ""};
    const ChannelParams params{1.0, 1.0};
    bool ok = true;
    double worst_div = 0.0, worst_mi = 0.0;
    for (double xi2 : {0.0, 0.5, 1.0, 3.0, 10.0}) {
        const Probability p = percomponent_prob_noncoherent(xi2, 0.0, params);
        ok = ok && p.value == 0.5;
        if (xi2 > 0.0) {
            worst_div = std::max(worst_div, div_percomponent_noncoherent(xi2, 0.0, 0.0, 1.0));
        }
        const BinaryLaw law{p, percomponent_prob_noncoherent(0.0, 0.0, params)};
        worst_mi = std::max(worst_mi, mutual_info_binary({std::sqrt(std::max(xi2, 1e-6)), 0.3}, law));
    }
    ok = ok && worst_div <= 1e-15 && worst_mi <= 1e-15;
    r.passed = ok;
    r.detail = "max_div=" + fmt(worst_div) + " max_mi=" + fmt(worst_mi);
    return r;
}

CheckResult criterion_np_dominance(std::uint64_t seed) {
    CheckResult r{"np_radial_dominance", false, ""};
    const DominanceReport rep = np_radial_dominance_check(4.0, 1.0, 200, seed);
    r.passed = rep.worst_margin >= -1e-9;
    r.detail = "worst_margin=" + fmt(rep.worst_margin) + " regions=" +
               std::to_string(rep.regions_tested) + " mass_deficit=" + fmt(rep.mass_deficit);
    return r;
}

CheckResult criterion_special_functions(double perturb) {
    CheckResult r{"special_function_suite", false, ""};
    bool ok = true;
    double worst = 0.0;

    // Q1(a, 0) = 1
    for (double a : log_grid(1e-3, 50.0, 40)) {
        const double err = std::abs(marcum_q1(a, 0.0).value + perturb - 1.0);
        worst = std::max(worst, err);
        ok = ok && err <= 1e-12;
    }
    // Q1(0, b) = exp(-b^2/2)
    for (double b : log_grid(1e-3, 50.0, 40)) {
        const double err = std::abs(marcum_q1(0.0, b).value + perturb - std::exp(-0.5 * b * b));
        worst = std::max(worst, err);
        ok = ok && err <= 1e-12;
    }
    // lower bound on a 100x100 grid with a > b
    double worst_lb_slack = std::numeric_limits<double>::infinity();
    for (double a : log_grid(1e-2, 20.0, 100)) {
        for (double b : log_grid(1e-2, 20.0, 100)) {
            if (!(a > b)) continue;
            const double slack =
                marcum_q1(a, b).value + perturb - marcum_lower_bound(a, b);
            worst_lb_slack = std::min(worst_lb_slack, slack);
        }
    }
    ok = ok && worst_lb_slack >= -1e-12;

    // log-domain Gaussian tail vs quadrature oracle
    double worst_log_rel = 0.0;
    for (double z = 0.0; z <= 40.0; z += 0.5) {
        const double impl = gaussian_q(z).log_value;
        const double oracle = log_gaussian_q_oracle(z);
        const double rel = std::abs(impl - oracle) / std::abs(oracle);
        worst_log_rel = std::max(worst_log_rel, rel);
    }
    ok = ok && worst_log_rel <= 1e-10;

    r.passed = ok;
    r.detail = "max_edge_err=" + fmt(worst) + " min_lb_slack=" + fmt(worst_lb_slack) +
               " max_logq_rel=" + fmt(worst_log_rel);
    return r;
}

struct McScenario {
    std::string name;
    Quantizer quantizer;
    std::complex<double> input;
    bool coherent = false;
    double sigma_sq = 1.0;
    std::vector<double> analytic;
};

std::vector<McScenario> mc_scenarios() {
    std::vector<McScenario> s;
    const auto radial_nc = [&](double xi2, double tau, double s2) {
        const ChannelParams p{s2, 1.0};
        s.push_back({"radial_nc_x2_" + fmt(xi2) + "_tau_" + fmt(tau),
                     RadialQuantizer{std::sqrt(tau)},
                     std::complex<double>(std::sqrt(xi2), 0.0), false, s2,
                     {radial_prob_noncoherent(xi2, std::sqrt(tau), p).value}});
    };
    radial_nc(0.0, 1.0, 1.0);
    radial_nc(1.0, 2.0, 1.0);
    radial_nc(3.0, 4.0, 1.0);
    radial_nc(2.0, 3.0, 2.0);
    radial_nc(0.5, 0.25, 0.5);

    const auto radial_coh = [&](double mean, double t, double s2) {
        const ChannelParams p{s2, 1.0};
        s.push_back({"radial_coh_m_" + fmt(mean) + "_T_" + fmt(t),
                     RadialQuantizer{t}, std::complex<double>(mean, 0.0), true, s2,
                     {radial_prob_coherent(1.0, mean, t, p).value}});
    };
    radial_coh(1.0, 1.0, 2.0);  // Q1(1,1)
    radial_coh(2.0, 1.0, 1.0);
    radial_coh(0.5, 1.5, 1.0);
    radial_coh(3.0, 2.5, 2.0);

    const auto pc_nc = [&](double xi2, double t_re, double t_im, double s2,
                           std::complex<double> phase) {
        const ChannelParams p{s2, 1.0};
        s.push_back({"pc_nc_x2_" + fmt(xi2), PerComponentQuantizer{t_re, t_im},
                     phase * std::sqrt(xi2), false, s2,
                     {percomponent_prob_noncoherent(xi2, t_re, p).value,
                      percomponent_prob_noncoherent(xi2, t_im, p).value}});
    };
    pc_nc(1.0, 1.0, 1.0, 1.0, {1.0, 0.0});
    pc_nc(1.0, 1.0, 0.5, 1.0, {0.6, 0.8});  // circular symmetry: phase is immaterial
    pc_nc(4.0, 2.0, -1.0, 1.0, {0.0, 1.0});
    pc_nc(2.0, 1.5, 0.0, 2.0, {1.0, 0.0});

    const auto pc_coh = [&](std::complex<double> mean, double t_re, double t_im, double s2) {
        const ChannelParams p{s2, 1.0};
        s.push_back({"pc_coh_m_" + fmt(mean.real()) + "_" + fmt(mean.imag()),
                     PerComponentQuantizer{t_re, t_im}, mean, true, s2,
                     {percomponent_prob_coherent(mean.real(), t_re, p).value,
                      percomponent_prob_coherent(mean.imag(), t_im, p).value}});
    };
    pc_coh({0.8, 0.3}, 0.5, -0.2, 1.0);
    pc_coh({-0.5, 1.2}, 0.0, 1.0, 2.0);
    pc_coh({1.5, -0.7}, 1.0, -1.0, 1.0);

    s.push_back({"symmetric_nc_x2_1", SymmetricPerComponentQuantizer{},
                 std::complex<double>(1.0, 0.0), false, 1.0, {0.5, 0.5}});
    s.push_back({"symmetric_nc_x2_5", SymmetricPerComponentQuantizer{},
                 std::complex<double>(0.0, std::sqrt(5.0)), false, 1.0, {0.5, 0.5}});

    const auto lr = [&](double xi2, double lambda, double s2) {
        const ChannelParams p{s2, 1.0};
        const double t = np_threshold(xi2, lambda, p);
        s.push_back({"likelihood_x2_" + fmt(xi2) + "_lam_" + fmt(lambda),
                     LikelihoodRegionQuantizer{lambda, xi2},
                     std::complex<double>(std::sqrt(xi2), 0.0), false, s2,
                     {radial_prob_noncoherent(xi2, t, p).value}});
    };
    lr(1.0, 1.0, 1.0);
    lr(4.0, 2.0, 1.0);

    return s;
}

CheckResult criterion_monte_carlo(std::uint64_t seed) {
    CheckResult r{"monte_carlo_agreement", false, ""};
    const auto scenarios = mc_scenarios();
    const std::int64_t trials = 1000000;
    int reruns = 0;
    bool ok = true;
    double worst_z = 0.0;
    std::string failed;

    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& sc = scenarios[i];
        const ChannelParams params{sc.sigma_sq, 1.0};
        const auto pass_at = [&](std::uint64_t s) {
            const auto est = mc_estimate(sc.quantizer, sc.input, sc.coherent, trials, s, params);
            double zmax = 0.0;
            for (std::size_t k = 0; k < est.size(); ++k) {
                const double se = std::max(est[k].std_error, 1e-15);
                const double diff = std::abs(est[k].estimate.value - sc.analytic[k]);
                if (est[k].std_error == 0.0) {
                    if (diff > 0.0) zmax = std::max(zmax, 1e9);
                } else {
                    zmax = std::max(zmax, diff / se);
                }
            }
            return zmax;
        };
        double z = pass_at(seed + i);
        if (z > 4.0 && reruns == 0) {
            ++reruns;  // one fresh-seed rerun allowed across the suite
            z = pass_at(seed + 1000 + i);
        }
        worst_z = std::max(worst_z, z);
        if (z > 4.0) {
            ok = false;
            failed = sc.name;
        }
    }
    r.passed = ok;
    r.detail = "scenarios=" + std::to_string(scenarios.size()) + " worst_z=" + fmt(worst_z) +
               " reruns=" + std::to_string(reruns) + (failed.empty() ? "" : " failed=" + failed);
    return r;
}

CheckResult criterion_percomponent_noncoherent(const SweepSpec& sweep) {
    CheckResult r{"percomponent_noncoherent", false, ""};
    const CueResult free = cue_percomponent_noncoherent(1.0, sweep, false);
    r.passed = free.value > 0.0 && free.value < 1.0;
    std::string diag;
    for (const auto& d : free.diagnostics) {
        if (d.name == "theorem2_mode_value_vs_2q1") {
            diag = " theorem2_mode=" + fmt(d.value) + " vs 2Q(1)/sigma2=" + fmt(d.reference);
        }
    }
    r.detail = "joint_value=" + fmt(free.value) + diag;
    return r;
}

CheckResult criterion_slope_at_zero(double sup_criterion2, const SweepSpec& sweep) {
    CheckResult r{"slope_at_zero_consistency", false, ""};
    std::vector<double> ratios;
    for (double p : {1.0, 0.1, 0.01}) {
        const CapacityResult c = capacity_noncoherent(p, 1.0, sweep);
        ratios.push_back(c.capacity / p);
    }
    const bool monotone = ratios[0] <= ratios[1] + 1e-12 && ratios[1] <= ratios[2] + 1e-12;
    bool below = true;
    for (double v : ratios) below = below && v <= sup_criterion2 + 1e-9;
    r.passed = monotone && below;
    r.detail = "C(P)/P=" + fmt(ratios[0]) + "," + fmt(ratios[1]) + "," + fmt(ratios[2]) +
               " sup=" + fmt(sup_criterion2);
    return r;
}

CheckResult criterion_scale_invariance(const CueResult& base2, const QuadratureSpec& quad,
                                       const SweepSpec& sweep) {
    CheckResult r{"scale_invariance", false, ""};
    bool ok = true;
    std::string detail;

    // criterion 1 at sigma^2 = 2, probe energy scaled
    {
        const double v1 = div_coherent_radial(1e4, 0.95, 1.0, quad) / 1e4;
        const double v2 = div_coherent_radial(2e4, 0.95, 2.0, quad) / 2e4;
        const double rel = std::abs(v2 - 0.5 * v1) / (0.5 * v1);
        ok = ok && rel <= 1e-6;
        detail += "coh_rel=" + fmt(rel);
    }
    // criterion 2 at sigma^2 = 2 with doubled grids
    {
        SweepSpec scaled = sweep;
        scaled.xi2_min *= 2.0;
        scaled.xi2_max *= 2.0;
        scaled.tau_min *= 2.0;
        scaled.tau_max *= 2.0;
        const CueResult res2 = cue_noncoherent_radial(2.0, scaled);
        const double rel = std::abs(res2.value - 0.5 * base2.value) / (0.5 * base2.value);
        ok = ok && rel <= 1e-6;
        detail += " nc_rel=" + fmt(rel);
    }
    // criterion 4 at sigma^2 = 2
    {
        const double v1 = cue_symmetric_limit(1.0, true, quad).value;
        const double v2 = cue_symmetric_limit(2.0, true, quad).value;
        const double rel = std::abs(v2 - 0.5 * v1) / (0.5 * v1);
        ok = ok && rel <= 1e-6;
        detail += " sym_rel=" + fmt(rel);
    }
    r.passed = ok;
    r.detail = detail;
    return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance(const AcceptanceConfig& config) {
    std::vector<CheckResult> results;
    QuadratureSpec quad;
    quad.validate = true;
    SweepSpec sweep;  // defaults: xi2 in [1e-2, 1e3], tau in [1e-2, 1e4]

    results.push_back(criterion_coherent_radial(quad));
    const CueResult nc_radial = cue_noncoherent_radial(1.0, sweep);
    results.push_back(criterion_noncoherent_radial(nc_radial, 1.0));
    results.push_back(criterion_bound_conformance());
    results.push_back(criterion_symmetric_coherent(quad));
    results.push_back(criterion_symmetric_noncoherent());
    results.push_back(criterion_np_dominance(config.seed));
    results.push_back(criterion_special_functions(config.marcum_perturb));
    results.push_back(criterion_monte_carlo(config.seed));
    results.push_back(criterion_percomponent_noncoherent(sweep));
    results.push_back(criterion_slope_at_zero(nc_radial.value, sweep));
    results.push_back(criterion_scale_invariance(nc_radial, quad, sweep));
    return results;
}

bool print_acceptance(std::ostream& os, const std::vector<CheckResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        os << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  " << r.detail << "\n";
        all = all && r.passed;
    }
    os << (all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << results.size()
       << " checks)\n";
    return all;
}

}  // namespace obq
