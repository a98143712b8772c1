#include "obq/cue.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "obq/channel.hpp"
#include "obq/errors.hpp"
#include "obq/rng.hpp"
#include "obq/specfun.hpp"

namespace obq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;
constexpr double kLog2 = 0.69314718055994530942;

void require_sigma(double sigma_sq) {
    if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
        throw std::domain_error("sigma_sq must be positive and finite");
    }
}

void require_mu(double mu) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("mu must lie in (0,1)");
}

// u-scale of the integrand boundary layer for fading-proportional thresholds
double coherent_u_scale(double probe_energy, double mu, double sigma_sq) {
    const double xi = std::sqrt(probe_energy);
    return std::sqrt(sigma_sq) / (std::sqrt(2.0) * xi * std::max(mu, 1.0 - mu));
}

}  // namespace

bool CueResult::all_bounds_satisfied() const {
    return std::all_of(bound_checks.begin(), bound_checks.end(),
                       [](const BoundCheck& b) { return b.satisfied; });
}

double div_noncoherent_radial(double probe_energy, double threshold_sq, double sigma_sq) {
    require_sigma(sigma_sq);
    if (!(probe_energy > 0.0) || !std::isfinite(probe_energy)) {
        throw std::domain_error("div_noncoherent_radial: probe_energy must be positive");
    }
    if (!(threshold_sq >= 0.0) || !std::isfinite(threshold_sq)) {
        throw std::domain_error("div_noncoherent_radial: threshold_sq must be >= 0");
    }
    const Probability p_on = Probability::from_log(-threshold_sq / (probe_energy + sigma_sq));
    const Probability p_off = Probability::from_log(-threshold_sq / sigma_sq);
    return binary_kl(p_on, p_off);
}

double div_coherent_radial(double probe_energy, double mu, double sigma_sq,
                           const QuadratureSpec& quad) {
    require_sigma(sigma_sq);
    require_mu(mu);
    if (!(probe_energy > 0.0)) throw std::domain_error("div_coherent_radial: probe_energy > 0");
    const double xi = std::sqrt(probe_energy);
    const double scale = std::sqrt(2.0 / sigma_sq);
    const auto g = [&](double t) {
        const double a = scale * std::sqrt(t) * xi;
        const Probability p_on = marcum_q1(a, mu * a);
        // threshold T = mu |h||xi| makes p_off = exp(-mu^2 |h|^2 |xi|^2 / sigma^2)
        const Probability p_off = Probability::from_log(-mu * mu * t * probe_energy / sigma_sq);
        return binary_kl(p_on, p_off);
    };
    return fading_expectation_checked(g, quad, coherent_u_scale(probe_energy, mu, sigma_sq));
}

double div_percomponent_noncoherent(double probe_energy, double t_re, double t_im,
                                    double sigma_sq) {
    require_sigma(sigma_sq);
    if (!(probe_energy >= 0.0) || !std::isfinite(t_re) || !std::isfinite(t_im)) {
        throw std::domain_error("div_percomponent_noncoherent: bad arguments");
    }
    const ChannelParams params{sigma_sq, 1.0};
    double total = 0.0;
    for (double t : {t_re, t_im}) {
        const Probability p_on = percomponent_prob_noncoherent(probe_energy, t, params);
        const Probability p_off = percomponent_prob_noncoherent(0.0, t, params);
        total += binary_kl(p_on, p_off);
    }
    return total;
}

namespace {

// Per-component coherent KL for one realized component mean m, with the
// fading-proportional threshold schedule T = mu * m (mu = 0 is symmetric).
double percomponent_kl_at_mean(double m, double mu, const ChannelParams& params) {
    const Probability p_on = percomponent_prob_coherent(m, mu * m, params);
    const Probability p_off = percomponent_prob_coherent(0.0, mu * m, params);
    return binary_kl(p_on, p_off);
}

// Fading average of the two-component KL sum: magnitude via the exponential
// energy law, phase reduced to [0, pi/2] by circular symmetry and the
// flip-invariance of the binary KL.
double percomponent_fading_average(double probe_energy, double mu, double sigma_sq,
                                   const QuadratureSpec& quad, double u_scale) {
    const ChannelParams params{sigma_sq, 1.0};
    const double xi = std::sqrt(probe_energy);
    const QuadRule phase = gauss_legendre_on(quad.nodes, 0.0, 0.5 * kPi);
    const auto g = [&](double t) {
        const double amp = std::sqrt(t) * xi;
        double acc = 0.0;
        for (std::size_t i = 0; i < phase.x.size(); ++i) {
            acc += phase.w[i] * percomponent_kl_at_mean(amp * std::cos(phase.x[i]), mu, params);
        }
        return 2.0 * (2.0 / kPi) * acc;
    };
    return fading_expectation_checked(g, quad, u_scale);
}

}  // namespace

double div_percomponent_coherent(std::complex<double> probe, double mu, double sigma_sq,
                                 const QuadratureSpec& quad) {
    require_sigma(sigma_sq);
    require_mu(mu);
    const double probe_energy = std::norm(probe);
    if (!(probe_energy > 0.0)) return 0.0;
    return percomponent_fading_average(probe_energy, mu, sigma_sq, quad,
                                       coherent_u_scale(probe_energy, mu, sigma_sq));
}

double div_symmetric_coherent(double probe_energy, double sigma_sq,
                              const QuadratureSpec& quad) {
    require_sigma(sigma_sq);
    if (!(probe_energy > 0.0)) return 0.0;
    const double u_scale = std::min(1.0, std::sqrt(sigma_sq / (2.0 * probe_energy)));
    return percomponent_fading_average(probe_energy, 0.0, sigma_sq, quad, u_scale);
}

double unquantized_kl_bound(double probe_energy, double sigma_sq) {
    require_sigma(sigma_sq);
    if (!(probe_energy >= 0.0)) throw std::domain_error("unquantized_kl_bound: probe_energy >= 0");
    const double snr = probe_energy / sigma_sq;
    return snr - std::log1p(snr);
}

double exp_bound(double probe_energy, double sigma_sq) {
    require_sigma(sigma_sq);
    if (!(probe_energy >= 0.0)) throw std::domain_error("exp_bound: probe_energy >= 0");
    return probe_energy / (kE * sigma_sq) + 2.0 / kE;
}

namespace {

struct TrackedObjective {
    double max_seen = 0.0;

    double record(double v) {
        max_seen = std::max(max_seen, v);
        return v;
    }
};

void push_dpi_checks(CueResult& r, double sigma_sq, double max_seen, bool strict_all_points) {
    const double ceiling = 1.0 / sigma_sq;
    r.bound_checks.push_back({"dpi_ceiling", ceiling, r.value <= ceiling + 1e-9});
    if (strict_all_points) {
        r.bound_checks.push_back({"strict_ceiling_all_points", ceiling, max_seen < ceiling});
        r.diagnostics.push_back({"max_evaluated_objective", max_seen, ceiling});
    }
}

}  // namespace

CueResult cue_noncoherent_radial(double sigma_sq, const SweepSpec& sweep) {
    require_sigma(sigma_sq);
    sweep.check();

    const auto xi2_grid = log_grid(sweep.xi2_min, sweep.xi2_max, sweep.xi2_points);
    const auto tau_grid = log_grid(sweep.tau_min, sweep.tau_max, sweep.tau_points);
    TrackedObjective tracker;

    const auto best_over_tau = [&](double xi2) {
        const auto f = [&](double tau) {
            return tracker.record(div_noncoherent_radial(xi2, tau, sigma_sq) / xi2);
        };
        return grid_then_golden(f, tau_grid, sweep.rel_tol, sweep.max_refine_iters);
    };

    // outer maximization over probe energy
    std::size_t best_i = 0;
    GridMax best_inner = best_over_tau(xi2_grid[0]);
    for (std::size_t i = 1; i < xi2_grid.size(); ++i) {
        const GridMax inner = best_over_tau(xi2_grid[i]);
        if (inner.value > best_inner.value) {
            best_inner = inner;
            best_i = i;
        }
    }

    CueResult result;
    result.threshold_kind = "tau";
    result.supremum_at_infinity = best_i + 1 == xi2_grid.size();
    double xi2_star = xi2_grid[best_i];
    if (!result.supremum_at_infinity && best_i > 0) {
        const auto outer = [&](double xi2) { return best_over_tau(xi2).value; };
        const ScalarMax refined = golden_max_log(outer, xi2_grid[best_i - 1], xi2_grid[best_i + 1],
                                                 sweep.rel_tol, sweep.max_refine_iters);
        if (refined.value > best_inner.value) xi2_star = refined.x;
    }
    const GridMax final_inner = best_over_tau(xi2_star);
    result.value = final_inner.value;
    result.probe_energy = xi2_star;
    result.threshold = final_inner.x;

    const double d_star = result.value * xi2_star;
    result.bound_checks.push_back({"unquantized_kl_bound",
                                   unquantized_kl_bound(xi2_star, sigma_sq) / xi2_star,
                                   d_star <= unquantized_kl_bound(xi2_star, sigma_sq) + 1e-12});
    result.bound_checks.push_back({"exp_bound", exp_bound(xi2_star, sigma_sq) / xi2_star,
                                   d_star <= exp_bound(xi2_star, sigma_sq) + 1e-12});
    push_dpi_checks(result, sigma_sq, tracker.max_seen, /*strict_all_points=*/true);
    return result;
}

CueResult cue_coherent_radial(double sigma_sq, const std::vector<double>& mu_schedule,
                              const SweepSpec& sweep, const QuadratureSpec& quad) {
    require_sigma(sigma_sq);
    sweep.check();
    quad.check();
    if (mu_schedule.empty()) throw std::invalid_argument("cue_coherent_radial: empty mu schedule");
    for (double mu : mu_schedule) require_mu(mu);

    const auto xi2_grid = log_grid(sweep.xi2_min, sweep.xi2_max, sweep.xi2_points);
    QuadratureSpec grid_quad = quad;
    grid_quad.validate = false;  // node-doubling reserved for the final point

    CueResult result;
    result.threshold_kind = "mu";
    double best_value = -1.0;
    double best_mu = mu_schedule.front();
    bool best_at_edge = false;
    double best_xi2 = xi2_grid.back();

    for (double mu : mu_schedule) {
        const auto f = [&](double xi2) {
            return div_coherent_radial(xi2, mu, sigma_sq, grid_quad) / xi2;
        };
        const GridMax gm = grid_then_golden(f, xi2_grid, sweep.rel_tol, sweep.max_refine_iters);
        if (gm.value > best_value) {
            best_value = gm.value;
            best_mu = mu;
            best_xi2 = gm.x;
            best_at_edge = gm.at_upper_edge;
        }
    }

    result.value = div_coherent_radial(best_xi2, best_mu, sigma_sq, quad) / best_xi2;
    result.probe_energy = best_xi2;
    result.threshold = best_mu;
    result.supremum_at_infinity = best_at_edge;

    const double chain = best_mu * best_mu / sigma_sq -
                         (best_mu * best_mu / (2.0 * kE * (1.0 - best_mu) * (1.0 - best_mu)) +
                          kLog2) /
                             best_xi2;
    result.bound_checks.push_back({"mu_chain_lower_bound", chain, result.value >= chain - 1e-12});
    push_dpi_checks(result, sigma_sq, result.value, /*strict_all_points=*/false);
    return result;
}

namespace {

double theorem2_objective(double xi2, double sigma_sq) {
    const double t = 0.5 * (xi2 + sigma_sq);
    return div_percomponent_noncoherent(xi2, t, t, sigma_sq) / xi2;
}

}  // namespace

CueResult cue_percomponent_noncoherent(double sigma_sq, const SweepSpec& sweep,
                                       bool theorem2_mode) {
    require_sigma(sigma_sq);
    sweep.check();

    const auto xi2_grid = log_grid(sweep.xi2_min, sweep.xi2_max, sweep.xi2_points);
    TrackedObjective tracker;

    CueResult result;
    result.threshold_kind = "t_component";

    if (theorem2_mode) {
        const auto f = [&](double xi2) { return tracker.record(theorem2_objective(xi2, sigma_sq)); };
        const GridMax gm = grid_then_golden(f, xi2_grid, sweep.rel_tol, sweep.max_refine_iters);
        result.value = gm.value;
        result.probe_energy = gm.x;
        result.threshold = 0.5 * (gm.x + sigma_sq);
        result.supremum_at_infinity = gm.at_upper_edge;
    } else {
        const auto t_grid =
            log_grid(std::sqrt(sweep.tau_min), std::sqrt(sweep.tau_max), sweep.tau_points);
        const auto best_over_t = [&](double xi2) {
            const auto f = [&](double t) {
                return tracker.record(div_percomponent_noncoherent(xi2, t, t, sigma_sq) / xi2);
            };
            return grid_then_golden(f, t_grid, sweep.rel_tol, sweep.max_refine_iters);
        };
        std::size_t best_i = 0;
        GridMax best_inner = best_over_t(xi2_grid[0]);
        for (std::size_t i = 1; i < xi2_grid.size(); ++i) {
            const GridMax inner = best_over_t(xi2_grid[i]);
            if (inner.value > best_inner.value) {
                best_inner = inner;
                best_i = i;
            }
        }
        double xi2_star = xi2_grid[best_i];
        result.supremum_at_infinity = best_i + 1 == xi2_grid.size();
        if (!result.supremum_at_infinity && best_i > 0) {
            const auto outer = [&](double xi2) { return best_over_t(xi2).value; };
            const ScalarMax refined = golden_max_log(outer, xi2_grid[best_i - 1],
                                                     xi2_grid[best_i + 1], sweep.rel_tol,
                                                     sweep.max_refine_iters);
            if (refined.value > best_inner.value) xi2_star = refined.x;
        }
        const GridMax final_inner = best_over_t(xi2_star);
        result.value = final_inner.value;
        result.probe_energy = xi2_star;
        result.threshold = final_inner.x;
    }

    // Theorem-2 operating point, reported as a diagnostic only: the published
    // constant 2 Q(1)/sigma^2 comes without a derivation to check against.
    const auto t2f = [&](double xi2) { return theorem2_objective(xi2, sigma_sq); };
    const GridMax t2 = grid_then_golden(t2f, xi2_grid, sweep.rel_tol, sweep.max_refine_iters);
    result.diagnostics.push_back(
        {"theorem2_mode_value_vs_2q1", t2.value, 2.0 * gaussian_q(1.0).value / sigma_sq});

    result.bound_checks.push_back({"positive", 0.0, result.value > 0.0});
    result.bound_checks.push_back(
        {"dpi_ceiling_strict", 1.0 / sigma_sq, result.value < 1.0 / sigma_sq});
    push_dpi_checks(result, sigma_sq, tracker.max_seen, /*strict_all_points=*/true);
    return result;
}

CueResult cue_percomponent_coherent(double sigma_sq, const std::vector<double>& mu_schedule,
                                    const SweepSpec& sweep, const QuadratureSpec& quad) {
    require_sigma(sigma_sq);
    sweep.check();
    quad.check();
    if (mu_schedule.empty()) {
        throw std::invalid_argument("cue_percomponent_coherent: empty mu schedule");
    }
    for (double mu : mu_schedule) require_mu(mu);

    const auto xi2_grid = log_grid(sweep.xi2_min, sweep.xi2_max, sweep.xi2_points);
    QuadratureSpec grid_quad = quad;
    grid_quad.validate = false;

    CueResult result;
    result.threshold_kind = "mu";
    double best_value = -1.0;
    double best_mu = mu_schedule.front();
    double best_xi2 = xi2_grid.back();
    bool best_at_edge = false;

    for (double mu : mu_schedule) {
        const auto f = [&](double xi2) {
            return div_percomponent_coherent(std::complex<double>(std::sqrt(xi2), 0.0), mu,
                                             sigma_sq, grid_quad) /
                   xi2;
        };
        const GridMax gm = grid_then_golden(f, xi2_grid, sweep.rel_tol, sweep.max_refine_iters);
        if (gm.value > best_value) {
            best_value = gm.value;
            best_mu = mu;
            best_xi2 = gm.x;
            best_at_edge = gm.at_upper_edge;
        }
    }

    result.value = div_percomponent_coherent(std::complex<double>(std::sqrt(best_xi2), 0.0),
                                             best_mu, sigma_sq, quad) /
                   best_xi2;
    result.probe_energy = best_xi2;
    result.threshold = best_mu;
    result.supremum_at_infinity = best_at_edge;

    result.bound_checks.push_back({"exceeds_symmetric_constant", 2.0 / (kPi * sigma_sq),
                                   result.value > 2.0 / (kPi * sigma_sq)});
    push_dpi_checks(result, sigma_sq, result.value, /*strict_all_points=*/false);
    return result;
}

CueResult cue_symmetric_limit(double sigma_sq, bool coherent, const QuadratureSpec& quad) {
    require_sigma(sigma_sq);
    quad.check();

    const double sigma = std::sqrt(sigma_sq);
    const double eps1 = 1e-2 * sigma;
    const double eps2 = 1e-3 * sigma;
    const auto slope = [&](double eps) {
        const double xi2 = eps * eps;
        const double d = coherent ? div_symmetric_coherent(xi2, sigma_sq, quad)
                                  : div_percomponent_noncoherent(xi2, 0.0, 0.0, sigma_sq);
        return d / xi2;
    };
    const double s1 = slope(eps1);
    const double s2 = slope(eps2);
    const double e1sq = eps1 * eps1;
    const double e2sq = eps2 * eps2;
    const double extrapolated = (e1sq * s2 - e2sq * s1) / (e1sq - e2sq);
    if (std::abs(extrapolated - s2) > 1e-3 * std::max(std::abs(extrapolated), 1e-300)) {
        throw numerical_error("cue_symmetric_limit: step sizes disagree beyond 1e-3 relative");
    }

    CueResult result;
    result.value = extrapolated;
    result.probe_energy = e2sq;
    result.threshold = 0.0;
    result.threshold_kind = "t_component";
    if (coherent) {
        const double target = 2.0 / (kPi * sigma_sq);
        result.bound_checks.push_back(
            {"matches_2_over_pi_sigma2", target,
             std::abs(extrapolated - target) <= 1e-3 * target});
    } else {
        result.bound_checks.push_back({"zero_capacity", 0.0, extrapolated <= 1e-15});
    }
    push_dpi_checks(result, sigma_sq, result.value, /*strict_all_points=*/false);
    return result;
}

namespace {

struct PolarGrid {
    int n_r = 256;
    int n_ang = 64;
    std::vector<double> ring_on;   // ring mass under X = xi
    std::vector<double> ring_off;  // ring mass under X = 0
    std::vector<double> r_edges;
};

PolarGrid make_polar_grid(double probe_energy, double sigma_sq) {
    PolarGrid grid;
    const double v_on = probe_energy + sigma_sq;
    const double radius = 8.0 * std::sqrt(v_on);
    grid.r_edges.resize(grid.n_r + 1);
    for (int i = 0; i <= grid.n_r; ++i) grid.r_edges[i] = radius * i / grid.n_r;
    grid.ring_on.resize(grid.n_r);
    grid.ring_off.resize(grid.n_r);
    for (int i = 0; i < grid.n_r; ++i) {
        const double r0 = grid.r_edges[i], r1 = grid.r_edges[i + 1];
        grid.ring_on[i] = std::exp(-r0 * r0 / v_on) - std::exp(-r1 * r1 / v_on);
        grid.ring_off[i] = std::exp(-r0 * r0 / sigma_sq) - std::exp(-r1 * r1 / sigma_sq);
    }
    return grid;
}

double matched_radial_divergence(double beta, double v_on, double sigma_sq) {
    // radial quantizer with the same on-probability: tau = -v log(beta)
    const double log_beta = std::log(beta);
    const Probability p_on{beta, log_beta};
    const Probability p_off = Probability::from_log(log_beta * v_on / sigma_sq);
    return binary_kl(p_on, p_off);
}

}  // namespace

DominanceReport np_radial_dominance_check(double probe_energy, double sigma_sq,
                                          int region_samples, std::uint64_t seed) {
    require_sigma(sigma_sq);
    if (!(probe_energy > 0.0)) throw std::domain_error("np_radial_dominance_check: probe_energy > 0");
    if (region_samples < 50) {
        throw std::invalid_argument("np_radial_dominance_check: region_samples must be >= 50");
    }

    const double v_on = probe_energy + sigma_sq;
    const PolarGrid grid = make_polar_grid(probe_energy, sigma_sq);
    const int n_cells = grid.n_r * grid.n_ang;

    DominanceReport report;
    // the on law is the heavier-tailed of the two, so its deficit dominates
    report.mass_deficit =
        1.0 - std::accumulate(grid.ring_on.begin(), grid.ring_on.end(), 0.0);
    if (report.mass_deficit > 1e-6) {
        throw numerical_error("np_radial_dominance_check: discretization mass deficit > 1e-6");
    }

    // best radial quantizer at this probe energy
    const auto radial_obj = [&](double tau) {
        return binary_kl(Probability::from_log(-tau / v_on),
                         Probability::from_log(-tau / sigma_sq));
    };
    const auto tau_grid = log_grid(1e-3 * v_on, 60.0 * v_on, 96);
    const GridMax best = grid_then_golden(radial_obj, tau_grid, 1e-10, 200);
    report.best_radial_tau = best.x;
    report.best_radial_value = best.value;
    const double beta_star = std::exp(-best.x / v_on);

    const CounterRng rng(seed);
    double worst = std::numeric_limits<double>::infinity();

    const auto evaluate_region = [&](double beta, double q) {
        if (beta <= 0.0 || beta >= 1.0 || q <= 0.0 || q >= 1.0) return;
        const double d_region = binary_kl(Probability::from_value(beta),
                                          Probability::from_value(q));
        const double margin = matched_radial_divergence(beta, v_on, sigma_sq) - d_region;
        worst = std::min(worst, margin);
        ++report.regions_tested;
    };

    // exact radial region made of whole cells: margin ~ 0 by construction
    {
        int i_star = grid.n_r / 2;
        const double r_star = std::sqrt(best.x);
        for (int i = 0; i <= grid.n_r; ++i) {
            if (grid.r_edges[i] >= r_star) {
                i_star = std::max(1, i);
                break;
            }
        }
        double beta = 0.0, q = 0.0;
        for (int i = i_star; i < grid.n_r; ++i) {
            beta += grid.ring_on[i];
            q += grid.ring_off[i];
        }
        evaluate_region(beta, q);
    }

    for (int k = 0; k < region_samples; ++k) {
        const auto counter = static_cast<std::uint64_t>(k);
        const int kind = k % 4;
        double beta = 0.0, q = 0.0;
        if (kind == 0) {
            // half-plane: half of every ring under either law (the angular
            // offset is immaterial by circular symmetry)
            const double frac = 0.5;
            for (int i = 0; i < grid.n_r; ++i) {
                beta += grid.ring_on[i] * frac;
                q += grid.ring_off[i] * frac;
            }
        } else if (kind == 1) {
            // angular sector of random width, all radii
            const int width = 1 + static_cast<int>(rng.uniform(counter, 0) * (grid.n_ang - 1));
            const double frac = static_cast<double>(width) / grid.n_ang;
            for (int i = 0; i < grid.n_r; ++i) {
                beta += grid.ring_on[i] * frac;
                q += grid.ring_off[i] * frac;
            }
        } else if (kind == 2) {
            // random union of cells greedily filled to the best radial beta
            std::vector<int> order(n_cells);
            std::iota(order.begin(), order.end(), 0);
            for (int i = n_cells - 1; i > 0; --i) {
                const int j = static_cast<int>(rng.uniform(counter, static_cast<std::uint32_t>(i)) *
                                               (i + 1));
                std::swap(order[i], order[std::min(j, i)]);
            }
            for (int idx : order) {
                if (beta >= beta_star) break;
                const int ring = idx / grid.n_ang;
                beta += grid.ring_on[ring] / grid.n_ang;
                q += grid.ring_off[ring] / grid.n_ang;
            }
        } else {
            // interior annulus
            const int i0 = static_cast<int>(rng.uniform(counter, 0) * (grid.n_r - 2));
            const int i1 = i0 + 1 +
                           static_cast<int>(rng.uniform(counter, 1) * (grid.n_r - i0 - 1));
            for (int i = i0; i < std::min(i1, grid.n_r); ++i) {
                beta += grid.ring_on[i];
                q += grid.ring_off[i];
            }
        }
        evaluate_region(beta, q);
    }

    report.worst_margin = worst;
    return report;
}

}  // namespace obq
