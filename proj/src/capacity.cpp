#include "obq/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "obq/specfun.hpp"

namespace obq {

namespace {

double logsumexp2(double a, double b) {
    const double m = std::max(a, b);
    if (m == -std::numeric_limits<double>::infinity()) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double mutual_info_binary(const OnOffInput& input, const BinaryLaw& law) {
    const double p = input.on_prob;
    if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("mutual_info_binary: on_prob in (0,1]");
    for (const Probability* q : {&law.p_on, &law.p_off}) {
        if (!(q->value >= 0.0 && q->value <= 1.0)) {
            throw std::domain_error("mutual_info_binary: law outside [0,1]");
        }
    }
    if (p == 1.0) return 0.0;  // degenerate input carries no information

    const double log_bar =
        logsumexp2(std::log(p) + law.p_on.log_value, std::log1p(-p) + law.p_off.log_value);
    const Probability bar = Probability::from_log(std::min(log_bar, 0.0));
    const double mi = binary_entropy(bar) - p * binary_entropy(law.p_on) -
                      (1.0 - p) * binary_entropy(law.p_off);
    return std::max(mi, 0.0);
}

CapacityResult capacity_noncoherent(double power, double sigma_sq, const SweepSpec& sweep) {
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw std::domain_error("capacity_noncoherent: power must be positive");
    }
    if (!(sigma_sq > 0.0)) throw std::domain_error("capacity_noncoherent: sigma_sq must be positive");
    sweep.check();

    // The power constraint is active at the optimum (mutual information is
    // nondecreasing in the admissible on-energy), so substitute A^2 = P/p.
    const auto mi_at = [&](double p, double c) {
        const double on_energy = power / p;
        const double tau = c * (on_energy + sigma_sq);
        const BinaryLaw law{Probability::from_log(-tau / (on_energy + sigma_sq)),
                            Probability::from_log(-tau / sigma_sq)};
        return mutual_info_binary({std::sqrt(on_energy), p}, law);
    };

    const double p_min = std::min(0.5, std::max(1e-9, power / sweep.xi2_max));
    const auto p_grid = log_grid(p_min, 1.0, sweep.xi2_points);
    const auto c_grid = log_grid(0.02, 20.0, sweep.tau_points);

    const auto best_over_c = [&](double p) {
        return grid_then_golden([&](double c) { return mi_at(p, c); }, c_grid, sweep.rel_tol,
                                sweep.max_refine_iters);
    };

    std::size_t best_i = 0;
    GridMax best_inner = best_over_c(p_grid[0]);
    for (std::size_t i = 1; i < p_grid.size(); ++i) {
        const GridMax inner = best_over_c(p_grid[i]);
        if (inner.value > best_inner.value) {
            best_inner = inner;
            best_i = i;
        }
    }

    CapacityResult result;
    result.at_grid_edge = best_i == 0 || best_i + 1 == p_grid.size();
    double p_star = p_grid[best_i];
    if (!result.at_grid_edge) {
        const ScalarMax refined =
            golden_max_log([&](double p) { return best_over_c(p).value; }, p_grid[best_i - 1],
                           p_grid[best_i + 1], sweep.rel_tol, sweep.max_refine_iters);
        if (refined.value > best_inner.value) p_star = refined.x;
    }
    const GridMax final_inner = best_over_c(p_star);

    result.capacity = final_inner.value;
    result.input.on_prob = p_star;
    result.input.on_level = std::sqrt(power / p_star);
    result.threshold_sq = final_inner.x * (power / p_star + sigma_sq);
    result.at_grid_edge = result.at_grid_edge || final_inner.at_lower_edge ||
                          final_inner.at_upper_edge;
    return result;
}

}  // namespace obq
