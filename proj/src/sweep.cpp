#include "obq/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace obq {

void SweepSpec::check() const {
    const bool grids_ok =
        xi2_min > 0.0 && xi2_max >= xi2_min && tau_min > 0.0 && tau_max >= tau_min;
    if (!grids_ok) throw std::invalid_argument("SweepSpec: grid bounds must be positive and ordered");
    if (xi2_points < 8 || tau_points < 8) {
        throw std::invalid_argument("SweepSpec: point counts must be >= 8");
    }
    if (!(rel_tol > 0.0) || max_refine_iters < 1) {
        throw std::invalid_argument("SweepSpec: invalid refinement parameters");
    }
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi >= lo) || n < 2) throw std::invalid_argument("log_grid: bad bounds");
    if (hi == lo) return std::vector<double>(n, lo);
    std::vector<double> g(n);
    const double llo = std::log(lo);
    const double step = (std::log(hi) - llo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = std::exp(llo + i * step);
    g.front() = lo;
    g.back() = hi;
    return g;
}

ScalarMax golden_max_log(const std::function<double(double)>& f, double lo, double hi,
                         double rel_tol, int max_iters) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("golden_max_log: bad bracket");
    const double kInvPhi = 0.61803398874989484820;
    double a = std::log(lo);
    double b = std::log(hi);
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(std::exp(c));
    double fd = f(std::exp(d));
    for (int it = 0; it < max_iters && (b - a) > rel_tol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(std::exp(d));
        }
    }
    if (fc > fd) return {std::exp(c), fc};
    return {std::exp(d), fd};
}

GridMax grid_then_golden(const std::function<double(double)>& f,
                         const std::vector<double>& grid, double rel_tol, int max_iters) {
    if (grid.size() < 2) throw std::invalid_argument("grid_then_golden: need >= 2 grid points");
    std::size_t best = 0;
    double best_val = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    GridMax result;
    result.at_lower_edge = best == 0;
    result.at_upper_edge = best + 1 == grid.size();
    if (result.at_lower_edge || result.at_upper_edge) {
        result.x = grid[best];
        result.value = best_val;
        return result;
    }
    const ScalarMax refined = golden_max_log(f, grid[best - 1], grid[best + 1], rel_tol, max_iters);
    if (refined.value >= best_val) {
        result.x = refined.x;
        result.value = refined.value;
    } else {
        result.x = grid[best];
        result.value = best_val;
    }
    return result;
}

}  // namespace obq
