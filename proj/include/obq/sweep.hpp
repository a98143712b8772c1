#pragma once

#include <functional>
#include <vector>

namespace obq {

// Logarithmic grid plus refinement control for the one- and two-dimensional
// divergence-per-energy maximizations. Bounds are absolute (caller scales
// them with sigma^2 where appropriate).
struct SweepSpec {
    double xi2_min = 1e-2;
    double xi2_max = 1e3;
    int xi2_points = 48;
    double tau_min = 1e-2;
    double tau_max = 1e4;
    int tau_points = 48;
    double rel_tol = 1e-6;
    int max_refine_iters = 100;

    void check() const;
};

// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section maximization of f over [lo, hi] carried out in log(x);
// terminates when the bracket's log-width drops below rel_tol. Assumes a
// grid stage has already placed the bracket around a single local maximum.
ScalarMax golden_max_log(const std::function<double(double)>& f, double lo, double hi,
                         double rel_tol, int max_iters);

// Grid argmax followed by golden refinement inside the neighbouring bracket.
// `at_upper_edge` reports that the grid maximum sat on the last point, in
// which case only the value at the edge is refined coordinate-free.
struct GridMax {
    double x = 0.0;
    double value = 0.0;
    bool at_upper_edge = false;
    bool at_lower_edge = false;
};
GridMax grid_then_golden(const std::function<double(double)>& f,
                         const std::vector<double>& grid, double rel_tol, int max_iters);

}  // namespace obq
