#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "obq/quadrature.hpp"
#include "obq/sweep.hpp"

namespace obq {

struct BoundCheck {
    std::string name;
    double bound = 0.0;
    bool satisfied = false;
};

// Reported-but-not-asserted comparison (e.g. the per-component noncoherent
// operating point against its published constant).
struct Diagnostic {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
};

// An optimized divergence-per-energy value. `threshold_kind` names what the
// threshold field holds: "tau" (squared radial threshold), "t_component"
// (per-component threshold), or "mu" (fading-proportional threshold factor).
struct CueResult {
    double value = 0.0;         // nats per unit energy
    double probe_energy = 0.0;  // |xi|^2 achieving (or approaching) it
    double threshold = 0.0;
    std::string threshold_kind;
    bool supremum_at_infinity = false;
    std::vector<BoundCheck> bound_checks;
    std::vector<Diagnostic> diagnostics;

    bool all_bounds_satisfied() const;
};

// --- divergence objectives ---------------------------------------------

// Noncoherent radial divergence d(e^{-tau/(xi2+s2)} || e^{-tau/s2}) in nats.
double div_noncoherent_radial(double probe_energy, double threshold_sq, double sigma_sq);

// Coherent radial divergence with the fading-proportional threshold
// T = mu |h||xi|, averaged over the fading energy.
double div_coherent_radial(double probe_energy, double mu, double sigma_sq,
                           const QuadratureSpec& quad);

// Per-component noncoherent divergence: sum of the two component laws' KLs.
double div_percomponent_noncoherent(double probe_energy, double t_re, double t_im,
                                    double sigma_sq);

// Per-component coherent divergence with T_R = mu Re{H xi}, T_I = mu Im{H xi},
// averaged over the complex fading (magnitude x phase).
double div_percomponent_coherent(std::complex<double> probe, double mu, double sigma_sq,
                                 const QuadratureSpec& quad);

// Symmetric per-component coherent divergence (both thresholds zero).
double div_symmetric_coherent(double probe_energy, double sigma_sq,
                              const QuadratureSpec& quad);

// --- bounds --------------------------------------------------------------

// Unquantized-channel ceiling on the divergence: xi2/s2 - log(1 + xi2/s2).
double unquantized_kl_bound(double probe_energy, double sigma_sq);

// Radial-quantizer ceiling xi2/(e s2) + 2/e.
double exp_bound(double probe_energy, double sigma_sq);

// --- optimizers ------------------------------------------------------------

CueResult cue_noncoherent_radial(double sigma_sq, const SweepSpec& sweep);

CueResult cue_coherent_radial(double sigma_sq, const std::vector<double>& mu_schedule,
                              const SweepSpec& sweep, const QuadratureSpec& quad);

CueResult cue_percomponent_noncoherent(double sigma_sq, const SweepSpec& sweep,
                                       bool theorem2_mode);

CueResult cue_percomponent_coherent(double sigma_sq, const std::vector<double>& mu_schedule,
                                    const SweepSpec& sweep, const QuadratureSpec& quad);

// Slope of the symmetric-quantizer divergence ratio at zero probe energy,
// Richardson-extrapolated from |xi| = 1e-2 sigma and 1e-3 sigma. The
// noncoherent variant evaluates to exactly zero.
CueResult cue_symmetric_limit(double sigma_sq, bool coherent, const QuadratureSpec& quad);

// --- Neyman-Pearson dominance oracle ---------------------------------------

struct DominanceReport {
    double worst_margin = 0.0;  // min over regions of d_radial(beta) - d_region
    int regions_tested = 0;
    double mass_deficit = 0.0;  // probability mass outside the polar grid
    double best_radial_value = 0.0;
    double best_radial_tau = 0.0;
};

// Discretizes the output plane on a polar grid and verifies that no sampled
// non-radial region beats the radial quantizer with the same on-probability.
DominanceReport np_radial_dominance_check(double probe_energy, double sigma_sq,
                                          int region_samples, std::uint64_t seed);

}  // namespace obq
