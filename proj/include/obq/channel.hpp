#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "obq/specfun.hpp"

namespace obq {

// Memoryless Rayleigh-fading channel y = H x + Z with H, Z independent
// circularly-symmetric complex Gaussians, E[|H|^2] = fading_var (pinned to
// 1 in this release) and E[|Z|^2] = noise_var.
struct ChannelParams {
    double noise_var = 1.0;
    double fading_var = 1.0;

    void check() const;
};

// One-bit quantization rules on the complex output.
struct RadialQuantizer {
    double threshold = 0.0;  // emits 1 iff |y| >= threshold
};
struct PerComponentQuantizer {
    double t_re = 0.0;  // emits (Re{y} >= t_re, Im{y} >= t_im)
    double t_im = 0.0;
};
struct SymmetricPerComponentQuantizer {};  // t_re = t_im = 0
struct LikelihoodRegionQuantizer {
    double lambda = 1.0;        // emits 1 iff f(y|0)/f(y|xi) <= lambda
    double probe_energy = 1.0;  // |xi|^2 defining the likelihood ratio
};
using Quantizer = std::variant<RadialQuantizer, PerComponentQuantizer,
                               SymmetricPerComponentQuantizer, LikelihoodRegionQuantizer>;

// Binary channel induced by a quantizer: P(Y=1|X=probe) and P(Y=1|X=0).
struct BinaryLaw {
    Probability p_on;
    Probability p_off;
};

// P(|y| >= T | |x|^2), output not conditioned on the fading:
// exp(-T^2/(|x|^2 + sigma^2)), carried with the exact log.
Probability radial_prob_noncoherent(double input_energy, double threshold,
                                    const ChannelParams& params);

// P(|y| >= T | H = h, x), conditioned on the fading:
// Q1(sqrt(2/sigma^2) |h||x|, sqrt(2/sigma^2) T).
Probability radial_prob_coherent(double fading_mag, double input_mag, double threshold,
                                 const ChannelParams& params);

// P(component >= T | |x|^2) without fading knowledge: the component of y is
// zero-mean Gaussian with variance (|x|^2 + sigma^2)/2.
Probability percomponent_prob_noncoherent(double input_energy, double threshold,
                                          const ChannelParams& params);

// P(component >= T | component mean m): Gaussian with variance sigma^2/2.
Probability percomponent_prob_coherent(double component_mean, double threshold,
                                       const ChannelParams& params);

// f(y|0)/f(y|xi) for the noncoherent channel; strictly decreasing in |y|^2.
double likelihood_ratio(double output_energy, double probe_energy,
                        const ChannelParams& params);

// Radial threshold realizing the Neyman-Pearson region {f(y|0)/f(y|xi) <= lambda}.
// Requires 0 < lambda <= 1 + probe_energy/sigma^2.
double np_threshold(double probe_energy, double lambda, const ChannelParams& params);

struct McEstimate {
    Probability estimate;
    double std_error = 0.0;
};

// Empirical P(Y=1) with binomial standard error, one entry per output bit
// (radial and likelihood-region rules produce one, per-component rules two).
// Noncoherent: H is drawn fresh each trial. Coherent: the caller passes the
// effective mean h*x through `input` and only Z is drawn. Deterministic for
// a fixed seed; trials must be >= 10^4.
std::vector<McEstimate> mc_estimate(const Quantizer& quantizer, std::complex<double> input,
                                    bool coherent, std::int64_t trials, std::uint64_t seed,
                                    const ChannelParams& params);

}  // namespace obq
