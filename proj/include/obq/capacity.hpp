#pragma once

#include "obq/channel.hpp"
#include "obq/sweep.hpp"

namespace obq {

// Binary on-off signalling: X = on_level with probability on_prob, else 0.
struct OnOffInput {
    double on_level = 1.0;  // amplitude A
    double on_prob = 0.5;   // duty cycle p in (0, 1]
};

// I(X;Y) in nats for the binary-input binary-output channel induced by an
// on-off input and a quantizer's BinaryLaw, computed in log domain.
double mutual_info_binary(const OnOffInput& input, const BinaryLaw& law);

struct CapacityResult {
    double capacity = 0.0;  // nats per channel use
    OnOffInput input;
    double threshold_sq = 0.0;  // optimal radial tau = T^2
    bool at_grid_edge = false;  // optimizer pinned at a sweep boundary
};

// Finite-power capacity lower bound of the noncoherent quantized channel
// over on-off inputs and radial quantizers, with the power constraint
// p A^2 = P active at the optimum. The duty-cycle grid keeps the on-energy
// A^2 = P/p within the sweep's probe-energy range so the result stays
// comparable with the divergence sweeps.
CapacityResult capacity_noncoherent(double power, double sigma_sq, const SweepSpec& sweep);

}  // namespace obq
