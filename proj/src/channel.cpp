#include "obq/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "obq/rng.hpp"

namespace obq {

namespace {

constexpr double kTwoPi = 6.28318530717958647693;

double require_nonneg_finite(double x, const char* what) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error(std::string(what) + ": argument must be finite and >= 0");
    }
    return x;
}

}  // namespace

void ChannelParams::check() const {
    if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
        throw std::domain_error("ChannelParams: noise_var must be positive");
    }
    if (fading_var != 1.0) {
        throw std::domain_error("ChannelParams: fading_var is fixed to 1 in this release");
    }
}

std::pair<double, double> CounterRng::normal_pair(std::uint64_t counter,
                                                  std::uint32_t slot) const {
    const double u1 = uniform(counter, slot);
    const double u2 = uniform(counter, slot + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

Probability radial_prob_noncoherent(double input_energy, double threshold,
                                    const ChannelParams& params) {
    params.check();
    require_nonneg_finite(input_energy, "radial_prob_noncoherent");
    require_nonneg_finite(threshold, "radial_prob_noncoherent");
    return Probability::from_log(-threshold * threshold / (input_energy + params.noise_var));
}

Probability radial_prob_coherent(double fading_mag, double input_mag, double threshold,
                                 const ChannelParams& params) {
    params.check();
    require_nonneg_finite(fading_mag, "radial_prob_coherent");
    require_nonneg_finite(input_mag, "radial_prob_coherent");
    require_nonneg_finite(threshold, "radial_prob_coherent");
    const double scale = std::sqrt(2.0 / params.noise_var);
    return marcum_q1(scale * fading_mag * input_mag, scale * threshold);
}

Probability percomponent_prob_noncoherent(double input_energy, double threshold,
                                          const ChannelParams& params) {
    params.check();
    require_nonneg_finite(input_energy, "percomponent_prob_noncoherent");
    if (!std::isfinite(threshold)) throw std::domain_error("percomponent_prob_noncoherent: threshold");
    const double comp_std = std::sqrt(0.5 * (input_energy + params.noise_var));
    return gaussian_q(threshold / comp_std);
}

Probability percomponent_prob_coherent(double component_mean, double threshold,
                                       const ChannelParams& params) {
    params.check();
    if (!std::isfinite(component_mean) || !std::isfinite(threshold)) {
        throw std::domain_error("percomponent_prob_coherent: non-finite argument");
    }
    const double comp_std = std::sqrt(0.5 * params.noise_var);
    return gaussian_q((threshold - component_mean) / comp_std);
}

double likelihood_ratio(double output_energy, double probe_energy,
                        const ChannelParams& params) {
    params.check();
    require_nonneg_finite(output_energy, "likelihood_ratio");
    if (!(probe_energy > 0.0) || !std::isfinite(probe_energy)) {
        throw std::domain_error("likelihood_ratio: probe_energy must be positive");
    }
    const double s2 = params.noise_var;
    return (1.0 + probe_energy / s2) *
           std::exp(-(output_energy / s2) * probe_energy / (s2 + probe_energy));
}

double np_threshold(double probe_energy, double lambda, const ChannelParams& params) {
    params.check();
    if (!(probe_energy > 0.0) || !std::isfinite(probe_energy)) {
        throw std::domain_error("np_threshold: probe_energy must be positive");
    }
    const double s2 = params.noise_var;
    const double snr1 = 1.0 + probe_energy / s2;
    if (!(lambda > 0.0) || lambda > snr1) {
        throw std::domain_error("np_threshold: lambda must lie in (0, 1 + |xi|^2/sigma^2]");
    }
    return std::sqrt(s2) * std::sqrt((1.0 + s2 / probe_energy) * std::log(snr1 / lambda));
}

namespace {

struct BitCounts {
    std::int64_t bits[2] = {0, 0};
    int n_outputs = 1;
};

void apply_quantizer(const Quantizer& quantizer, std::complex<double> y,
                     const ChannelParams& params, BitCounts& counts) {
    if (const auto* r = std::get_if<RadialQuantizer>(&quantizer)) {
        counts.n_outputs = 1;
        counts.bits[0] += std::abs(y) >= r->threshold ? 1 : 0;
    } else if (const auto* pc = std::get_if<PerComponentQuantizer>(&quantizer)) {
        counts.n_outputs = 2;
        counts.bits[0] += y.real() >= pc->t_re ? 1 : 0;
        counts.bits[1] += y.imag() >= pc->t_im ? 1 : 0;
    } else if (std::get_if<SymmetricPerComponentQuantizer>(&quantizer)) {
        counts.n_outputs = 2;
        counts.bits[0] += y.real() >= 0.0 ? 1 : 0;
        counts.bits[1] += y.imag() >= 0.0 ? 1 : 0;
    } else {
        const auto& lr = std::get<LikelihoodRegionQuantizer>(quantizer);
        counts.n_outputs = 1;
        counts.bits[0] += likelihood_ratio(std::norm(y), lr.probe_energy, params) <= lr.lambda ? 1 : 0;
    }
}

}  // namespace

std::vector<McEstimate> mc_estimate(const Quantizer& quantizer, std::complex<double> input,
                                    bool coherent, std::int64_t trials, std::uint64_t seed,
                                    const ChannelParams& params) {
    params.check();
    if (trials < 10000) throw std::invalid_argument("mc_estimate: trials must be >= 10^4");
    if (const auto* lr = std::get_if<LikelihoodRegionQuantizer>(&quantizer)) {
        const double top = 1.0 + lr->probe_energy / params.noise_var;
        if (!(lr->lambda > 0.0) || lr->lambda > top) {
            throw std::domain_error("mc_estimate: likelihood lambda outside (0, 1 + |xi|^2/sigma^2]");
        }
    }

    const CounterRng rng(seed);
    const double noise_comp_std = std::sqrt(0.5 * params.noise_var);
    BitCounts counts;
    for (std::int64_t i = 0; i < trials; ++i) {
        const auto counter = static_cast<std::uint64_t>(i);
        std::complex<double> mean = input;
        if (!coherent) {
            const auto [h_re, h_im] = rng.normal_pair(counter, 0);
            // E[|H|^2] = 1: each component has variance 1/2
            mean = std::complex<double>(h_re, h_im) * input * std::sqrt(0.5);
        }
        const auto [z_re, z_im] = rng.normal_pair(counter, 2);
        const std::complex<double> y = mean + noise_comp_std * std::complex<double>(z_re, z_im);
        apply_quantizer(quantizer, y, params, counts);
    }

    std::vector<McEstimate> result;
    for (int k = 0; k < counts.n_outputs; ++k) {
        const double phat = static_cast<double>(counts.bits[k]) / static_cast<double>(trials);
        McEstimate est;
        est.estimate = Probability::from_value(phat);
        est.std_error = std::sqrt(phat * (1.0 - phat) / static_cast<double>(trials));
        result.push_back(est);
    }
    return result;
}

}  // namespace obq
