#pragma once

#include <cstdint>
#include <utility>

namespace obq {

// Stateless counter-based generator: every (seed, counter, slot) triple maps
// to an independent uniform through three splitmix64 rounds, so draws are
// reproducible and independent of evaluation order or parallel scheduling.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t splitmix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in (0,1), never returning an endpoint
    double uniform(std::uint64_t counter, std::uint32_t slot) const {
        std::uint64_t k = splitmix64(seed_ ^ 0x6A09E667F3BCC909ULL);
        k = splitmix64(k ^ (counter * 0x9E3779B97F4A7C15ULL));
        k = splitmix64(k ^ (static_cast<std::uint64_t>(slot) * 0xD1B54A32D192ED03ULL));
        return (static_cast<double>(k >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal pair via Box-Muller from slots (slot, slot+1)
    std::pair<double, double> normal_pair(std::uint64_t counter, std::uint32_t slot) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace obq
