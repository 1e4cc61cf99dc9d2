#pragma once

#include <cmath>
#include <cstdint>

namespace amm {

// Counter-based generator (splitmix64 finalizer): the value for a given
// (seed, stream, counter, slot) tuple is fixed, so samples can be drawn from
// any thread in any order and still match a serial run.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xbf58476d1ce4e5b9ull)) {}

    std::uint64_t bits(std::uint64_t counter, std::uint32_t slot) const {
        return mix(mix(base_ + counter * 0x9e3779b97f4a7c15ull) + slot * 0x94d049bb133111ebull);
    }

    // uniform in [0, 1)
    double uniform01(std::uint64_t counter, std::uint32_t slot) const {
        return static_cast<double>(bits(counter, slot) >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi, std::uint64_t counter, std::uint32_t slot) const {
        return lo + (hi - lo) * uniform01(counter, slot);
    }

    // log-uniform in [lo, hi); lo must be positive
    double log_uniform(double lo, double hi, std::uint64_t counter, std::uint32_t slot) const {
        return std::exp(uniform(std::log(lo), std::log(hi), counter, slot));
    }

private:
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
};

}  // namespace amm
