#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace specsense {

/// Derives an independent 64-bit stream seed from a master seed, an
/// experiment identifier and a stream index (FNV-1a over the inputs,
/// finalized with a splitmix64 mix). Trials seeded this way are
/// reproducible regardless of execution order or worker count.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::string_view experiment_id,
                                 std::uint64_t index) {
    constexpr std::uint64_t kOffset = 14695981039346656037ull;
    constexpr std::uint64_t kPrime = 1099511628211ull;
    std::uint64_t h = kOffset;
    auto mix_byte = [&](unsigned char b) {
        h ^= b;
        h *= kPrime;
    };
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(master_seed >> (8 * i)));
    for (char c : experiment_id) mix_byte(static_cast<unsigned char>(c));
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(index >> (8 * i)));
    // splitmix64 finalizer
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

/// Seeded random stream used by all sampling code. Wraps std::mt19937_64
/// with the handful of draws the signal model needs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::mt19937_64& engine() { return engine_; }

    /// Standard circularly-symmetric complex Gaussian CN(0,1):
    /// variance 1/2 per real component.
    std::complex<double> complex_gaussian() {
        std::normal_distribution<double> n01(0.0, 1.0);
        const double re = n01(engine_);
        const double im = n01(engine_);
        return {re * kInvSqrt2, im * kInvSqrt2};
    }

    double gaussian() {
        std::normal_distribution<double> n01(0.0, 1.0);
        return n01(engine_);
    }

    /// Unit-power BPSK symbol, +1 or -1.
    double bpsk() { return (engine_() & 1ull) ? 1.0 : -1.0; }

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> u(lo, hi);
        return u(engine_);
    }

private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    std::mt19937_64 engine_;
};

}  // namespace specsense
