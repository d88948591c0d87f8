#pragma once

#include <complex>
#include <cstdint>

namespace hopfdual {

/// Deterministic splitmix64 generator. The whole pipeline draws randomness
/// from one of these, so a (seed, input) pair fixes every intermediate value
/// independently of platform or standard-library version.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double symmetric() { return 2.0 * uniform() - 1.0; }

    std::complex<double> complex_box() { return {symmetric(), symmetric()}; }

    /// Independent stream for a subtask; used by fleet mode (seed XOR index).
    Rng derive(std::uint64_t salt) const {
        return Rng(state_ ^ (salt * 0xD1B54A32D192ED03ull + 0x9E3779B97F4A7C15ull));
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

} // namespace hopfdual
