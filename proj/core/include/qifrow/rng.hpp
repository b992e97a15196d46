#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "qifrow/errors.hpp"

namespace qifrow {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Deterministic sampling on top of mt19937_64. Draws go through explicit
/// 53-bit uniforms and inverse-CDF walks rather than std distributions, so
/// sequences are identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent substream for a (seed, cell) pair; parallel evaluation
    /// cells draw from their own stream so orderings cannot matter.
    static Rng stream(std::uint64_t seed, std::uint64_t cell) {
        return Rng(splitmix64(seed ^ splitmix64(cell + 1)));
    }

    static constexpr const char* kName = "mt19937_64";

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi], inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw ValidationError("Rng::next_int: empty range");
        auto span = static_cast<double>(hi - lo + 1);
        auto off = static_cast<std::int64_t>(next_double() * span);
        if (off > hi - lo) off = hi - lo;
        return lo + off;
    }

    /// Inverse-CDF draw from a dense distribution.
    std::size_t sample(std::span<const double> probs) {
        if (probs.empty()) throw ValidationError("Rng::sample: empty distribution");
        double u = next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return i;
        }
        for (std::size_t i = probs.size(); i-- > 0;)
            if (probs[i] > 0.0) return i;
        return probs.size() - 1;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace qifrow
