#pragma once

#include <cmath>
#include <cstdint>

namespace gtmcmc {

/// Counter-based random stream (splitmix64 core). Substreams are derived
/// from the stream key, never from mutated state, so the stream consumed by
/// chain l at stage k is a pure function of (seed, k, l) and independent of
/// execution order.
///
/// Stream consumption contract:
///   - uniform01() consumes one 64-bit word, returns a double in (0, 1].
///   - normal() consumes exactly two words (Box-Muller, no pair caching).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : key_(seed), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ULL;
        return finalize(z);
    }

    /// Uniform on (0, 1]; never 0, so log(u) is always finite.
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller. Two uniforms per call.
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    /// Derive an independent stream keyed by (this stream's key, a, b).
    RandomStream substream(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t k = finalize(key_ ^ finalize(a ^ finalize(b ^ 0x2545f4914f6cdd1dULL)));
        return RandomStream(k);
    }

    std::uint64_t key() const { return key_; }

private:
    static std::uint64_t finalize(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace gtmcmc
