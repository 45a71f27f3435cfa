#pragma once

#include <cstdint>
#include <string_view>

namespace maslov {

/// SplitMix64. Every generator in the library draws from this stream so that
/// corpora are reproducible from (seed, n, scale) alone:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
/// Uniform doubles use the top 53 bits: (z >> 11) * 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// Per-item seed for corpus element `index` of a named stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t index) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a over the stream name
    for (char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    SplitMix64 mix(base ^ h);
    mix.next();
    SplitMix64 out(mix.next() + index * 0xD1B54A32D192ED03ULL);
    return out.next();
}

} // namespace maslov
