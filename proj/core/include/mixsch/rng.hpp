#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mixsch {

/// Deterministic generator for a named component stream. The same (seed,
/// stream, index) always yields the same sequence on every platform.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace mixsch
