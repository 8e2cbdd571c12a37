#pragma once

#include <cmath>
#include <cstdint>

#include "mixsch/field.hpp"
#include "mixsch/rng.hpp"

namespace testutil {

// Sum of three random Gaussians in the inner half box; decays to round-off at
// the boundary for boxes of size >= 20.
inline mixsch::Field smooth_field(const mixsch::Grid2D& g, std::uint64_t seed, bool signed_amp = true) {
    mixsch::StreamRng rng(seed, "tests.smooth");
    mixsch::Field f(g, 0.0);
    for (int lobe = 0; lobe < 3; ++lobe) {
        const double x0 = rng.uniform(-g.lx() / 8, g.lx() / 8);
        const double y0 = rng.uniform(-g.ly() / 8, g.ly() / 8);
        const double w = rng.uniform(1.0, 2.0);
        const double a = signed_amp ? rng.uniform(-1.0, 1.0) : rng.uniform(0.3, 1.0);
        f += mixsch::Field::from_function(g, [=](double x, double y) {
            return a * std::exp(-((x - x0) * (x - x0) + (y - y0) * (y - y0)) / (w * w));
        });
    }
    return f;
}

inline mixsch::Field noise_field(const mixsch::Grid2D& g, std::uint64_t seed) {
    mixsch::StreamRng rng(seed, "tests.noise");
    mixsch::Field f(g);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = rng.uniform(-1.0, 1.0);
    return f;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testutil
