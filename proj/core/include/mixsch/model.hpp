#pragma once

#include <string>

#include "mixsch/field.hpp"
#include "mixsch/weights.hpp"

namespace mixsch {

enum class Regime { subcritical, sum_critical, critical };

std::string to_string(Regime r);

/// 2(1 + s)/(1 - s).
double critical_exponent(double s);

struct ModelParams {
    double s1 = 0.5;
    double s2 = 0.5;
    double alpha = 2.0;
    double beta = 2.0;
    double kappa = 0.0;

    double crit1() const { return critical_exponent(s1); }
    double crit2() const { return critical_exponent(s2); }
    double degree() const noexcept { return alpha + beta; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    Regime regime() const;
};

/// Relative tolerance used when deciding whether alpha + beta sits on a
/// critical exponent.
inline constexpr double kCriticalTolerance = 1e-12;

/// A model bound to a grid and a sampled weight; everything the energy needs.
struct Problem {
    ModelParams model;
    WeightFunction weight;
    Grid2D grid;
    SampledWeight sampled;

    Problem(ModelParams m, WeightFunction w, Grid2D g);
    /// Same grid and weight with a different coupling.
    Problem with_kappa(double kappa) const;
};

}  // namespace mixsch
