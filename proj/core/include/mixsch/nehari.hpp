#pragma once

#include "mixsch/energy.hpp"

namespace mixsch {

/// Coefficients of the fiber t -> J(t p).
struct FiberCoefficients {
    double A1 = 0.0;  ///< ||(u, v)||_D^2
    double A2 = 0.0;  ///< int |u|^{2_s1}
    double A3 = 0.0;  ///< int |v|^{2_s2}
    double A4 = 0.0;  ///< int h |u|^alpha |v|^beta
};

FiberCoefficients fiber_coefficients(const EnergyBreakdown& e);
FiberCoefficients fiber_coefficients(const Pair& p, const Problem& prob);

struct FiberValues {
    double psi = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

/// psi(t) = t^2 A1/2 - t^{2_s1} A2/2_s1 - t^{2_s2} A3/2_s2 - kappa A4 t^{alpha+beta}
/// and its first three derivatives. Rejects t <= 0.
FiberValues fiber_map(double t, const FiberCoefficients& c, const ModelParams& m);

/// Unique positive root of psi'. Throws NoProjection when A1 = 0 or the fiber
/// is purely quadratic.
double fiber_root(const FiberCoefficients& c, const ModelParams& m);

struct Projection {
    double eta = 1.0;
    Pair scaled;
    FiberCoefficients coefficients;  ///< of the input pair
};

Projection project_to_nehari(const Pair& p, const Problem& prob);

struct NehariForms {
    double form24 = 0.0;  ///< s1/(1+s1) A2 + s2/(1+s2) A3 + kappa (alpha+beta-2)/2 A4
    double form29 = 0.0;  ///< (1/2 - 1/deg) A1 + (1/deg - 1/2_s1) A2 + (1/deg - 1/2_s2) A3
    double direct = 0.0;
};

/// Requires |Phi| < 1e-8 ||p||_D^2; throws std::invalid_argument otherwise.
NehariForms energy_on_nehari_forms(const Pair& p, const Problem& prob);
NehariForms energy_on_nehari_forms(const EnergyBreakdown& e, const ModelParams& m);

inline constexpr double kOnManifoldTolerance = 1e-8;

}  // namespace mixsch
