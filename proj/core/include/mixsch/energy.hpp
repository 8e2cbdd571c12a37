#pragma once

#include <cmath>

#include "mixsch/field.hpp"
#include "mixsch/model.hpp"

namespace mixsch {

struct EnergyBreakdown {
    double quad_u = 0.0;    ///< ||u||^2 in H^{1,s1}
    double quad_v = 0.0;    ///< ||v||^2 in H^{1,s2}
    double crit_u = 0.0;    ///< int |u|^{2_s1}
    double crit_v = 0.0;    ///< int |v|^{2_s2}
    double coupling = 0.0;  ///< int h |u|^alpha |v|^beta
    double total = 0.0;

    double norm_sq() const noexcept { return quad_u + quad_v; }
};

/// J = quad/2 - crit_u/2_s1 - crit_v/2_s2 - kappa coupling, from the parts.
double assemble_energy(const EnergyBreakdown& e, const ModelParams& m);

EnergyBreakdown energy(const Pair& p, const Problem& prob);

/// L^2 gradient of J: (L_s1 u - |u|^{2_s1-2}u - kappa alpha h |u|^{alpha-2}u |v|^beta, ...).
Pair gradient(const Pair& p, const Problem& prob);

struct Evaluation {
    EnergyBreakdown energy;
    Pair grad;
};

/// energy and gradient sharing the transforms.
Evaluation evaluate(const Pair& p, const Problem& prob);

/// ||p||_D^2 - crit_u - crit_v - kappa (alpha + beta) coupling.
double nehari_value(const Pair& p, const Problem& prob);
double nehari_value(const EnergyBreakdown& e, const ModelParams& m);

/// sign(x)|x|^e, continuous at 0 for e > 0.
inline double signed_pow(double x, double e) {
    const double a = x < 0.0 ? -x : x;
    const double r = a == 0.0 ? 0.0 : std::pow(a, e);
    return x < 0.0 ? -r : r;
}

}  // namespace mixsch
