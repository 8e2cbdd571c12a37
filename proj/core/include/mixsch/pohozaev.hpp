#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mixsch/solver.hpp"
#include "mixsch/weights.hpp"

namespace mixsch {

struct PohozaevReport {
    double r61 = 0.0;
    double r62 = 0.0;
    double r622 = 0.0;
    double lhs61 = 0.0;
    double rhs61 = 0.0;
    double lhs62 = 0.0;
    double rhs62 = 0.0;
    double lhs622 = 0.0;  ///< ||u||_2^2 + ||v||_2^2
    double rhs622 = 0.0;  ///< (kappa/s) int (y h_y + s x h_x) |u|^alpha |v|^beta
    double moment_xu = 0.0;  ///< ||x u||_2
    double moment_yv = 0.0;  ///< ||y v||_2
    double outer_mass = 0.0;  ///< outer 10% band mass fraction, max over u and v
    bool moment_ok = false;   ///< outer_mass < 1e-6
};

/// |a - b| / max(|a|, |b|, 1e-30).
double relative_residual(double a, double b);

/// Pohozaev-type identities at critical exponents with box-centered
/// coordinates. Throws RegimeMismatch unless s1 = s2 and alpha + beta = 2_s.
PohozaevReport pohozaev_residuals(const Pair& p, const Problem& prob);

struct ProbeCandidate {
    std::size_t start_index = 0;
    bool converged = false;
    double energy = 0.0;
    double mass = 0.0;
    double gap = 0.0;  ///< lhs622 - rhs622
    bool inconsistent = false;  ///< nonzero candidate with gap > 0
    double boundary_mass = 0.0;
    PohozaevReport pohozaev;
};

struct ProbeOptions {
    SolveOptions solve;
    /// Re-solve the best candidate on a box 1.5x larger at the same spacing.
    bool box_sensitivity = false;
};

struct NonexistenceReport {
    bool hypothesis_holds = false;
    std::string gate;  ///< "constant", "sign", or "declined"
    RadialSignReport sign;
    double max_rhs622 = 0.0;  ///< over all candidates
    std::vector<ProbeCandidate> candidates;
    bool all_inconsistent = false;
    /// Relative energy and mass change of the best candidate on the larger box
    /// (NaN when not run).
    double box_energy_shift = std::numeric_limits<double>::quiet_NaN();
    double box_mass_shift = std::numeric_limits<double>::quiet_NaN();
};

/// Multistart at critical exponents; every candidate gets its identity gap.
/// Declines (hypothesis_holds = false, no solves) when h is non-constant and
/// kappa x h_x <= 0, kappa y h_y <= 0 fails on the grid.
NonexistenceReport nonexistence_probe(const Problem& prob, const ProbeOptions& opts);

}  // namespace mixsch
