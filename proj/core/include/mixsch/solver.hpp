#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "mixsch/energy.hpp"
#include "mixsch/radial.hpp"

namespace mixsch {

enum class StepRule { fixed, barzilai_borwein };

struct SolveOptions {
    std::size_t max_iters = 5000;
    double grad_tol = 1e-8;  ///< on the preconditioned gradient norm relative to ||p||_D
    StepRule step_rule = StepRule::barzilai_borwein;
    double fixed_step = 0.5;
    std::size_t n_starts = 8;
    std::uint64_t seed = 0;
    bool radial = false;
    bool symmetrize = true;
    bool record_history = false;
    /// Critical runs: stop when the energy sits within 1e-6 (relative) of this
    /// level while the gradient stalls. NaN disables the check.
    double threshold = std::numeric_limits<double>::quiet_NaN();
    std::size_t jobs = 1;  ///< worker threads for multistart

    void validate() const;
};

struct HistoryRow {
    std::size_t iter;
    double energy;
    double grad_norm;
    double phi;
};

struct SolveReport {
    bool converged = false;
    std::string status;
    std::size_t iterations = 0;
    double energy = 0.0;
    double nehari_residual = 0.0;  ///< |Phi|
    double norm_sq = 0.0;          ///< ||p||_D^2
    double grad_norm = 0.0;        ///< final preconditioned gradient norm / ||p||_D
    /// ||G||_2 / ||(L u, L v)||_2 with G the full gradient.
    double el_residual = 0.0;
    /// Same with G replaced by its radial projection; equals el_residual for
    /// unconstrained runs.
    double constrained_el_residual = 0.0;
    bool semi_trivial = false;
    bool concentration_suspected = false;
    double boundary_decay = 0.0;  ///< outer-ring mass fraction
    double radial_defect = 0.0;   ///< ||p - P_r p|| / ||p||
    double min_value = 0.0;       ///< min over both components of the reported pair
    double raw_min_value = 0.0;   ///< same, before symmetrization
    /// The reported pair is the projected modulus of the descent limit.
    bool symmetrized = false;
    double symmetrization_energy_change = 0.0;
    std::uint64_t seed = 0;
    std::size_t start_index = 0;
    Pair pair;
    std::vector<HistoryRow> history;

    explicit SolveReport(const Grid2D& g);
};

/// Relative L^2 residual of the Euler-Lagrange system.
double euler_lagrange_residual(const Pair& p, const Problem& prob);

/// (|u|, |v|).
Pair symmetrize(const Pair& p);

/// Projected descent on the Nehari manifold from init. The optional projector
/// is used when opts.radial is set (one is built if null).
SolveReport minimize_ground_state(const Pair& init, const Problem& prob, const SolveOptions& opts,
                                  std::shared_ptr<const RadialProjector> radial = nullptr);

/// Initial pair for start k: Gaussians about one shared random center in the
/// inner half box (the origin for radial runs) with independent widths in
/// [1, 4] and amplitudes in [0.5, 2].
Pair initial_guess(const Grid2D& grid, std::uint64_t seed, std::size_t start, bool radial);

struct MultistartResult {
    SolveReport best;
    std::vector<SolveReport> reports;
    std::size_t n_success = 0;
    double energy_scatter = 0.0;  ///< max - min over converged starts
};

/// Throws AllFailed if no start converges. A radial projector is built when
/// opts.radial is set and none is passed.
MultistartResult multistart(const Problem& prob, const SolveOptions& opts,
                            std::shared_ptr<const RadialProjector> radial = nullptr);

/// Fraction of the L^2 mass of f in the outer band |x| > (1/2 - w) lx or |y| > (1/2 - w) ly.
double outer_mass_fraction(const Field& f, double width = 0.1);

}  // namespace mixsch
