#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixsch/solver.hpp"

namespace mixsch {

/// ||u||^2_{H^{1,s}} / ||u||^2_{2_s}; invariant under u -> c u.
double sobolev_quotient(const Field& u, double s);

/// (s/(1+s)) lambda^{(1+s)/(2s)}.
double threshold_level(double s, double lambda);

struct LambdaOptions {
    std::size_t max_iters = 5000;
    double grad_tol = 1e-8;
    std::size_t n_starts = 4;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
};

struct SobolevEstimate {
    double s = 0.5;
    bool radial = false;
    double lambda = 0.0;
    double threshold = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    double grad_norm = 0.0;
    std::vector<double> start_values;  ///< final quotient per start
    Field minimizer;

    explicit SobolevEstimate(const Grid2D& g) : minimizer(g) {}
};

/// Raised when no start reaches the gradient tolerance; carries the best run.
class LambdaNotConverged : public std::runtime_error {
public:
    LambdaNotConverged(const std::string& what, SobolevEstimate best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const SobolevEstimate& best() const noexcept { return best_; }

private:
    SobolevEstimate best_;
};

/// Minimizes the quotient by preconditioned descent under ||u||_{2_s} = 1,
/// keeping iterates radial when requested.
SobolevEstimate estimate_lambda(double s, bool radial, const Grid2D& grid, const LambdaOptions& opts);

/// int |u|^q over M^a T^b F^c with M = int u^2, T = int |d_x u|^2,
/// F = int |(-Delta)_y^{s/2} u|^2, a = q/2 - (q-2)(s+1)/(4s), b = (q-2)/4,
/// c = (q-2)/(4s). Requires 2 < q <= 2_s and u != 0.
double gn_check(const Field& u, double q, double s);

/// Field described in continuous terms so the same member can be sampled on
/// several grids: a sum of axis-aligned Gaussian lobes.
struct SmoothField {
    struct Lobe {
        double x0, y0, wx, wy, amp;
    };
    std::vector<Lobe> lobes;
    Field sample(const Grid2D& grid) const;
};

/// count random members with 1 to 4 lobes, centers in [-extent/4, extent/4]^2,
/// widths in [0.7, 3] and amplitudes in +-[0.2, 1].
std::vector<SmoothField> random_corpus(std::size_t count, std::uint64_t seed, double extent);

/// (lambda ||u||^2_{2_s} - ||u||^2_{H^{1,s}}) / ||u||^2_{H^{1,s}}; positive
/// values violate the Sobolev lower bound claimed by lambda.
double lower_bound_violation(const Field& u, double s, double lambda);

/// Threshold used for a model: the smaller single-field level off the
/// critical line, the radial level for critical radial runs. Lambdas are
/// estimated on the given grid.
double model_threshold(const ModelParams& m, const Grid2D& grid, bool radial, const LambdaOptions& opts);

/// Energy and its seed scatter at a given kappa.
struct LevelSample {
    double energy = 0.0;
    double scatter = 0.0;
};

struct ScanOptions {
    SolveOptions solve;
    /// Seed each kappa with the previous kappa's best pair as an extra start.
    bool continuation = true;
    double monotonicity_tol = 1e-4;
    /// Independent multistart batches per kappa, seeded seed, seed + 1, ...
    /// Their spread of best energies is the reported scatter.
    std::size_t seed_sets = 2;
};

struct KappaScan {
    std::vector<double> kappas;
    std::vector<double> energies;  ///< NaN where the solve failed
    std::vector<bool> converged;
    std::vector<std::size_t> n_success;
    std::vector<double> scatter;  ///< spread of best energies across seed sets
    std::vector<std::string> errors;
    std::vector<std::size_t> monotonicity_violations;  ///< i with E[i+1] > E[i] beyond tolerance
    double jump_constant = 0.0;                        ///< max |E[i+1] - E[i]| / (k[i+1] - k[i])
    double threshold = 0.0;
    std::optional<double> kappa_star_estimate;
    std::vector<SolveReport> best;
};

/// Best multistart energy per kappa. Solver failures are recorded per entry.
KappaScan scan_kappa(const std::vector<double>& kappas, const Problem& base, const ScanOptions& opts,
                     double threshold);

struct KappaStar {
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double width() const noexcept { return hi - lo; }
    std::size_t evaluations = 0;
};

using LevelEvaluator = std::function<LevelSample(double kappa)>;

struct LevelRun {
    LevelSample sample;  ///< energy is NaN when nothing converged
    std::optional<SolveReport> best;
    std::size_t n_success = 0;
    std::string error;
};

/// All seed sets at one coupling; an optional warm pair joins every set as an
/// extra start.
LevelRun run_level(const Problem& prob, const ScanOptions& opts, double threshold, const Pair* warm = nullptr,
                   std::shared_ptr<const RadialProjector> radial = nullptr);

/// Evaluator for kappa* refinement built on run_level. Throws AllFailed when
/// no start converges at a probed coupling.
LevelEvaluator level_evaluator(const Problem& base, const ScanOptions& opts, double threshold);

/// An energy counts as "at threshold" when within max(1e-3 threshold, 2 scatter).
bool at_threshold(double energy, double scatter, double threshold);

/// Bisects between the last scan entry at threshold and the first one below
/// it. Throws NotBracketed if every entry is already below, or none is.
KappaStar estimate_kappa_star(const KappaScan& scan, const LevelEvaluator& eval, std::size_t refine_iters);

}  // namespace mixsch
