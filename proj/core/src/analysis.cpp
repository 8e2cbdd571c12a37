#include "mixsch/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "mixsch/errors.hpp"
#include "mixsch/parallel.hpp"
#include "mixsch/rng.hpp"
#include "mixsch/spectral.hpp"

namespace mixsch {

namespace {

double lp_integral(const Field& u, double p) {
    double sum = 0.0;
    for (double x : u.values()) {
        const double a = std::abs(x);
        if (a != 0.0) sum += std::pow(a, p);
    }
    return sum * u.grid().cell_area();
}

Field normalize_lp(const Field& u, double p) {
    const double d = lp_integral(u, p);
    if (!(d > 0.0)) throw std::invalid_argument("cannot normalize the zero field");
    return std::pow(d, -1.0 / p) * u;
}

struct QuotientState {
    Field u;   // ||u||_p = 1
    double q;  // quotient
    Field g;   // L^2 gradient of the quotient at u
};

QuotientState quotient_state(Field u, double s, double p) {
    u = normalize_lp(u, p);
    const SpectralField U = forward_transform(u);
    const double n = quadratic_parts(U, s).total();
    Field g = apply_mixed_operator(u, s);
    for (std::size_t k = 0; k < u.size(); ++k) g[k] = 2.0 * (g[k] - n * signed_pow(u[k], p - 1.0));
    return {std::move(u), n, std::move(g)};
}

double dual_grad_norm(const QuotientState& st, double s, const RadialProjector* rp) {
    const Field g = rp != nullptr ? rp->apply(st.g) : st.g;
    const Field d = rp != nullptr ? rp->apply(apply_isotropic_inverse(g, s)) : apply_inverse_mixed_operator(g, s);
    return std::sqrt(std::max(inner_product(g, d), 0.0)) / (2.0 * std::sqrt(st.q));
}

struct LambdaRun {
    QuotientState st;
    std::size_t iterations;
    double grad_norm;
    bool converged;
};

LambdaRun minimize_quotient(Field u0, double s, const LambdaOptions& opts, const RadialProjector* rp) {
    const double p = critical_exponent(s);
    if (rp != nullptr) u0 = rp->apply(u0);
    QuotientState st = quotient_state(std::move(u0), s, p);
    double step = 1.0;
    for (std::size_t iter = 0;; ++iter) {
        Field g = rp != nullptr ? rp->apply(st.g) : st.g;
        Field d = rp != nullptr ? rp->apply(apply_isotropic_inverse(g, s)) : apply_inverse_mixed_operator(g, s);
        const double slope = inner_product(g, d);
        const double gn = std::sqrt(std::max(slope, 0.0)) / (2.0 * std::sqrt(st.q));
        if (gn < opts.grad_tol) return {std::move(st), iter, gn, true};
        if (iter >= opts.max_iters) return {std::move(st), iter, gn, false};
        d *= -1.0;
        const double slack = 1e-13 * st.q;
        double tau = step;
        bool accepted = false;
        QuotientState next = st;
        for (int bt = 0; bt < 40; ++bt) {
            Field trial = st.u;
            trial.axpy(tau, d);
            if (rp != nullptr) trial = rp->apply(trial);
            next = quotient_state(std::move(trial), s, p);
            const double target = st.q - 1e-4 * tau * slope;
            if (next.q <= target || (next.q <= target + slack && dual_grad_norm(next, s, rp) < gn)) {
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) return {std::move(st), iter, gn, false};
        Field sd = next.u - st.u;
        Field y = next.g - st.g;
        if (rp != nullptr) y = rp->apply(y);
        const double sy = inner_product(sd, y);
        const double ss = sobolev_norm_sq(sd, s);
        step = sy > 0.0 ? std::clamp(ss / sy, 1e-3, 1e2) : std::min(2.0 * tau, 1e2);
        st = std::move(next);
    }
}

}  // namespace

double sobolev_quotient(const Field& u, double s) {
    const double p = critical_exponent(s);
    const double d = lp_integral(u, p);
    if (!(d > 0.0)) throw std::invalid_argument("quotient of the zero field");
    return sobolev_norm_sq(u, s) / std::pow(d, 2.0 / p);
}

double threshold_level(double s, double lambda) {
    return s / (1.0 + s) * std::pow(lambda, (1.0 + s) / (2.0 * s));
}

SobolevEstimate estimate_lambda(double s, bool radial, const Grid2D& grid, const LambdaOptions& opts) {
    require_fractional_order(s);
    if (opts.n_starts < 1) throw std::invalid_argument("lambda.n_starts: must be >= 1");
    std::unique_ptr<RadialProjector> rp;
    if (radial) rp = std::make_unique<RadialProjector>(grid);
    std::vector<std::optional<LambdaRun>> runs(opts.n_starts);
    std::vector<std::string> errors(opts.n_starts);
    parallel_for(opts.n_starts, opts.jobs, [&](std::size_t k) {
        StreamRng rng(opts.seed, "analysis.lambda", k);
        const double w = rng.uniform(1.0, 4.0);
        const double wy = radial ? w : rng.uniform(1.0, 4.0);
        const double x0 = radial ? 0.0 : rng.uniform(-0.1, 0.1) * grid.lx();
        const double y0 = radial ? 0.0 : rng.uniform(-0.1, 0.1) * grid.ly();
        Field u0 = Field::from_function(grid, [=](double x, double y) {
            return std::exp(-(x - x0) * (x - x0) / (w * w) - (y - y0) * (y - y0) / (wy * wy));
        });
        runs[k] = minimize_quotient(std::move(u0), s, opts, rp.get());
    });

    SobolevEstimate est(grid);
    est.s = s;
    est.radial = radial;
    const LambdaRun* best = nullptr;
    const LambdaRun* best_conv = nullptr;
    for (const auto& r : runs) {
        est.start_values.push_back(r->st.q);
        if (best == nullptr || r->st.q < best->st.q) best = &*r;
        if (r->converged && (best_conv == nullptr || r->st.q < best_conv->st.q)) best_conv = &*r;
    }
    // Prefer the lowest value overall: the quotient is an infimum and a lower
    // unconverged value is still an admissible upper bound for it.
    est.lambda = best->st.q;
    est.threshold = threshold_level(s, est.lambda);
    est.converged = best->converged;
    est.iterations = best->iterations;
    est.grad_norm = best->grad_norm;
    est.minimizer = best->st.u;
    if (best_conv == nullptr) {
        throw LambdaNotConverged("quotient minimization did not reach the gradient tolerance", est);
    }
    return est;
}

double gn_check(const Field& u, double q, double s) {
    require_fractional_order(s);
    const double pc = critical_exponent(s);
    if (!(q > 2.0 && q <= pc * (1.0 + 1e-14))) {
        throw std::invalid_argument("gn_check: exponent q must satisfy 2 < q <= 2_s");
    }
    const QuadraticParts parts = quadratic_parts(u, s);
    if (!(parts.mass > 0.0)) throw std::invalid_argument("gn_check: zero field");
    const double a = q / 2.0 - (q - 2.0) * (s + 1.0) / (4.0 * s);
    const double b = (q - 2.0) / 4.0;
    const double c = (q - 2.0) / (4.0 * s);
    // Logs keep the product representable for large exponents.
    const double log_rhs = a * std::log(parts.mass) + b * std::log(parts.dx) + c * std::log(parts.fractional);
    return std::exp(std::log(lp_integral(u, q)) - log_rhs);
}

Field SmoothField::sample(const Grid2D& grid) const {
    return Field::from_function(grid, [this](double x, double y) {
        double v = 0.0;
        for (const Lobe& l : lobes) {
            const double ax = (x - l.x0) / l.wx;
            const double ay = (y - l.y0) / l.wy;
            v += l.amp * std::exp(-0.5 * (ax * ax + ay * ay));
        }
        return v;
    });
}

std::vector<SmoothField> random_corpus(std::size_t count, std::uint64_t seed, double extent) {
    if (!(extent > 0.0)) throw std::invalid_argument("corpus extent must be > 0");
    std::vector<SmoothField> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        StreamRng rng(seed, "analysis.corpus", k);
        const auto n = 1 + static_cast<std::size_t>(rng.uniform() * 4.0);
        for (std::size_t l = 0; l < std::min<std::size_t>(n, 4); ++l) {
            SmoothField::Lobe lobe{};
            lobe.x0 = rng.uniform(-0.25, 0.25) * extent;
            lobe.y0 = rng.uniform(-0.25, 0.25) * extent;
            lobe.wx = rng.uniform(0.7, 3.0);
            lobe.wy = rng.uniform(0.7, 3.0);
            lobe.amp = rng.uniform(0.2, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
            out[k].lobes.push_back(lobe);
        }
    }
    return out;
}

double lower_bound_violation(const Field& u, double s, double lambda) {
    const double n = sobolev_norm_sq(u, s);
    if (!(n > 0.0)) throw std::invalid_argument("lower_bound_violation: zero field");
    const double p = critical_exponent(s);
    return (lambda * std::pow(lp_integral(u, p), 2.0 / p) - n) / n;
}

double model_threshold(const ModelParams& m, const Grid2D& grid, bool radial, const LambdaOptions& opts) {
    m.validate();
    const bool use_radial = radial && m.regime() == Regime::critical;
    const double t1 = estimate_lambda(m.s1, use_radial, grid, opts).threshold;
    if (std::abs(m.s1 - m.s2) <= kCriticalTolerance) return t1;
    const double t2 = estimate_lambda(m.s2, use_radial, grid, opts).threshold;
    return std::min(t1, t2);
}

LevelRun run_level(const Problem& prob, const ScanOptions& opts, double threshold, const Pair* warm,
                   std::shared_ptr<const RadialProjector> radial) {
    if (opts.seed_sets == 0) throw std::invalid_argument("scan.seed_sets: must be >= 1");
    if (opts.solve.radial && !radial) radial = std::make_shared<const RadialProjector>(prob.grid);
    LevelRun run;
    std::optional<SolveReport> warm_report;
    if (warm != nullptr) {
        SolveOptions so = opts.solve;
        so.threshold = threshold;
        try {
            SolveReport r = minimize_ground_state(*warm, prob, so, radial);
            if (r.converged) {
                ++run.n_success;
                warm_report = std::move(r);
            }
        } catch (const std::exception& e) {
            run.error = e.what();
        }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t set = 0; set < opts.seed_sets; ++set) {
        SolveOptions so = opts.solve;
        so.threshold = threshold;
        so.seed = opts.solve.seed + set;
        std::optional<SolveReport> set_best = warm_report;
        try {
            MultistartResult ms = multistart(prob, so, radial);
            run.n_success += ms.n_success;
            if (!set_best || ms.best.energy < set_best->energy) set_best = std::move(ms.best);
        } catch (const std::exception& e) {
            if (run.error.empty()) run.error = e.what();
        }
        if (!set_best) continue;
        lo = std::min(lo, set_best->energy);
        hi = std::max(hi, set_best->energy);
        if (!run.best || set_best->energy < run.best->energy) run.best = std::move(set_best);
    }
    if (run.best) {
        run.sample.energy = run.best->energy;
        run.sample.scatter = hi - lo;
        run.error.clear();
    } else {
        run.sample.energy = std::numeric_limits<double>::quiet_NaN();
        if (run.error.empty()) run.error = "no converged start";
    }
    return run;
}

LevelEvaluator level_evaluator(const Problem& base, const ScanOptions& opts, double threshold) {
    std::shared_ptr<const RadialProjector> rp;
    if (opts.solve.radial) rp = std::make_shared<const RadialProjector>(base.grid);
    return [base, opts, threshold, rp](double kappa) {
        LevelRun run = run_level(base.with_kappa(kappa), opts, threshold, nullptr, rp);
        if (!run.best) throw AllFailed("level at kappa = " + std::to_string(kappa) + ": " + run.error);
        return run.sample;
    };
}

KappaScan scan_kappa(const std::vector<double>& kappas, const Problem& base, const ScanOptions& opts,
                     double threshold) {
    if (kappas.size() < 2) throw std::invalid_argument("scan.kappas: needs >= 2 entries");
    for (std::size_t i = 1; i < kappas.size(); ++i) {
        if (!(kappas[i] > kappas[i - 1])) throw std::invalid_argument("scan.kappas: must be strictly ascending");
    }
    opts.solve.validate();
    KappaScan scan;
    scan.kappas = kappas;
    scan.threshold = threshold;
    std::shared_ptr<const RadialProjector> rp;
    if (opts.solve.radial) rp = std::make_shared<const RadialProjector>(base.grid);
    std::optional<Pair> previous;
    for (double kappa : kappas) {
        const Pair* warm = opts.continuation && previous ? &*previous : nullptr;
        LevelRun run = run_level(base.with_kappa(kappa), opts, threshold, warm, rp);
        scan.converged.push_back(run.best.has_value());
        scan.n_success.push_back(run.n_success);
        scan.scatter.push_back(run.best ? run.sample.scatter : 0.0);
        scan.errors.push_back(run.error);
        scan.energies.push_back(run.sample.energy);
        if (run.best) {
            previous = run.best->pair;
            scan.best.push_back(std::move(*run.best));
        } else {
            scan.best.emplace_back(base.grid);
        }
    }
    for (std::size_t i = 0; i + 1 < kappas.size(); ++i) {
        const double a = scan.energies[i];
        const double b = scan.energies[i + 1];
        if (std::isnan(a) || std::isnan(b)) continue;
        if (b > a + opts.monotonicity_tol * std::abs(a)) scan.monotonicity_violations.push_back(i);
        scan.jump_constant = std::max(scan.jump_constant, std::abs(b - a) / (kappas[i + 1] - kappas[i]));
    }
    return scan;
}

bool at_threshold(double energy, double scatter, double threshold) {
    const double tol = std::max(1e-3 * threshold, 2.0 * scatter);
    return energy >= threshold - tol;
}

KappaStar estimate_kappa_star(const KappaScan& scan, const LevelEvaluator& eval, std::size_t refine_iters) {
    const std::size_t n = scan.kappas.size();
    std::optional<std::size_t> first_below;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::isnan(scan.energies[i])) continue;
        if (!at_threshold(scan.energies[i], scan.scatter[i], scan.threshold)) {
            first_below = i;
            break;
        }
    }
    if (!first_below) throw NotBracketed("no scanned kappa drops below the threshold; kappa* exceeds the scan range");
    std::optional<std::size_t> last_at;
    for (std::size_t i = 0; i < *first_below; ++i) {
        if (!std::isnan(scan.energies[i])) last_at = i;
    }
    if (!last_at) {
        throw NotBracketed("every scanned energy is already below the threshold; evidence that kappa* <= " +
                           std::to_string(scan.kappas.front()));
    }
    KappaStar ks;
    ks.lo = scan.kappas[*last_at];
    ks.hi = scan.kappas[*first_below];
    for (std::size_t it = 0; it < refine_iters; ++it) {
        const double mid = 0.5 * (ks.lo + ks.hi);
        const LevelSample sample = eval(mid);
        ++ks.evaluations;
        if (at_threshold(sample.energy, sample.scatter, scan.threshold)) ks.lo = mid; else ks.hi = mid;
    }
    ks.estimate = 0.5 * (ks.lo + ks.hi);
    return ks;
}

}  // namespace mixsch
