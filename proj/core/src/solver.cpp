#include "mixsch/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "mixsch/errors.hpp"
#include "mixsch/nehari.hpp"
#include "mixsch/parallel.hpp"
#include "mixsch/rng.hpp"
#include "mixsch/spectral.hpp"

namespace mixsch {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kSemiTrivial = 1e-8;
constexpr double kMinStep = 1e-3;
constexpr double kMaxStep = 1e2;
constexpr std::size_t kStallWindow = 50;
constexpr double kElTolerance = 1e-5;

double pair_inner(const Pair& a, const Pair& b) { return inner_product(a.u, b.u) + inner_product(a.v, b.v); }

Pair precondition(const Pair& g, const ModelParams& m, const RadialProjector* radial) {
    if (radial != nullptr) {
        return radial->apply(Pair(apply_isotropic_inverse(g.u, m.s1), apply_isotropic_inverse(g.v, m.s2)));
    }
    return Pair(apply_inverse_mixed_operator(g.u, m.s1), apply_inverse_mixed_operator(g.v, m.s2));
}

double d_norm_sq(const Pair& p, const ModelParams& m) { return sobolev_norm_sq(p.u, m.s1) + sobolev_norm_sq(p.v, m.s2); }

double operator_scale(const Pair& p, const ModelParams& m) {
    return std::sqrt(l2_norm_sq(apply_mixed_operator(p.u, m.s1)) + l2_norm_sq(apply_mixed_operator(p.v, m.s2)));
}

double min_value(const Pair& p) { return std::min(p.u.min(), p.v.min()); }

bool is_semi_trivial(const Pair& p) {
    const double nu = std::sqrt(l2_norm_sq(p.u));
    const double nv = std::sqrt(l2_norm_sq(p.v));
    return nu < kSemiTrivial * nv || nv < kSemiTrivial * nu;
}

struct Iterate {
    Pair p;
    Evaluation ev;
};

Iterate make_iterate(Pair p, const Problem& prob) {
    Evaluation ev = evaluate(p, prob);
    return {std::move(p), std::move(ev)};
}

Iterate project_iterate(const Pair& p, const Problem& prob, const RadialProjector* radial) {
    Pair q = radial != nullptr ? radial->apply(p) : p;
    const double eta = fiber_root(fiber_coefficients(energy(q, prob)), prob.model);
    q *= eta;
    return make_iterate(std::move(q), prob);
}

double dual_grad_norm(const Iterate& it, const ModelParams& m, const RadialProjector* radial) {
    const Pair gr = radial != nullptr ? radial->apply(it.ev.grad) : it.ev.grad;
    const double slope = pair_inner(gr, precondition(gr, m, radial));
    return std::sqrt(std::max(slope, 0.0) / it.ev.energy.norm_sq());
}

struct DescentOutcome {
    Iterate it;
    std::size_t iterations;
    std::string status;
    bool grad_ok;
    bool concentration;
};

DescentOutcome descend(Iterate it, const Problem& prob, const SolveOptions& opts, const RadialProjector* radial,
                       std::size_t iter0, std::vector<HistoryRow>* history) {
    const ModelParams& m = prob.model;
    double step = opts.step_rule == StepRule::fixed ? opts.fixed_step : 1.0;
    std::size_t iter = iter0;
    double best_gn = std::numeric_limits<double>::infinity();
    std::size_t since_best = 0;

    for (;;) {
        const Pair& G = it.ev.grad;
        Pair gr = radial != nullptr ? radial->apply(G) : G;
        Pair d = precondition(gr, m, radial);
        const double slope = pair_inner(gr, d);  // >= 0
        const double a1 = it.ev.energy.norm_sq();
        const double gn = std::sqrt(std::max(slope, 0.0) / a1);
        const double J = it.ev.energy.total;
        if (!std::isfinite(J) || !std::isfinite(gn)) throw Diverged("non-finite energy during descent");
        if (history != nullptr) history->push_back({iter, J, gn, nehari_value(it.ev.energy, m)});

        if (gn < opts.grad_tol) return {std::move(it), iter, "gradient tolerance reached", true, false};
        if (iter >= opts.max_iters) return {std::move(it), iter, "iteration limit", false, false};

        if (gn < best_gn * 0.999) {
            best_gn = gn;
            since_best = 0;
        } else if (++since_best > kStallWindow && std::isfinite(opts.threshold) &&
                   std::abs(J - opts.threshold) < 1e-6 * std::abs(opts.threshold)) {
            return {std::move(it), iter, "energy at threshold with stalled gradient", false, true};
        }

        // Round-off floor for energy comparisons.
        const double slack = 1e-13 * (std::abs(J) + a1);
        d *= -1.0;
        double tau = step;
        bool accepted = false;
        Iterate next = it;
        for (int bt = 0; bt < 40; ++bt) {
            Pair trial = it.p;
            trial.axpy(tau, d);
            try {
                next = project_iterate(trial, prob, radial);
            } catch (const NoProjection&) {
                tau *= 0.5;
                continue;
            }
            const double target = J - kArmijo * tau * slope;
            if (next.ev.energy.total <= target) {
                accepted = true;
                break;
            }
            // Inside the round-off band the energy cannot rank the trial, so
            // the dual gradient norm has to drop instead.
            if (next.ev.energy.total <= target + slack && dual_grad_norm(next, m, radial) < gn) {
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) return {std::move(it), iter, "line search stalled", false, false};

        if (opts.step_rule == StepRule::barzilai_borwein) {
            Pair s = next.p;
            s.axpy(-1.0, it.p);
            Pair y = next.ev.grad;
            y.axpy(-1.0, it.ev.grad);
            if (radial != nullptr) y = radial->apply(y);
            const double sy = pair_inner(s, y);
            const double ss = d_norm_sq(s, m);
            step = sy > 0.0 ? std::clamp(ss / sy, kMinStep, kMaxStep) : std::min(2.0 * tau, kMaxStep);
        } else {
            step = opts.fixed_step;
        }
        it = std::move(next);
        ++iter;
    }
}

}  // namespace

void SolveOptions::validate() const {
    if (!(grad_tol > 0.0)) throw std::invalid_argument("solver.grad_tol: must be > 0");
    if (n_starts < 1) throw std::invalid_argument("solver.n_starts: must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("solver.max_iters: must be >= 1");
    if (step_rule == StepRule::fixed && !(fixed_step > 0.0)) throw std::invalid_argument("solver.fixed_step: must be > 0");
}

SolveReport::SolveReport(const Grid2D& g) : pair(zero_pair(g)) {}

double outer_mass_fraction(const Field& f, double width) {
    const Grid2D& g = f.grid();
    const double xl = (0.5 - width) * g.lx();
    const double yl = (0.5 - width) * g.ly();
    double outer = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double w = f(i, j) * f(i, j);
            total += w;
            if (std::abs(g.x(i)) > xl || std::abs(g.y(j)) > yl) outer += w;
        }
    }
    return total > 0.0 ? outer / total : 0.0;
}

double euler_lagrange_residual(const Pair& p, const Problem& prob) {
    const double scale = operator_scale(p, prob.model);
    if (scale == 0.0) return 0.0;
    const Pair g = gradient(p, prob);
    return std::sqrt(pair_inner(g, g)) / scale;
}

Pair symmetrize(const Pair& p) { return Pair(abs(p.u), abs(p.v)); }

SolveReport minimize_ground_state(const Pair& init, const Problem& prob, const SolveOptions& opts,
                                  std::shared_ptr<const RadialProjector> radial) {
    opts.validate();
    if (!init.grid().compatible(prob.grid)) throw std::invalid_argument("initial pair lives on another grid");
    if (opts.radial && radial == nullptr) radial = std::make_shared<const RadialProjector>(prob.grid);
    const RadialProjector* rp = opts.radial ? radial.get() : nullptr;

    SolveReport rep(prob.grid);
    rep.seed = opts.seed;
    std::vector<HistoryRow>* hist = opts.record_history ? &rep.history : nullptr;

    Iterate it = project_iterate(opts.symmetrize ? symmetrize(init) : init, prob, rp);
    DescentOutcome out = descend(std::move(it), prob, opts, rp, 0, hist);

    // The spectral discretization lets a converged pair undershoot zero by a
    // small Gibbs-type tail. With symmetrization on, the reported pair is the
    // projected modulus whenever it still satisfies the residual tolerance.
    rep.raw_min_value = min_value(out.it.p);
    if (opts.symmetrize && rep.raw_min_value < 0.0) {
        Iterate sym = project_iterate(symmetrize(out.it.p), prob, rp);
        Pair gr = rp != nullptr ? rp->apply(sym.ev.grad) : sym.ev.grad;
        const double el = std::sqrt(pair_inner(gr, gr)) / operator_scale(sym.p, prob.model);
        if (el < kElTolerance) {
            rep.symmetrized = true;
            rep.symmetrization_energy_change = sym.ev.energy.total - out.it.ev.energy.total;
            out.it = std::move(sym);
        }
    }

    const Iterate& fin = out.it;
    const ModelParams& m = prob.model;
    rep.pair = fin.p;
    rep.iterations = out.iterations;
    rep.status = out.status;
    rep.energy = fin.ev.energy.total;
    rep.norm_sq = fin.ev.energy.norm_sq();
    rep.nehari_residual = std::abs(nehari_value(fin.ev.energy, m));
    {
        Pair gr = rp != nullptr ? rp->apply(fin.ev.grad) : fin.ev.grad;
        Pair d = precondition(gr, m, rp);
        rep.grad_norm = std::sqrt(std::max(pair_inner(gr, d), 0.0) / rep.norm_sq);
        const double scale = operator_scale(fin.p, m);
        rep.el_residual = std::sqrt(pair_inner(fin.ev.grad, fin.ev.grad)) / scale;
        rep.constrained_el_residual = std::sqrt(pair_inner(gr, gr)) / scale;
    }
    rep.semi_trivial = is_semi_trivial(fin.p);
    rep.concentration_suspected = out.concentration;
    rep.boundary_decay = std::max(outer_mass_fraction(fin.p.u), outer_mass_fraction(fin.p.v));
    {
        std::optional<RadialProjector> local;
        if (radial == nullptr) local.emplace(prob.grid);
        const RadialProjector& r = radial != nullptr ? *radial : *local;
        const double nu = l2_norm_sq(fin.p.u) + l2_norm_sq(fin.p.v);
        const double du = l2_norm_sq(fin.p.u - r.apply(fin.p.u)) + l2_norm_sq(fin.p.v - r.apply(fin.p.v));
        rep.radial_defect = nu > 0.0 ? std::sqrt(du / nu) : 0.0;
    }
    rep.min_value = min_value(fin.p);
    rep.converged = out.grad_ok && rep.nehari_residual < kOnManifoldTolerance * rep.norm_sq &&
                    rep.constrained_el_residual < kElTolerance;
    return rep;
}

Pair initial_guess(const Grid2D& grid, std::uint64_t seed, std::size_t start, bool radial) {
    StreamRng rng(seed, "solver.initial", start);
    // Both components share a center so the coupling sees them from the start.
    const double x0 = radial ? 0.0 : rng.uniform(-0.25, 0.25) * grid.lx();
    const double y0 = radial ? 0.0 : rng.uniform(-0.25, 0.25) * grid.ly();
    auto gaussian = [&]() {
        const double w = rng.uniform(1.0, 4.0);
        const double amp = rng.uniform(0.5, 2.0);
        return Field::from_function(grid, [=](double x, double y) {
            const double r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
            return amp * std::exp(-r2 / (w * w));
        });
    };
    Field u = gaussian();
    Field v = gaussian();
    return Pair(std::move(u), std::move(v));
}

MultistartResult multistart(const Problem& prob, const SolveOptions& opts,
                            std::shared_ptr<const RadialProjector> radial) {
    opts.validate();
    if (opts.radial && !radial) radial = std::make_shared<const RadialProjector>(prob.grid);
    std::vector<SolveReport> reports(opts.n_starts, SolveReport(prob.grid));
    std::vector<std::string> errors(opts.n_starts);
    parallel_for(opts.n_starts, opts.jobs, [&](std::size_t k) {
        SolveOptions o = opts;
        o.jobs = 1;
        try {
            reports[k] = minimize_ground_state(initial_guess(prob.grid, opts.seed, k, opts.radial), prob, o, radial);
        } catch (const std::exception& e) {
            reports[k].converged = false;
            reports[k].status = std::string("failed: ") + e.what();
        }
        reports[k].seed = opts.seed;
        reports[k].start_index = k;
    });

    MultistartResult res{SolveReport(prob.grid), {}, 0, 0.0};
    const SolveReport* best = nullptr;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& r : reports) {
        if (!r.converged) continue;
        ++res.n_success;
        lo = std::min(lo, r.energy);
        hi = std::max(hi, r.energy);
        // (energy, start index) ordering keeps the choice deterministic.
        if (best == nullptr || r.energy < best->energy) best = &r;
    }
    if (best == nullptr) {
        std::string why = reports.empty() ? "" : reports.front().status;
        throw AllFailed("no multistart run converged (first status: " + why + ")");
    }
    res.best = *best;
    res.energy_scatter = hi - lo;
    res.reports = std::move(reports);
    return res;
}

}  // namespace mixsch
