#include "mixsch/pohozaev.hpp"

#include <algorithm>
#include <cmath>

#include "mixsch/errors.hpp"
#include "mixsch/spectral.hpp"

namespace mixsch {

namespace {

constexpr double kFloor = 1e-30;
constexpr double kMomentTolerance = 1e-6;

void require_critical(const ModelParams& m) {
    if (m.regime() != Regime::critical) {
        throw RegimeMismatch("Pohozaev identities need s1 = s2 and alpha + beta = 2_s (regime is " +
                             to_string(m.regime()) + ")");
    }
}

}  // namespace

double relative_residual(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), kFloor});
}

PohozaevReport pohozaev_residuals(const Pair& p, const Problem& prob) {
    const ModelParams& m = prob.model;
    require_critical(m);
    if (!p.grid().compatible(prob.grid)) throw std::invalid_argument("pair and problem live on different grids");
    const double s = m.s1;
    const double pc = m.crit1();
    const QuadraticParts qu = quadratic_parts(p.u, s);
    const QuadraticParts qv = quadratic_parts(p.v, s);
    const double T = qu.dx + qv.dx;
    const double F = qu.fractional + qv.fractional;
    const double M = qu.mass + qv.mass;

    const Grid2D& g = prob.grid;
    const Field& h = prob.sampled.h;
    const Field& hx = prob.sampled.hx;
    const Field& hy = prob.sampled.hy;
    double P = 0.0;
    double H = 0.0;
    double W = 0.0;
    double xu = 0.0;
    double yv = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double x = g.x(i);
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double y = g.y(j);
            const std::size_t k = g.index(i, j);
            const double au = std::abs(p.u[k]);
            const double av = std::abs(p.v[k]);
            const double G = (au == 0.0 ? 0.0 : std::pow(au, m.alpha)) * (av == 0.0 ? 0.0 : std::pow(av, m.beta));
            P += (au == 0.0 ? 0.0 : std::pow(au, pc)) + (av == 0.0 ? 0.0 : std::pow(av, pc));
            H += h[k] * G;
            W += (y * hy[k] + s * x * hx[k]) * G;
            xu += x * x * p.u[k] * p.u[k];
            yv += y * y * p.v[k] * p.v[k];
        }
    }
    const double w = g.cell_area();
    P *= w;
    H *= w;
    W *= w;

    PohozaevReport r;
    r.lhs61 = s * (T + F);
    r.rhs61 = s * P + m.kappa * s * pc * H - m.kappa * W;
    r.lhs62 = T + F + M;
    r.rhs62 = P + m.kappa * pc * H;
    r.lhs622 = M;
    r.rhs622 = m.kappa / s * W;
    r.r61 = relative_residual(r.lhs61, r.rhs61);
    r.r62 = relative_residual(r.lhs62, r.rhs62);
    r.r622 = relative_residual(r.lhs622, r.rhs622);
    r.moment_xu = std::sqrt(xu * w);
    r.moment_yv = std::sqrt(yv * w);
    r.outer_mass = std::max(outer_mass_fraction(p.u), outer_mass_fraction(p.v));
    r.moment_ok = r.outer_mass < kMomentTolerance;
    return r;
}

NonexistenceReport nonexistence_probe(const Problem& prob, const ProbeOptions& opts) {
    require_critical(prob.model);
    NonexistenceReport rep;
    rep.sign = radial_hypothesis_sign(prob.weight, prob.grid, prob.model.kappa);
    if (prob.weight.is_constant()) {
        rep.gate = "constant";
        rep.hypothesis_holds = prob.weight.parameter() > 0.0;
    } else {
        rep.gate = rep.sign.holds ? "sign" : "declined";
        rep.hypothesis_holds = rep.sign.holds;
    }
    if (!rep.hypothesis_holds) return rep;

    SolveOptions so = opts.solve;
    std::vector<SolveReport> reports;
    try {
        reports = multistart(prob, so).reports;
    } catch (const AllFailed&) {
        // Unconverged candidates are still witnesses; rerun without the
        // convergence filter.
        for (std::size_t k = 0; k < so.n_starts; ++k) {
            try {
                reports.push_back(minimize_ground_state(initial_guess(prob.grid, so.seed, k, so.radial), prob, so));
                reports.back().start_index = k;
            } catch (const std::exception&) {
            }
        }
    }

    rep.max_rhs622 = -std::numeric_limits<double>::infinity();
    rep.all_inconsistent = !reports.empty();
    const SolveReport* best = nullptr;
    for (const auto& r : reports) {
        ProbeCandidate c;
        c.start_index = r.start_index;
        c.converged = r.converged;
        c.energy = r.energy;
        c.pohozaev = pohozaev_residuals(r.pair, prob);
        c.mass = c.pohozaev.lhs622;
        c.gap = c.pohozaev.lhs622 - c.pohozaev.rhs622;
        c.boundary_mass = c.pohozaev.outer_mass;
        c.inconsistent = c.mass > 0.0 && c.gap > 0.0;
        rep.max_rhs622 = std::max(rep.max_rhs622, c.pohozaev.rhs622);
        if (c.mass > 0.0 && !c.inconsistent) rep.all_inconsistent = false;
        rep.candidates.push_back(c);
        if (best == nullptr || r.energy < best->energy) best = &r;
    }

    if (opts.box_sensitivity && best != nullptr) {
        const Grid2D& g = prob.grid;
        auto grow = [](std::size_t n) { return 2 * static_cast<std::size_t>(std::lround(0.75 * static_cast<double>(n))); };
        const std::size_t nx = grow(g.nx());
        const std::size_t ny = grow(g.ny());
        Grid2D big(nx, ny, g.dx() * static_cast<double>(nx), g.dy() * static_cast<double>(ny));
        Problem bp(prob.model, prob.weight, big);
        // Embed the candidate at the center of the larger box.
        Pair init = zero_pair(big);
        const std::size_t ox = (nx - g.nx()) / 2;
        const std::size_t oy = (ny - g.ny()) / 2;
        for (std::size_t i = 0; i < g.nx(); ++i) {
            for (std::size_t j = 0; j < g.ny(); ++j) {
                init.u(i + ox, j + oy) = best->pair.u(i, j);
                init.v(i + ox, j + oy) = best->pair.v(i, j);
            }
        }
        try {
            const SolveReport br = minimize_ground_state(init, bp, so);
            const double m0 = l2_norm_sq(best->pair.u) + l2_norm_sq(best->pair.v);
            const double m1 = l2_norm_sq(br.pair.u) + l2_norm_sq(br.pair.v);
            rep.box_energy_shift = (br.energy - best->energy) / std::abs(best->energy);
            rep.box_mass_shift = (m1 - m0) / m0;
        } catch (const std::exception&) {
        }
    }
    return rep;
}

}  // namespace mixsch
