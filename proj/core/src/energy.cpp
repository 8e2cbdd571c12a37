#include "mixsch/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mixsch/spectral.hpp"

namespace mixsch {

namespace {

void require_finite(double v, const char* term) {
    if (!std::isfinite(v)) throw std::domain_error(std::string("non-finite energy term: ") + term);
}

void require_grid(const Pair& p, const Problem& prob) {
    if (!p.grid().compatible(prob.grid)) throw std::invalid_argument("pair and problem live on different grids");
}

struct Pointwise {
    double crit_u = 0.0;
    double crit_v = 0.0;
    double coupling = 0.0;
};

// Nonlinear integrals; when grad is given also subtracts the nonlinear part of
// the gradient from it.
Pointwise nonlinear_terms(const Pair& p, const Problem& prob, Pair* grad) {
    const ModelParams& m = prob.model;
    const double p1 = m.crit1();
    const double p2 = m.crit2();
    const double a = m.alpha;
    const double b = m.beta;
    const double ka = m.kappa * a;
    const double kb = m.kappa * b;
    const Field& h = prob.sampled.h;
    const std::size_t n = p.u.size();
    Pointwise out;
    for (std::size_t k = 0; k < n; ++k) {
        const double u = p.u[k];
        const double v = p.v[k];
        const double au = std::abs(u);
        const double av = std::abs(v);
        const double up = au == 0.0 ? 0.0 : std::pow(au, p1);
        const double vp = av == 0.0 ? 0.0 : std::pow(av, p2);
        const double ua = au == 0.0 ? 0.0 : std::pow(au, a);
        const double vb = av == 0.0 ? 0.0 : std::pow(av, b);
        out.crit_u += up;
        out.crit_v += vp;
        out.coupling += h[k] * ua * vb;
        if (grad != nullptr) {
            // |u|^{p-2} u = sign(u)|u|^{p-1} = |u|^p / u for u != 0
            const double gu = au == 0.0 ? 0.0 : up / u;
            const double gv = av == 0.0 ? 0.0 : vp / v;
            const double cu = au == 0.0 ? 0.0 : ua / u;
            const double cv = av == 0.0 ? 0.0 : vb / v;
            grad->u[k] -= gu + ka * h[k] * cu * vb;
            grad->v[k] -= gv + kb * h[k] * ua * cv;
        }
    }
    const double w = p.grid().cell_area();
    out.crit_u *= w;
    out.crit_v *= w;
    out.coupling *= w;
    return out;
}

EnergyBreakdown finish(double qu, double qv, const Pointwise& nl, const ModelParams& m) {
    EnergyBreakdown e;
    e.quad_u = qu;
    e.quad_v = qv;
    e.crit_u = nl.crit_u;
    e.crit_v = nl.crit_v;
    e.coupling = nl.coupling;
    require_finite(e.quad_u, "quad_u");
    require_finite(e.quad_v, "quad_v");
    require_finite(e.crit_u, "crit_u");
    require_finite(e.crit_v, "crit_v");
    require_finite(e.coupling, "coupling");
    e.total = assemble_energy(e, m);
    require_finite(e.total, "total");
    return e;
}

// L_s f from an existing spectrum.
Field apply_operator(SpectralField F, double s) {
    const Grid2D& g = F.grid();
    std::vector<double> row(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) row[i] = 1.0 + g.k1()[i] * g.k1()[i];
    apply_separable_symbol(F, row, fractional_symbol_y(g, s));
    return inverse_transform(F);
}

}  // namespace

double assemble_energy(const EnergyBreakdown& e, const ModelParams& m) {
    return 0.5 * (e.quad_u + e.quad_v) - e.crit_u / m.crit1() - e.crit_v / m.crit2() - m.kappa * e.coupling;
}

EnergyBreakdown energy(const Pair& p, const Problem& prob) {
    require_grid(p, prob);
    const double qu = sobolev_norm_sq(p.u, prob.model.s1);
    const double qv = sobolev_norm_sq(p.v, prob.model.s2);
    return finish(qu, qv, nonlinear_terms(p, prob, nullptr), prob.model);
}

Evaluation evaluate(const Pair& p, const Problem& prob) {
    require_grid(p, prob);
    const SpectralField U = forward_transform(p.u);
    const SpectralField V = forward_transform(p.v);
    const double qu = quadratic_parts(U, prob.model.s1).total();
    const double qv = quadratic_parts(V, prob.model.s2).total();
    Pair grad(apply_operator(U, prob.model.s1), apply_operator(V, prob.model.s2));
    const Pointwise nl = nonlinear_terms(p, prob, &grad);
    Evaluation ev{finish(qu, qv, nl, prob.model), std::move(grad)};
    if (!ev.grad.all_finite()) throw std::domain_error("non-finite gradient");
    return ev;
}

Pair gradient(const Pair& p, const Problem& prob) { return evaluate(p, prob).grad; }

double nehari_value(const EnergyBreakdown& e, const ModelParams& m) {
    return e.quad_u + e.quad_v - e.crit_u - e.crit_v - m.kappa * m.degree() * e.coupling;
}

double nehari_value(const Pair& p, const Problem& prob) { return nehari_value(energy(p, prob), prob.model); }

}  // namespace mixsch
