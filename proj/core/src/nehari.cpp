#include "mixsch/nehari.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <limits>
#include <stdexcept>

#include "mixsch/errors.hpp"

namespace mixsch {

FiberCoefficients fiber_coefficients(const EnergyBreakdown& e) {
    return {e.quad_u + e.quad_v, e.crit_u, e.crit_v, e.coupling};
}

FiberCoefficients fiber_coefficients(const Pair& p, const Problem& prob) {
    return fiber_coefficients(energy(p, prob));
}

FiberValues fiber_map(double t, const FiberCoefficients& c, const ModelParams& m) {
    if (!(t > 0.0)) throw std::invalid_argument("fiber map needs t > 0");
    const double p1 = m.crit1();
    const double p2 = m.crit2();
    const double q = m.degree();
    const double k = m.kappa;
    const double t1 = std::pow(t, p1);
    const double t2 = std::pow(t, p2);
    const double tq = std::pow(t, q);
    FiberValues f;
    f.psi = 0.5 * t * t * c.A1 - t1 * c.A2 / p1 - t2 * c.A3 / p2 - c.A4 * k * tq;
    f.d1 = t * c.A1 - t1 / t * c.A2 - t2 / t * c.A3 - k * q * c.A4 * tq / t;
    f.d2 = c.A1 - (p1 - 1.0) * t1 / (t * t) * c.A2 - (p2 - 1.0) * t2 / (t * t) * c.A3 -
           k * q * (q - 1.0) * c.A4 * tq / (t * t);
    f.d3 = -(p1 - 1.0) * (p1 - 2.0) * t1 / (t * t * t) * c.A2 - (p2 - 1.0) * (p2 - 2.0) * t2 / (t * t * t) * c.A3 -
           k * q * (q - 1.0) * (q - 2.0) * c.A4 * tq / (t * t * t);
    return f;
}

double fiber_root(const FiberCoefficients& c, const ModelParams& m) {
    if (!(c.A1 > 0.0)) throw NoProjection("zero pair has no Nehari projection");
    const double b2 = c.A2;
    const double b3 = c.A3;
    const double b4 = m.kappa * m.degree() * c.A4;
    if (!(b2 + b3 + b4 > 0.0)) throw NoProjection("fiber is purely quadratic: A2 = A3 = kappa A4 = 0");
    const double e2 = m.crit1() - 2.0;
    const double e3 = m.crit2() - 2.0;
    const double e4 = m.degree() - 2.0;
    // psi'(t)/t = A1 - sum b_k t^{e_k}; in tau = log t this is strictly
    // decreasing and concave, so Newton from the right of the root is monotone.
    auto G = [&](double tau, double* dG) {
        const double x2 = b2 * std::exp(e2 * tau);
        const double x3 = b3 * std::exp(e3 * tau);
        const double x4 = b4 * std::exp(e4 * tau);
        *dG = -(e2 * x2 + e3 * x3 + e4 * x4);
        return c.A1 - x2 - x3 - x4;
    };
    double lo = 0.0;
    double hi = 0.0;
    double d = 0.0;
    // Bracket by doubling/halving from t = 1.
    if (G(0.0, &d) > 0.0) {
        hi = std::log(2.0);
        while (G(hi, &d) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 700.0) throw NoProjection("fiber root beyond representable range");
        }
    } else {
        lo = -std::log(2.0);
        while (G(lo, &d) <= 0.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -700.0) throw NoProjection("fiber root beyond representable range");
        }
    }
    double tau = hi;
    const double tol = 1e-15 * c.A1;
    for (int it = 0; it < 200; ++it) {
        const double g = G(tau, &d);
        if (std::abs(g) <= tol) break;
        if (g > 0.0) lo = tau; else hi = tau;
        double next = tau - g / d;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - tau) <= 1e-16 * std::max(1.0, std::abs(tau))) {
            tau = next;
            break;
        }
        tau = next;
    }
    return std::exp(tau);
}

Projection project_to_nehari(const Pair& p, const Problem& prob) {
    const FiberCoefficients c = fiber_coefficients(p, prob);
    const double eta = fiber_root(c, prob.model);
    return {eta, eta * p, c};
}

NehariForms energy_on_nehari_forms(const EnergyBreakdown& e, const ModelParams& m) {
    const FiberCoefficients c = fiber_coefficients(e);
    const double phi = nehari_value(e, m);
    if (!(std::abs(phi) < kOnManifoldTolerance * c.A1)) {
        throw std::invalid_argument("pair is not on the Nehari manifold (|Phi| / ||p||^2 = " +
                                    std::to_string(c.A1 > 0.0 ? std::abs(phi) / c.A1 : phi) + ")");
    }
    const double q = m.degree();
    NehariForms f;
    f.form24 = m.s1 / (1.0 + m.s1) * c.A2 + m.s2 / (1.0 + m.s2) * c.A3 + m.kappa * (q - 2.0) / 2.0 * c.A4;
    f.form29 = (0.5 - 1.0 / q) * c.A1 + (1.0 / q - 1.0 / m.crit1()) * c.A2 + (1.0 / q - 1.0 / m.crit2()) * c.A3;
    f.direct = e.total;
    return f;
}

NehariForms energy_on_nehari_forms(const Pair& p, const Problem& prob) {
    return energy_on_nehari_forms(energy(p, prob), prob.model);
}

}  // namespace mixsch
