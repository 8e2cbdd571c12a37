#include "mixsch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "mixsch/gagliardo.hpp"
#include "mixsch/normalizing_constant.hpp"
#include "mixsch/rng.hpp"
#include "mixsch/spectral.hpp"

namespace mixsch {

namespace {

CheckResult make(std::string name, double value, double tol, std::string detail = {}) {
    return {std::move(name), value, tol, std::isfinite(value) && value <= tol, std::move(detail)};
}

double rel_l2(const Field& a, const Field& b) {
    const double den = std::sqrt(l2_norm_sq(b));
    return std::sqrt(l2_norm_sq(a - b)) / (den > 0.0 ? den : 1.0);
}

}  // namespace

std::vector<CheckResult> operator_battery(const OperatorBatteryOptions& opts) {
    std::vector<CheckResult> out;
    const Grid2D g(opts.n, opts.n, opts.box, opts.box);
    const double two_pi = 2.0 * std::numbers::pi;
    const int half = static_cast<int>(opts.n / 2) - 1;

    // Random interior modes; the Nyquist line is excluded because only its
    // cosine part survives sampling.
    std::vector<std::pair<int, int>> modes;
    StreamRng rng(opts.seed, "verify.modes");
    while (modes.size() < opts.n_modes) {
        const int m1 = static_cast<int>(rng.uniform(-half, half + 1));
        const int m2 = 1 + static_cast<int>(rng.uniform(0.0, half));
        modes.emplace_back(m1, std::min(m2, half));
    }

    for (double s : opts.orders) {
        double worst = 0.0;
        for (auto [m1, m2] : modes) {
            const double k1 = two_pi * m1 / g.lx();
            const double k2 = two_pi * m2 / g.ly();
            const Field f = Field::from_function(g, [=](double x, double y) { return std::cos(k1 * x + k2 * y + 0.3); });
            Field expect = f;
            expect *= std::pow(std::abs(k2), 2.0 * s);
            worst = std::max(worst, rel_l2(apply_fractional_laplacian_y(f, s), expect));
        }
        std::ostringstream name;
        name << "eigenfunction |k2|^{2s}, s = " << s;
        out.push_back(make(name.str(), worst, 1e-10, std::to_string(modes.size()) + " modes"));
    }

    {
        double worst = 0.0;
        for (auto [m1, m2] : modes) {
            const double k1 = two_pi * m1 / g.lx();
            const Field f = Field::from_function(g, [=](double x, double y) { return std::sin(k1 * x + 0.7) * std::cos(0.1 * m2 * y); });
            Field expect = f;
            expect *= k1 * k1;
            worst = std::max(worst, rel_l2(apply_dxx(f), expect));
        }
        out.push_back(make("eigenfunction k1^2 of -d_xx", worst, 1e-10));
    }

    {
        StreamRng r(opts.seed, "verify.parseval");
        Field f(g);
        for (auto& v : f.values()) v = r.uniform(-1.0, 1.0);
        const double spatial = l2_norm_sq(f);
        const double spectral = quadratic_parts(f, 0.5).mass;
        out.push_back(make("Parseval mass", std::abs(spatial - spectral) / spatial, 1e-12));

        const double s = 0.5;
        const Field back = apply_inverse_mixed_operator(apply_mixed_operator(f, s), s);
        out.push_back(make("mixed operator inverse round trip", rel_l2(back, f), 1e-12));
    }

    for (double s : opts.orders) {
        const double q = normalizing_constant_C(s);
        const double c = normalizing_constant_closed_form(s);
        std::ostringstream name;
        name << "C(s) quadrature vs Gamma form, s = " << s;
        out.push_back(make(name.str(), std::abs(q - c) / c, 1e-8));
    }

    // Compactly supported smooth bump, so the zero exterior of the real-space
    // quadrature matches the periodic picture. The spectral sum converges in
    // the box length like dk^{1+2s}, so small orders get a wider box.
    for (double s : opts.orders) {
        const std::size_t n = s < 0.4 ? 128 : 64;
        const double box = s < 0.4 ? 60.0 : 30.0;
        const Grid2D gb(n, n, box, box);
        const Field f = Field::from_function(gb, [](double x, double y) {
            const double r2 = (x * x + y * y) / 25.0;
            return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        });
        const double spec = fractional_seminorm_sq(f, s);
        const double gag = gagliardo_seminorm_sq(f, s);
        std::ostringstream name;
        name << "spectral vs Gagliardo seminorm at " << n << "^2, s = " << s;
        out.push_back(make(name.str(), std::abs(spec - gag) / spec, 0.05));
    }
    return out;
}

}  // namespace mixsch
