#include "mixsch/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixsch/spectral.hpp"

namespace mixsch {

namespace {

// Keys cubic convolution kernel weights for fractional offset t in [0, 1).
std::array<double, 4> cubic_weights(double t) {
    constexpr double a = -0.5;
    auto w = [](double d) {
        d = std::abs(d);
        if (d < 1.0) return (a + 2.0) * d * d * d - (a + 3.0) * d * d + 1.0;
        if (d < 2.0) return a * d * d * d - 5.0 * a * d * d + 8.0 * a * d - 4.0 * a;
        return 0.0;
    };
    return {w(1.0 + t), w(t), w(1.0 - t), w(2.0 - t)};
}

double interpolate_periodic(const Field& f, double x, double y) {
    const Grid2D& g = f.grid();
    const double u = (x - g.x(0)) / g.dx();
    const double v = (y - g.y(0)) / g.dy();
    const double fu = std::floor(u);
    const double fv = std::floor(v);
    const auto wx = cubic_weights(u - fu);
    const auto wy = cubic_weights(v - fv);
    const auto nx = static_cast<long>(g.nx());
    const auto ny = static_cast<long>(g.ny());
    const long i0 = static_cast<long>(fu) - 1;
    const long j0 = static_cast<long>(fv) - 1;
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        const long i = ((i0 + a) % nx + nx) % nx;
        double row = 0.0;
        for (int b = 0; b < 4; ++b) {
            const long j = ((j0 + b) % ny + ny) % ny;
            row += wy[b] * f(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
        acc += wx[a] * row;
    }
    return acc;
}

double table_step(const Field& f) { return 1e-5 * std::min(f.grid().dx(), f.grid().dy()); }

}  // namespace

WeightFunction WeightFunction::constant(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("constant weight requires c >= 0");
    return WeightFunction(WeightKind::constant, c);
}

WeightFunction WeightFunction::bump() { return WeightFunction(WeightKind::bump, 0.0); }

WeightFunction WeightFunction::inverse_exponential() { return WeightFunction(WeightKind::inverse_exponential, 0.0); }

WeightFunction WeightFunction::annular_gaussian(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("annular-gaussian weight requires a > 0");
    return WeightFunction(WeightKind::annular_gaussian, a);
}

WeightFunction WeightFunction::tabulated(const Field& samples) {
    if (!samples.all_finite()) throw std::invalid_argument("tabulated weight has non-finite samples");
    if (samples.min() < 0.0) throw std::invalid_argument("tabulated weight must be nonnegative");
    WeightFunction w(WeightKind::tabulated, 0.0);
    w.table_ = std::make_shared<const Field>(samples);
    return w;
}

double WeightFunction::value(double x, double y) const {
    const double r2 = x * x + y * y;
    switch (kind_) {
        case WeightKind::constant: return param_;
        case WeightKind::bump: return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        case WeightKind::inverse_exponential: return std::exp(1.0 / (1.0 + r2));
        case WeightKind::annular_gaussian: return r2 * std::exp(-param_ * r2);
        case WeightKind::tabulated: return interpolate_periodic(*table_, x, y);
    }
    return 0.0;
}

// For the radial kinds h = H(r^2), so h_x = 2x H'(r^2).
double WeightFunction::dx(double x, double y) const {
    const double r2 = x * x + y * y;
    switch (kind_) {
        case WeightKind::constant: return 0.0;
        case WeightKind::bump: {
            if (r2 >= 1.0) return 0.0;
            const double q = 1.0 - r2;
            return -2.0 * x * std::exp(-1.0 / q) / (q * q);
        }
        case WeightKind::inverse_exponential: {
            const double q = 1.0 + r2;
            return -2.0 * x * std::exp(1.0 / q) / (q * q);
        }
        case WeightKind::annular_gaussian: return 2.0 * x * std::exp(-param_ * r2) * (1.0 - param_ * r2);
        case WeightKind::tabulated: {
            const double h = table_step(*table_);
            return (interpolate_periodic(*table_, x + h, y) - interpolate_periodic(*table_, x - h, y)) / (2.0 * h);
        }
    }
    return 0.0;
}

double WeightFunction::dy(double x, double y) const {
    if (kind_ == WeightKind::tabulated) {
        const double h = table_step(*table_);
        return (interpolate_periodic(*table_, x, y + h) - interpolate_periodic(*table_, x, y - h)) / (2.0 * h);
    }
    // Radial kinds are symmetric under x <-> y.
    return dx(y, x);
}

std::string WeightFunction::name() const {
    switch (kind_) {
        case WeightKind::constant: return "constant";
        case WeightKind::bump: return "bump";
        case WeightKind::inverse_exponential: return "inverse-exponential";
        case WeightKind::annular_gaussian: return "annular-gaussian";
        case WeightKind::tabulated: return "tabulated";
    }
    return "unknown";
}

WeightKind parse_weight_kind(const std::string& name) {
    if (name == "constant") return WeightKind::constant;
    if (name == "bump") return WeightKind::bump;
    if (name == "inverse-exponential") return WeightKind::inverse_exponential;
    if (name == "annular-gaussian") return WeightKind::annular_gaussian;
    if (name == "tabulated") return WeightKind::tabulated;
    throw std::invalid_argument("unknown weight kind '" + name + "'");
}

SampledWeight sample_weight(const WeightFunction& w, const Grid2D& grid) {
    SampledWeight s{Field(grid), Field(grid), Field(grid)};
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        for (std::size_t j = 0; j < grid.ny(); ++j) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            s.h(i, j) = w.value(x, y);
            s.hx(i, j) = w.dx(x, y);
            s.hy(i, j) = w.dy(x, y);
        }
    }
    return s;
}

WeightReport validate_13(const WeightFunction& w, const Grid2D& grid) {
    const Field h = sample_weight(w, grid).h;
    if (!h.all_finite()) return {false, "h bounded", "non-finite sample"};
    if (h.min() < 0.0) return {false, "h >= 0", "min h = " + std::to_string(h.min())};
    const double total = integrate(h);
    if (!(total > 0.0)) return {false, "h is not zero", "integral of h vanishes on the grid"};
    return {true, "", "max h = " + std::to_string(h.max()) + ", integral = " + std::to_string(total)};
}

WeightReport validate_H1(const WeightFunction& w, const Grid2D& grid, double tol) {
    WeightReport base = validate_13(w, grid);
    if (!base.pass) return base;
    const double peak = sample_weight(w, grid).h.max();
    const double at_origin = w.value(0.0, 0.0);
    if (at_origin > tol * peak) {
        return {false, "h(0,0) = 0", "h(0,0) = " + std::to_string(at_origin)};
    }
    double ring = 0.0;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        ring = std::max({ring, w.value(grid.x(i), grid.y(0)), w.value(grid.x(i), grid.y(grid.ny() - 1))});
    }
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        ring = std::max({ring, w.value(grid.x(0), grid.y(j)), w.value(grid.x(grid.nx() - 1), grid.y(j))});
    }
    if (ring > tol * peak) {
        return {false, "h -> 0 at infinity", "boundary-ring max h = " + std::to_string(ring)};
    }
    return base;
}

RadialSignReport radial_hypothesis_sign(const WeightFunction& w, const Grid2D& grid, double kappa) {
    constexpr double slack = 1e-12;
    constexpr std::size_t keep = 16;
    RadialSignReport rep;
    rep.min_x_term = std::numeric_limits<double>::infinity();
    rep.min_y_term = std::numeric_limits<double>::infinity();
    std::vector<SignViolation> all;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        for (std::size_t j = 0; j < grid.ny(); ++j) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            const double tx = -kappa * x * w.dx(x, y);
            const double ty = -kappa * y * w.dy(x, y);
            rep.min_x_term = std::min(rep.min_x_term, tx);
            rep.min_y_term = std::min(rep.min_y_term, ty);
            const double worst = std::min(tx, ty);
            if (worst < -slack) all.push_back({x, y, worst});
        }
    }
    rep.holds = all.empty();
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    if (all.size() > keep) all.resize(keep);
    rep.violations = std::move(all);
    return rep;
}

}  // namespace mixsch
