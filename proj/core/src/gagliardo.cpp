#include "mixsch/gagliardo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mixsch/normalizing_constant.hpp"
#include "mixsch/spectral.hpp"

namespace mixsch {

namespace {

constexpr double kBoundaryTolerance = 1e-6;

void require_decay(const Field& f) {
    if (boundary_ring_ratio(f) >= kBoundaryTolerance) {
        throw std::invalid_argument("field does not decay at the box boundary; Gagliardo quadrature would be dominated by truncation");
    }
}

struct Kernel {
    std::vector<double> by_offset;  // |m dy|^{-1-2s} dy, m >= 1
    std::vector<double> exterior;   // node j: int over z outside the box of |y_j - z|^{-1-2s}
};

Kernel make_kernel(const Grid2D& g, double s) {
    const std::size_t ny = g.ny();
    const double dy = g.dy();
    Kernel k;
    k.by_offset.assign(ny, 0.0);
    for (std::size_t m = 1; m < ny; ++m) k.by_offset[m] = std::pow(static_cast<double>(m) * dy, -1.0 - 2.0 * s) * dy;
    // Node j owns the cell [y_j - dy/2, y_j + dy/2].
    const double lo = g.y(0) - 0.5 * dy;
    const double hi = g.y(ny - 1) + 0.5 * dy;
    k.exterior.resize(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = g.y(j);
        k.exterior[j] = (std::pow(y - lo, -2.0 * s) + std::pow(hi - y, -2.0 * s)) / (2.0 * s);
    }
    return k;
}

}  // namespace

double boundary_ring_ratio(const Field& f) {
    const Grid2D& g = f.grid();
    const double peak = f.max_abs();
    if (peak == 0.0) return 0.0;
    double ring = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        ring = std::max({ring, std::abs(f(i, 0)), std::abs(f(i, g.ny() - 1))});
    }
    for (std::size_t j = 0; j < g.ny(); ++j) {
        ring = std::max({ring, std::abs(f(0, j)), std::abs(f(g.nx() - 1, j))});
    }
    return ring / peak;
}

double gagliardo_seminorm_sq(const Field& f, double s) {
    require_fractional_order(s);
    require_decay(f);
    const Grid2D& g = f.grid();
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    const Kernel k = make_kernel(g, s);
    const double diag = 2.0 * std::pow(0.5 * g.dy(), 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    double total = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        double line = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            const double fj = f(i, j);
            double inner = 0.0;
            for (std::size_t l = j + 1; l < ny; ++l) {
                const double d = fj - f(i, l);
                inner += d * d * k.by_offset[l - j];
            }
            // Off-diagonal pairs appear twice in the symmetric double integral,
            // as does the inside/outside split.
            line += 2.0 * inner + 2.0 * fj * fj * k.exterior[j];
            // The skipped y = z cell holds about f_y^2 int_{|t| < dy/2} |t|^{1-2s} dt.
            const double up = j + 1 < ny ? f(i, j + 1) : 0.0;
            const double down = j > 0 ? f(i, j - 1) : 0.0;
            const double fy = (up - down) / (2.0 * g.dy());
            line += fy * fy * diag;
        }
        total += line;
    }
    return 0.5 * normalizing_constant_C(s) * total * g.dx() * g.dy();
}

Field gagliardo_apply(const Field& f, double s) {
    require_fractional_order(s);
    require_decay(f);
    const Grid2D& g = f.grid();
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    const Kernel k = make_kernel(g, s);
    const double c = normalizing_constant_C(s);
    // The skipped cell |y - z| < dy/2 holds -f_yy (dy/2)^{2-2s} / (2-2s) to
    // leading order; f_yy from a second difference.
    const double dy = g.dy();
    const double cell = std::pow(0.5 * dy, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    Field out(g);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double fj = f(i, j);
            const double below = j > 0 ? f(i, j - 1) : 0.0;
            const double above = j + 1 < ny ? f(i, j + 1) : 0.0;
            const double fyy = (above - 2.0 * fj + below) / (dy * dy);
            double acc = fj * k.exterior[j] - fyy * cell;
            for (std::size_t l = 0; l < ny; ++l) {
                if (l == j) continue;
                const std::size_t m = l > j ? l - j : j - l;
                acc += (fj - f(i, l)) * k.by_offset[m];
            }
            out(i, j) = c * acc;
        }
    }
    return out;
}

}  // namespace mixsch
