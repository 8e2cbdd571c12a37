#include "mixsch/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "grid_impl.hpp"

namespace mixsch {

namespace {

void require_same_grid(const Grid2D& a, const Grid2D& b) {
    if (!a.compatible(b)) throw std::invalid_argument("fields live on different grids");
}

std::vector<double> k1_squared(const Grid2D& g) {
    std::vector<double> row(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) row[i] = g.k1()[i] * g.k1()[i];
    return row;
}

Field apply_real_symbol(const Field& f, const std::vector<double>& row, const std::vector<double>& col) {
    SpectralField F = forward_transform(f);
    apply_separable_symbol(F, row, col);
    return inverse_transform(F);
}

}  // namespace

void require_fractional_order(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("fractional order s must lie in (0, 1), got " + std::to_string(s));
}

SpectralField forward_transform(const Field& f) {
    const Grid2D& g = f.grid();
    SpectralField out(g);
    // Out-of-place r2c preserves its input.
    fftw_execute_dft_r2c(g.impl().forward, const_cast<double*>(f.data()), reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& c : out.coefficients()) c *= scale;
    return out;
}

Field inverse_transform(const SpectralField& F) {
    const Grid2D& g = F.grid();
    ComplexBuffer scratch(F.coefficients().begin(), F.coefficients().end());
    Field out(g);
    fftw_execute_dft_c2r(g.impl().backward, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    return out;
}

double integrate(const Field& f) {
    double sum = 0.0;
    for (double x : f.values()) sum += x;
    return sum * f.grid().cell_area();
}

double inner_product(const Field& f, const Field& g) {
    require_same_grid(f.grid(), g.grid());
    double sum = 0.0;
    const std::size_t n = f.size();
    for (std::size_t k = 0; k < n; ++k) sum += f[k] * g[k];
    return sum * f.grid().cell_area();
}

double l2_norm_sq(const Field& f) { return inner_product(f, f); }

double spectral_quadratic_form(const SpectralField& F, const std::function<double(double, double)>& w) {
    const Grid2D& g = F.grid();
    const std::size_t nyh = F.stored_ny();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double k1 = g.k1()[i];
        for (std::size_t j = 0; j < nyh; ++j) {
            const double k2 = std::abs(g.k2()[j]);
            sum += F.column_weight(j) * w(k1, k2) * std::norm(F.stored(i, j));
        }
    }
    return sum * g.area();
}

void apply_separable_symbol(SpectralField& F, const std::vector<double>& row, const std::vector<double>& col) {
    const std::size_t nx = F.grid().nx();
    const std::size_t nyh = F.stored_ny();
    if (row.size() != nx || col.size() != nyh) throw std::invalid_argument("symbol table size mismatch");
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < nyh; ++j) F.stored(i, j) *= row[i] + col[j];
    }
}

std::vector<double> fractional_symbol_y(const Grid2D& g, double s) {
    require_fractional_order(s);
    const std::size_t nyh = g.ny() / 2 + 1;
    std::vector<double> col(nyh);
    for (std::size_t j = 0; j < nyh; ++j) {
        // fftfreq puts the Nyquist mode at -ny/2; use its positive magnitude.
        const double k = std::abs(g.k2()[j]);
        col[j] = k == 0.0 ? 0.0 : std::pow(k, 2.0 * s);
    }
    return col;
}

Field apply_fractional_laplacian_y(const Field& f, double s) {
    const Grid2D& g = f.grid();
    return apply_real_symbol(f, std::vector<double>(g.nx(), 0.0), fractional_symbol_y(g, s));
}

Field apply_dxx(const Field& f) {
    const Grid2D& g = f.grid();
    return apply_real_symbol(f, k1_squared(g), std::vector<double>(g.ny() / 2 + 1, 0.0));
}

Field apply_dx(const Field& f) {
    const Grid2D& g = f.grid();
    SpectralField F = forward_transform(f);
    const std::size_t nyh = F.stored_ny();
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double k = (2 * i == g.nx()) ? 0.0 : g.k1()[i];
        for (std::size_t j = 0; j < nyh; ++j) F.stored(i, j) *= std::complex<double>(0.0, k);
    }
    return inverse_transform(F);
}

Field apply_mixed_operator(const Field& f, double s) {
    const Grid2D& g = f.grid();
    auto row = k1_squared(g);
    for (auto& r : row) r += 1.0;
    return apply_real_symbol(f, row, fractional_symbol_y(g, s));
}

Field apply_inverse_mixed_operator(const Field& f, double s) {
    const Grid2D& g = f.grid();
    SpectralField F = forward_transform(f);
    const auto row = k1_squared(g);
    const auto col = fractional_symbol_y(g, s);
    const std::size_t nyh = F.stored_ny();
    for (std::size_t i = 0; i < g.nx(); ++i) {
        for (std::size_t j = 0; j < nyh; ++j) F.stored(i, j) /= 1.0 + row[i] + col[j];
    }
    return inverse_transform(F);
}

QuadraticParts quadratic_parts(const SpectralField& F, double s) {
    const Grid2D& g = F.grid();
    const auto col = fractional_symbol_y(g, s);
    const std::size_t nyh = F.stored_ny();
    QuadraticParts q;
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double kk = g.k1()[i] * g.k1()[i];
        double mass = 0.0;
        double frac = 0.0;
        for (std::size_t j = 0; j < nyh; ++j) {
            const double a = F.column_weight(j) * std::norm(F.stored(i, j));
            mass += a;
            frac += a * col[j];
        }
        q.mass += mass;
        q.dx += kk * mass;
        q.fractional += frac;
    }
    q.mass *= g.area();
    q.dx *= g.area();
    q.fractional *= g.area();
    return q;
}

QuadraticParts quadratic_parts(const Field& f, double s) { return quadratic_parts(forward_transform(f), s); }

double sobolev_norm_sq(const Field& f, double s) { return quadratic_parts(f, s).total(); }

double fractional_seminorm_sq(const Field& f, double s) { return quadratic_parts(f, s).fractional; }

}  // namespace mixsch
