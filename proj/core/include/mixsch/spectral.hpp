#pragma once

#include <functional>

#include "mixsch/field.hpp"

namespace mixsch {

/// Forward DFT carrying the 1/(nx*ny) factor: a constant field c has zero-mode
/// coefficient c and f(x) = sum_k F_k exp(i k.x).
SpectralField forward_transform(const Field& f);
Field inverse_transform(const SpectralField& f);

/// Rectangle rule dx*dy*sum(values).
double integrate(const Field& f);
double inner_product(const Field& f, const Field& g);
double l2_norm_sq(const Field& f);

/// Parseval form: area * sum over the full spectrum of w(k1, k2) |F_k|^2.
double spectral_quadratic_form(const SpectralField& f, const std::function<double(double, double)>& w);

/// Multiplies every mode by a real even symbol a(k1) + b(k2) given as per-row
/// and per-column tables of the stored half spectrum.
void apply_separable_symbol(SpectralField& f, const std::vector<double>& row, const std::vector<double>& col);

/// Column table |k2|^{2s} over the stored half spectrum (Nyquist at its positive
/// magnitude). Rejects s outside (0, 1).
std::vector<double> fractional_symbol_y(const Grid2D& grid, double s);

/// (-Delta)_y^s f = F^{-1}(|k2|^{2s} F f); the zero mode maps to 0.
Field apply_fractional_laplacian_y(const Field& f, double s);
/// -d^2/dx^2 f, symbol k1^2.
Field apply_dxx(const Field& f);
/// d/dx f, symbol i*k1 with the x-Nyquist mode zeroed so the result is real.
Field apply_dx(const Field& f);
/// (1 - d_xx + (-Delta)_y^s) f, symbol 1 + k1^2 + |k2|^{2s}.
Field apply_mixed_operator(const Field& f, double s);
/// Inverse of apply_mixed_operator; the symbol is bounded below by 1.
Field apply_inverse_mixed_operator(const Field& f, double s);

/// The three pieces of the H^{1,s} norm, each by Parseval.
struct QuadraticParts {
    double mass = 0.0;        ///< ||f||_2^2
    double dx = 0.0;          ///< ||d_x f||_2^2
    double fractional = 0.0;  ///< ||(-Delta)_y^{s/2} f||_2^2
    double total() const noexcept { return mass + dx + fractional; }
};

QuadraticParts quadratic_parts(const Field& f, double s);
QuadraticParts quadratic_parts(const SpectralField& f, double s);
double sobolev_norm_sq(const Field& f, double s);
double fractional_seminorm_sq(const Field& f, double s);

void require_fractional_order(double s);

}  // namespace mixsch
