#include "mixsch/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixsch {

namespace {

void require_same_grid(const Grid2D& a, const Grid2D& b) {
    if (!a.compatible(b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

Field::Field(Grid2D grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

Field::Field(Grid2D grid, double value) : grid_(std::move(grid)), values_(grid_.size(), value) {}

Field::Field(Grid2D grid, RealBuffer values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("field length does not match grid size");
}

Field Field::from_function(const Grid2D& grid, const std::function<double(double, double)>& f) {
    Field out(grid);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        const double x = grid.x(i);
        for (std::size_t j = 0; j < grid.ny(); ++j) out(i, j) = f(x, grid.y(j));
    }
    return out;
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

Field& Field::operator*=(double c) noexcept {
    for (auto& x : values_) x *= c;
    return *this;
}

Field& Field::axpy(double c, const Field& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += c * other.values_[k];
    return *this;
}

double Field::max_abs() const noexcept {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

double Field::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

bool Field::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double c, Field a) { return a *= c; }

Field abs(const Field& f) {
    Field out(f);
    for (auto& x : out.values()) x = std::abs(x);
    return out;
}

SpectralField::SpectralField(Grid2D grid) : grid_(std::move(grid)), coeffs_(grid_.spectral_size()) {}

std::complex<double> SpectralField::coefficient(std::size_t i, std::size_t j) const noexcept {
    const std::size_t nx = grid_.nx();
    const std::size_t ny = grid_.ny();
    if (j <= ny / 2) return stored(i, j);
    return std::conj(stored((nx - i) % nx, ny - j));
}

Pair::Pair(Field u_, Field v_) : u(std::move(u_)), v(std::move(v_)) { require_same_grid(u.grid(), v.grid()); }

Pair& Pair::operator+=(const Pair& o) {
    u += o.u;
    v += o.v;
    return *this;
}

Pair& Pair::operator*=(double c) noexcept {
    u *= c;
    v *= c;
    return *this;
}

Pair& Pair::axpy(double c, const Pair& o) {
    u.axpy(c, o.u);
    v.axpy(c, o.v);
    return *this;
}

Pair operator*(double c, Pair p) { return p *= c; }

Pair zero_pair(const Grid2D& grid) { return Pair(Field(grid), Field(grid)); }

}  // namespace mixsch
