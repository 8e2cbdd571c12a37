#include "mixsch/grid.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mixsch/field.hpp"
#include "grid_impl.hpp"

namespace mixsch {

namespace {

// The FFTW planner is not thread-safe; execution with new-array functions is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<double> wavenumbers(std::size_t n, double length) {
    std::vector<double> k(n);
    const double scale = 2.0 * std::numbers::pi / length;
    const auto half = static_cast<long>(n / 2);
    for (std::size_t j = 0; j < n; ++j) {
        long m = static_cast<long>(j);
        if (m >= half) m -= static_cast<long>(n);
        k[j] = scale * static_cast<double>(m);
    }
    return k;
}

}  // namespace

namespace detail {

GridImpl::GridImpl(std::size_t nx_, std::size_t ny_, double lx_, double ly_)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_), dx(lx_ / static_cast<double>(nx_)), dy(ly_ / static_cast<double>(ny_)),
      k1(wavenumbers(nx_, lx_)), k2(wavenumbers(ny_, ly_)) {
    RealBuffer real(nx * ny);
    ComplexBuffer spec(nx * (ny / 2 + 1));
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    const int n0 = static_cast<int>(nx);
    const int n1 = static_cast<int>(ny);
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_2d(n0, n1, real.data(), c, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_2d(n0, n1, c, real.data(), FFTW_ESTIMATE);
    if (forward == nullptr || backward == nullptr) throw std::runtime_error("FFTW planning failed");
}

GridImpl::~GridImpl() {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
}

}  // namespace detail

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double lx, double ly) {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0) {
        throw std::invalid_argument("grid sample counts must be even and >= 8 (got " + std::to_string(nx) + " x " +
                                    std::to_string(ny) + ")");
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw std::invalid_argument("grid box lengths must be positive and finite");
    }
    impl_ = std::make_shared<const detail::GridImpl>(nx, ny, lx, ly);
}

std::size_t Grid2D::nx() const noexcept { return impl_->nx; }
std::size_t Grid2D::ny() const noexcept { return impl_->ny; }
double Grid2D::lx() const noexcept { return impl_->lx; }
double Grid2D::ly() const noexcept { return impl_->ly; }
double Grid2D::dx() const noexcept { return impl_->dx; }
double Grid2D::dy() const noexcept { return impl_->dy; }
double Grid2D::x(std::size_t i) const noexcept { return -0.5 * impl_->lx + static_cast<double>(i) * impl_->dx; }
double Grid2D::y(std::size_t j) const noexcept { return -0.5 * impl_->ly + static_cast<double>(j) * impl_->dy; }
const std::vector<double>& Grid2D::k1() const noexcept { return impl_->k1; }
const std::vector<double>& Grid2D::k2() const noexcept { return impl_->k2; }

bool Grid2D::compatible(const Grid2D& other) const noexcept {
    return impl_ == other.impl_ ||
           (nx() == other.nx() && ny() == other.ny() && lx() == other.lx() && ly() == other.ly());
}

Grid2D make_grid(std::size_t nx, std::size_t ny, double lx, double ly) { return Grid2D(nx, ny, lx, ly); }

}  // namespace mixsch
