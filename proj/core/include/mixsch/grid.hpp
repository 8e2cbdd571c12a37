#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace mixsch {

namespace detail {
struct GridImpl;
}

/// Periodic rectangular box [-lx/2, lx/2) x [-ly/2, ly/2) sampled on nx x ny
/// nodes. Node (i, j) sits at x = -lx/2 + i*dx, y = -ly/2 + j*dy, so the origin
/// is node (nx/2, ny/2). Storage is x-major: index = i*ny + j.
///
/// Grid2D is a cheap shared handle; copies refer to the same immutable tables
/// and FFT plans.
class Grid2D {
public:
    Grid2D(std::size_t nx, std::size_t ny, double lx, double ly);

    std::size_t nx() const noexcept;
    std::size_t ny() const noexcept;
    std::size_t size() const noexcept { return nx() * ny(); }
    /// Number of stored complex modes in the half (real-to-complex) spectrum.
    std::size_t spectral_size() const noexcept { return nx() * (ny() / 2 + 1); }

    double lx() const noexcept;
    double ly() const noexcept;
    double dx() const noexcept;
    double dy() const noexcept;
    double cell_area() const noexcept { return dx() * dy(); }
    double area() const noexcept { return lx() * ly(); }

    double x(std::size_t i) const noexcept;
    double y(std::size_t j) const noexcept;

    /// Angular wavenumbers in standard DFT order: 2*pi*fftfreq(n)/l.
    const std::vector<double>& k1() const noexcept;
    const std::vector<double>& k2() const noexcept;

    std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * ny() + j; }

    /// Same sample counts and box lengths.
    bool compatible(const Grid2D& other) const noexcept;

    const detail::GridImpl& impl() const noexcept { return *impl_; }

private:
    std::shared_ptr<const detail::GridImpl> impl_;
};

/// Throws std::invalid_argument on odd or tiny counts and non-positive lengths.
Grid2D make_grid(std::size_t nx, std::size_t ny, double lx, double ly);

}  // namespace mixsch
