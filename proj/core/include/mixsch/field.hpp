#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <new>
#include <span>
#include <vector>

#include "mixsch/grid.hpp"

namespace mixsch {

/// 64-byte aligned allocator so buffers are usable with the grid's FFT plans.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::align_val_t alignment{64};

    AlignedAllocator() noexcept = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        return static_cast<T*>(::operator new(n * sizeof(T), alignment));
    }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, alignment); }

    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;
using ComplexBuffer = std::vector<std::complex<double>, AlignedAllocator<std::complex<double>>>;

/// Real samples of a function on a Grid2D.
class Field {
public:
    explicit Field(Grid2D grid);
    Field(Grid2D grid, double value);
    Field(Grid2D grid, RealBuffer values);

    /// Samples f(x, y) at every node.
    static Field from_function(const Grid2D& grid, const std::function<double(double, double)>& f);

    const Grid2D& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[grid_.index(i, j)]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[grid_.index(i, j)]; }
    double& operator[](std::size_t k) noexcept { return values_[k]; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double c) noexcept;
    /// this += c * other
    Field& axpy(double c, const Field& other);

    double max_abs() const noexcept;
    double min() const noexcept;
    double max() const noexcept;
    bool all_finite() const noexcept;

private:
    Grid2D grid_;
    RealBuffer values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double c, Field a);
Field abs(const Field& f);

/// Half-spectrum Fourier coefficients of a real field. Mode (i, j) is stored
/// for j in [0, ny/2]; the remaining modes follow from Hermitian symmetry.
class SpectralField {
public:
    explicit SpectralField(Grid2D grid);

    const Grid2D& grid() const noexcept { return grid_; }
    std::size_t stored_ny() const noexcept { return grid_.ny() / 2 + 1; }

    std::complex<double>& stored(std::size_t i, std::size_t j) noexcept { return coeffs_[i * stored_ny() + j]; }
    std::complex<double> stored(std::size_t i, std::size_t j) const noexcept { return coeffs_[i * stored_ny() + j]; }

    /// Coefficient of mode (i, j) for any j in [0, ny), reconstructed by
    /// conjugate symmetry when j > ny/2.
    std::complex<double> coefficient(std::size_t i, std::size_t j) const noexcept;

    /// Multiplicity of stored column j in the full spectrum (1 or 2).
    double column_weight(std::size_t j) const noexcept {
        return (j == 0 || 2 * j == grid_.ny()) ? 1.0 : 2.0;
    }

    std::span<std::complex<double>> coefficients() noexcept { return coeffs_; }
    std::span<const std::complex<double>> coefficients() const noexcept { return coeffs_; }
    std::complex<double>* data() noexcept { return coeffs_.data(); }
    const std::complex<double>* data() const noexcept { return coeffs_.data(); }

private:
    Grid2D grid_;
    ComplexBuffer coeffs_;
};

/// Pair (u, v) of fields on a shared grid.
struct Pair {
    Field u;
    Field v;

    Pair(Field u_, Field v_);
    const Grid2D& grid() const noexcept { return u.grid(); }

    Pair& operator+=(const Pair& o);
    Pair& operator*=(double c) noexcept;
    Pair& axpy(double c, const Pair& o);
    bool all_finite() const noexcept { return u.all_finite() && v.all_finite(); }
};

Pair operator*(double c, Pair p);
Pair zero_pair(const Grid2D& grid);

}  // namespace mixsch
