#pragma once

#include <memory>

#include "mixsch/field.hpp"

namespace mixsch {

/// Orthogonal projection (in the discrete L^2 inner product) onto grid
/// functions of r = sqrt(x^2 + y^2) that are even polynomials of bounded
/// degree in r. Nodes sharing a radius are averaged first, then a weighted
/// least-squares fit in even Chebyshev polynomials T_2k(r / r_max) is
/// re-sampled at every node. Being an orthogonal projection it is idempotent
/// and self-adjoint.
class RadialProjector {
public:
    explicit RadialProjector(const Grid2D& grid);
    ~RadialProjector();
    RadialProjector(RadialProjector&&) noexcept;
    RadialProjector& operator=(RadialProjector&&) noexcept;

    Field apply(const Field& f) const;
    Pair apply(const Pair& p) const;

    const Grid2D& grid() const noexcept;
    std::size_t basis_size() const noexcept;
    std::size_t radius_count() const noexcept;

private:
    struct Impl;
    std::unique_ptr<const Impl> impl_;
};

/// Inverse of the rotation-invariant symbol 1 + |k|^2/2 + a_s |k|^{2s},
/// a_s = Gamma(s + 1/2) / (sqrt(pi) Gamma(s + 1)) the angular mean of
/// |sin theta|^{2s}. On radial functions its quadratic form coincides with that
/// of the mixed operator, and unlike the mixed operator's inverse it maps
/// radial functions to radial functions, so it is the preconditioner used for
/// radially constrained descent.
Field apply_isotropic_inverse(const Field& f, double s);

/// Convenience wrapper building a projector for f's grid.
Field radial_project(const Field& f);

/// ||f - P f|| / ||f|| (0 for f = 0).
double radial_defect(const Field& f, const RadialProjector& proj);

}  // namespace mixsch
