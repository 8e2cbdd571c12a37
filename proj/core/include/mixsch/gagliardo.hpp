#pragma once

#include "mixsch/field.hpp"

namespace mixsch {

/// Real-space evaluation of the y-direction Gagliardo seminorm
///   (C(s)/2) * int dx int int |f(x,y) - f(x,z)|^2 / |y - z|^{1+2s} dy dz
/// by an O(nx ny^2) node quadrature. The y = z cell is skipped, and f is taken
/// to vanish outside the box; that exterior piece is added in closed form.
///
/// Rejects fields whose outer node ring exceeds 1e-6 max|f|, since the
/// periodic and zero-extended pictures then disagree.
double gagliardo_seminorm_sq(const Field& f, double s);

/// Matching real-space application C(s) PV int (f(x,y) - f(x,z)) / |y-z|^{1+2s} dz,
/// same quadrature and validation as gagliardo_seminorm_sq. Pointwise values are
/// more sensitive to the skipped cell than the seminorm, so its leading-order
/// content is restored from a second difference in y.
Field gagliardo_apply(const Field& f, double s);

/// max |f| over the outermost node ring divided by max |f| (0 for f = 0).
double boundary_ring_ratio(const Field& f);

}  // namespace mixsch
