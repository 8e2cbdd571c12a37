#pragma once

namespace mixsch {

/// C(s) = 1 / integral over R of (1 - cos z) / |z|^{1+2s}, evaluated by
/// quadrature. Throws std::invalid_argument for s outside (0, 1) and
/// std::runtime_error when the quadrature misses 1e-10 relative accuracy.
double normalizing_constant_C(double s);

/// s 4^s Gamma(1/2 + s) / (sqrt(pi) Gamma(1 - s)); independent check on
/// normalizing_constant_C.
double normalizing_constant_closed_form(double s);

}  // namespace mixsch
