#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mixsch/field.hpp"

namespace mixsch {

enum class WeightKind { constant, bump, inverse_exponential, annular_gaussian, tabulated };

/// Coefficient h(x, y) with its first partial derivatives.
class WeightFunction {
public:
    static WeightFunction constant(double c);
    /// exp(-1/(1 - r^2)) on the unit disk, 0 outside.
    static WeightFunction bump();
    /// exp(1/(1 + r^2)).
    static WeightFunction inverse_exponential();
    /// r^2 exp(-a r^2), a > 0.
    static WeightFunction annular_gaussian(double a);
    /// Periodic bicubic interpolant of sampled values; derivatives by centered
    /// differences with step 1e-5 min(dx, dy).
    static WeightFunction tabulated(const Field& samples);

    double value(double x, double y) const;
    double dx(double x, double y) const;
    double dy(double x, double y) const;

    WeightKind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return param_; }
    bool is_radial() const noexcept { return kind_ != WeightKind::tabulated; }
    bool is_constant() const noexcept { return kind_ == WeightKind::constant; }
    std::string name() const;

private:
    WeightFunction(WeightKind kind, double param) : kind_(kind), param_(param) {}
    WeightKind kind_;
    double param_;
    std::shared_ptr<const Field> table_;
};

WeightKind parse_weight_kind(const std::string& name);

/// h, h_x, h_y sampled at the grid nodes.
struct SampledWeight {
    Field h;
    Field hx;
    Field hy;
};

SampledWeight sample_weight(const WeightFunction& w, const Grid2D& grid);

struct WeightReport {
    bool pass = true;
    std::string failed_clause;  ///< empty when pass
    std::string detail;
};

/// Nonnegativity, finite maximum, and a positive finite integral.
WeightReport validate_13(const WeightFunction& w, const Grid2D& grid);
/// validate_13 plus smallness at the origin and on the boundary ring, both
/// relative to max h with tolerance tol.
WeightReport validate_H1(const WeightFunction& w, const Grid2D& grid, double tol = 1e-6);

struct SignViolation {
    double x;
    double y;
    double value;  ///< the offending -kappa x h_x or -kappa y h_y
};

struct RadialSignReport {
    bool holds = true;
    double min_x_term = 0.0;  ///< min over nodes of -kappa x h_x
    double min_y_term = 0.0;  ///< min over nodes of -kappa y h_y
    std::vector<SignViolation> violations;  ///< up to 16 worst nodes
};

/// Checks kappa x h_x <= 0 and kappa y h_y <= 0 at every node with slack 1e-12.
RadialSignReport radial_hypothesis_sign(const WeightFunction& w, const Grid2D& grid, double kappa);

}  // namespace mixsch
