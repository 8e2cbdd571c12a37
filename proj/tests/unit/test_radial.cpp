#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsch/radial.hpp"
#include "mixsch/spectral.hpp"

using namespace mixsch;
using testutil::rel;

TEST_SUITE("radial") {

TEST_CASE("radial Gaussian is left unchanged") {
    const Grid2D g = make_grid(64, 64, 20, 20);
    const RadialProjector proj(g);
    const Field f = Field::from_function(g, [](double x, double y) { return std::exp(-(x * x + y * y) / 3); });
    CHECK((proj.apply(f) - f).max_abs() < 1e-6);
    CHECK(radial_defect(f, proj) < 1e-6);
    CHECK(radial_defect(Field(g, 0.0), proj) == 0.0);
}

TEST_CASE("angular harmonics are removed") {
    const Grid2D g = make_grid(64, 64, 20, 20);
    const Field f = Field::from_function(g, [](double x, double y) { return x * std::exp(-(x * x + y * y) / 4); });
    CHECK(radial_project(f).max_abs() < 1e-10 * f.max_abs());
    const Field q = Field::from_function(g, [](double x, double y) { return (x * x - y * y) * std::exp(-(x * x + y * y) / 4); });
    CHECK(radial_project(q).max_abs() < 1e-10 * q.max_abs());
}

TEST_CASE("projection is idempotent and self-adjoint") {
    const Grid2D g = make_grid(48, 48, 16, 16);
    const RadialProjector proj(g);
    CHECK(proj.basis_size() > 4);
    CHECK(proj.radius_count() > proj.basis_size());
    const Field f = testutil::noise_field(g, 3);
    const Field h = testutil::noise_field(g, 4);
    const Field pf = proj.apply(f);
    CHECK((proj.apply(pf) - pf).max_abs() < 1e-12 * pf.max_abs());
    CHECK(rel(inner_product(pf, h), inner_product(f, proj.apply(h))) < 1e-10);
    // orthogonal projection never increases the norm
    CHECK(l2_norm_sq(pf) <= l2_norm_sq(f));
}

TEST_CASE("isotropic preconditioner keeps radial functions radial") {
    // Both the preconditioner defect and the quadratic-form gap come from the
    // |k|^{2s} kink at k = 0 and shrink as the box grows at fixed spacing.
    double prev_defect = 1.0, prev_gap = 1.0;
    for (auto [n, box] : {std::pair{128, 40.0}, std::pair{256, 80.0}}) {
        const Grid2D g = make_grid(n, n, box, box);
        const RadialProjector proj(g);
        const Field f = Field::from_function(g, [](double x, double y) { return std::exp(-(x * x + y * y) / 4); });
        const SpectralField F = forward_transform(f);
        const double defect = radial_defect(apply_isotropic_inverse(f, 0.5), proj);
        CHECK(defect < 0.5 * prev_defect);
        CHECK(defect < 1e-3);
        // the mixed-operator inverse does not keep radial functions radial
        CHECK(radial_defect(apply_inverse_mixed_operator(f, 0.5), proj) > 1e-2);

        const double s = 0.5;
        const double a = std::tgamma(s + 0.5) / (std::sqrt(std::numbers::pi) * std::tgamma(s + 1.0));
        const double iso = spectral_quadratic_form(F, [&](double k1, double k2) {
            const double kk = k1 * k1 + k2 * k2;
            return 1.0 + kk / 2.0 + a * std::pow(kk, s);
        });
        const double gap = rel(iso, sobolev_norm_sq(f, s));
        CHECK(gap < 0.5 * prev_gap);
        CHECK(gap < 2e-3);
        prev_defect = defect;
        prev_gap = gap;
    }
}

}
