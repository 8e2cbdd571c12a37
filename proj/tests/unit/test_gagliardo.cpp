#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsch/gagliardo.hpp"
#include "mixsch/spectral.hpp"

using namespace mixsch;
using testutil::rel;

namespace {

Field bump(const Grid2D& g, double radius) {
    return Field::from_function(g, [=](double x, double y) {
        const double r2 = (x * x + y * y) / (radius * radius);
        return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
    });
}

}  // namespace

TEST_SUITE("gagliardo") {

TEST_CASE("zero field and quadratic scaling") {
    const Grid2D g = make_grid(32, 32, 30, 30);
    CHECK(gagliardo_seminorm_sq(Field(g, 0.0), 0.5) == 0.0);
    const Field f = bump(g, 5.0);
    const double one = gagliardo_seminorm_sq(f, 0.5);
    CHECK(rel(gagliardo_seminorm_sq(2.0 * f, 0.5), 4.0 * one) < 1e-12);
}

TEST_CASE("spectral seminorm agrees on a compact bump") {
    const Grid2D g = make_grid(64, 64, 30, 30);
    const Field f = bump(g, 5.0);
    for (double s : {0.5, 0.75}) CHECK(rel(gagliardo_seminorm_sq(f, s), fractional_seminorm_sq(f, s)) < 0.05);
    // Small orders need a wider box: the periodic symbol sum converges slowly.
    const Grid2D wide = make_grid(128, 128, 60, 60);
    const Field w = bump(wide, 5.0);
    CHECK(rel(gagliardo_seminorm_sq(w, 0.25), fractional_seminorm_sq(w, 0.25)) < 0.05);
}

TEST_CASE("fields reaching the boundary are rejected") {
    const Grid2D g = make_grid(32, 32, 10, 10);
    CHECK(boundary_ring_ratio(Field(g, 1.0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(gagliardo_seminorm_sq(Field(g, 1.0), 0.5), std::invalid_argument);
}

}
