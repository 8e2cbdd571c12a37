#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsch/gagliardo.hpp"
#include "mixsch/grid.hpp"
#include "mixsch/normalizing_constant.hpp"
#include "mixsch/spectral.hpp"

using namespace mixsch;
using testutil::rel;
constexpr double pi = std::numbers::pi;

TEST_SUITE("spectral") {

TEST_CASE("wavenumbers follow the DFT ordering") {
    const Grid2D g = make_grid(8, 8, 2 * pi, 2 * pi);
    const std::vector<double> unit{0, 1, 2, 3, -4, -3, -2, -1};
    for (std::size_t i = 0; i < 8; ++i) CHECK(g.k1()[i] == doctest::Approx(unit[i]).epsilon(1e-14));

    const Grid2D h = make_grid(8, 8, 4 * pi, 2 * pi);
    const std::vector<double> half{0, 0.5, 1.0, 1.5, -2.0, -1.5, -1.0, -0.5};
    for (std::size_t i = 0; i < 8; ++i) CHECK(h.k1()[i] == doctest::Approx(half[i]).epsilon(1e-14));
    CHECK(h.k2()[4] == doctest::Approx(-4.0));
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(make_grid(7, 8, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 6, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 8, 0, 1), std::invalid_argument);
    const Grid2D g = make_grid(16, 8, 4, 2);
    CHECK(g.cell_area() > 0);
    CHECK(g.x(8) == 0.0);
    CHECK(g.y(4) == 0.0);
    // every nonzero non-Nyquist mode has its negative partner
    for (std::size_t i = 1; i < 16; ++i) {
        if (i == 8) continue;
        CHECK(g.k1()[i] == doctest::Approx(-g.k1()[16 - i]));
    }
}

TEST_CASE("transform of simple fields") {
    const Grid2D g = make_grid(16, 16, 2 * pi, 3.0);
    const SpectralField zero = forward_transform(Field(g, 0.0));
    for (auto c : zero.coefficients()) CHECK(std::abs(c) == 0.0);

    const SpectralField one = forward_transform(Field(g, 1.0));
    CHECK(std::abs(one.stored(0, 0) - 1.0) < 1e-15);
    double rest = 0.0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < one.stored_ny(); ++j)
            if (i + j > 0) rest += std::abs(one.stored(i, j));
    CHECK(rest < 1e-14);

    const Field c = Field::from_function(g, [&](double, double y) { return std::cos(2 * pi * y / g.ly()); });
    const SpectralField C = forward_transform(c);
    int nonzero = 0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j)
            if (std::abs(C.coefficient(i, j)) > 1e-12) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("round trip and Parseval on random fields") {
    const Grid2D g = make_grid(32, 24, 5.0, 7.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Field f = testutil::noise_field(g, seed);
        const SpectralField F = forward_transform(f);
        const Field back = inverse_transform(F);
        CHECK((back - f).max_abs() < 1e-12 * f.max_abs());
        double coeff = 0.0;
        for (std::size_t i = 0; i < g.nx(); ++i)
            for (std::size_t j = 0; j < F.stored_ny(); ++j) coeff += F.column_weight(j) * std::norm(F.stored(i, j));
        CHECK(rel(l2_norm_sq(f), coeff * g.area()) < 1e-10);
    }
}

TEST_CASE("integrate") {
    CHECK(integrate(Field(make_grid(8, 8, 2 * pi, 2 * pi), 1.0)) == doctest::Approx(4 * pi * pi).epsilon(1e-14));
    CHECK(integrate(Field(make_grid(8, 8, 1, 1), 0.0)) == 0.0);
    auto gauss = [](double x, double y) { return std::exp(-(x * x + y * y)); };
    const double fine = integrate(Field::from_function(make_grid(256, 256, 40, 40), gauss));
    const double finer = integrate(Field::from_function(make_grid(512, 512, 40, 40), gauss));
    CHECK(rel(fine, pi) < 1e-8);
    CHECK(rel(fine, finer) < 1e-8);
}

TEST_CASE("fractional Laplacian symbol") {
    const Grid2D g = make_grid(16, 32, 6.0, 10.0);
    for (double s : {0.25, 0.5, 0.75}) {
        CHECK(apply_fractional_laplacian_y(Field(g, 3.0), s).max_abs() < 1e-13);
        for (int m = 1; m <= 16; ++m) {
            const double k = 2 * pi * m / g.ly();
            const Field f = Field::from_function(g, [&](double, double y) { return std::cos(k * y); });
            const Field out = apply_fractional_laplacian_y(f, s);
            CHECK((out - std::pow(k, 2 * s) * f).max_abs() < 1e-10 * std::pow(k, 2 * s));
        }
    }
    CHECK_THROWS_AS(apply_fractional_laplacian_y(Field(g, 1.0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_fractional_laplacian_y(Field(g, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("fractional Laplacian is symmetric and additive in the order on modes") {
    const Grid2D g = make_grid(24, 24, 8.0, 8.0);
    const Field f = testutil::noise_field(g, 1);
    const Field h = testutil::noise_field(g, 2);
    for (double s : {0.25, 0.6}) {
        const double a = inner_product(apply_fractional_laplacian_y(f, s), h);
        const double b = inner_product(f, apply_fractional_laplacian_y(h, s));
        CHECK(rel(a, b) < 1e-10);
    }
    for (int m = 1; m <= 11; ++m) {
        const Field c = Field::from_function(g, [&](double, double y) { return std::cos(2 * pi * m * y / g.ly()); });
        const Field twice = apply_fractional_laplacian_y(apply_fractional_laplacian_y(c, 0.3), 0.45);
        const Field once = apply_fractional_laplacian_y(c, 0.75);
        CHECK((twice - once).max_abs() < 1e-12 * once.max_abs());
    }
}

TEST_CASE("local and mixed operators") {
    const Grid2D g = make_grid(32, 16, 9.0, 4.0);
    const double k = 2 * pi / g.lx();
    const Field c = Field::from_function(g, [&](double x, double) { return std::cos(k * x); });
    CHECK((apply_dxx(c) - k * k * c).max_abs() < 1e-12);
    CHECK((apply_mixed_operator(Field(g, 1.0), 0.5) - Field(g, 1.0)).max_abs() < 1e-14);

    const Field f = testutil::smooth_field(make_grid(64, 64, 20, 20), 4);
    for (double s : {0.25, 0.75}) {
        CHECK(rel(inner_product(apply_mixed_operator(f, s), f), sobolev_norm_sq(f, s)) < 1e-10);
        CHECK((apply_inverse_mixed_operator(apply_mixed_operator(f, s), s) - f).max_abs() < 1e-12 * f.max_abs());
    }
}

TEST_CASE("Sobolev norm") {
    const Grid2D g = make_grid(16, 16, 2 * pi, 2 * pi);
    CHECK(sobolev_norm_sq(Field(g, 0.0), 0.5) == 0.0);
    const Field c = Field::from_function(g, [](double, double y) { return std::cos(y); });
    CHECK(sobolev_norm_sq(c, 0.5) == doctest::Approx(2 * 2 * pi * pi).epsilon(1e-12));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Field f = testutil::noise_field(g, seed);
        CHECK(sobolev_norm_sq(f, 0.3) >= l2_norm_sq(f));
    }
}

TEST_CASE("normalizing constant") {
    CHECK(normalizing_constant_C(0.5) == doctest::Approx(1 / pi).epsilon(1e-10));
    for (double s : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        const double c = normalizing_constant_C(s);
        CHECK(c > 0.0);
        CHECK(rel(c, normalizing_constant_closed_form(s)) < 1e-8);
    }
    CHECK_THROWS_AS(normalizing_constant_C(1.0), std::invalid_argument);
}

TEST_CASE("Gaussian fractional Laplacian against the real-space quadrature") {
    // Long y extent keeps the zero-extension tail of the quadrature small.
    const Grid2D g = make_grid(32, 256, 20, 80);
    const Field f = Field::from_function(g, [](double x, double y) { return std::exp(-(x * x + y * y) / 4); });
    const Field a = apply_fractional_laplacian_y(f, 0.5);
    const Field b = gagliardo_apply(f, 0.5);
    CHECK(std::sqrt(l2_norm_sq(a - b) / l2_norm_sq(a)) < 0.02);
}

}
