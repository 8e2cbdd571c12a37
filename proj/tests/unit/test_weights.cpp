#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsch/weights.hpp"

using namespace mixsch;
using testutil::rel;

namespace {

// Centered difference with a step small enough for 1e-6 relative accuracy on
// these closed forms.
void check_partials(const WeightFunction& w, double extent, std::uint64_t seed) {
    StreamRng rng(seed, "tests.weights");
    const double h = 1e-5;
    int checked = 0;
    while (checked < 100) {
        const double x = rng.uniform(-extent, extent);
        const double y = rng.uniform(-extent, extent);
        const double r = std::hypot(x, y);
        if (w.kind() == WeightKind::bump && (r > 0.97 || r < 1e-3)) continue;
        const double fx = (w.value(x + h, y) - w.value(x - h, y)) / (2 * h);
        const double fy = (w.value(x, y + h) - w.value(x, y - h)) / (2 * h);
        const double scale = std::max({std::abs(w.dx(x, y)), std::abs(w.dy(x, y)), 1e-3 * w.value(x, y), 1e-12});
        CHECK(std::abs(fx - w.dx(x, y)) < 1e-6 * scale);
        CHECK(std::abs(fy - w.dy(x, y)) < 1e-6 * scale);
        ++checked;
    }
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("closed-form values") {
    const auto b = WeightFunction::bump();
    CHECK(b.value(0, 0) == doctest::Approx(std::exp(-1.0)));
    CHECK(b.value(1, 0) == 0.0);
    CHECK(b.value(0.3, 2) == 0.0);
    CHECK(0.5 * b.dx(0.5, 0) < 0.0);

    const auto ie = WeightFunction::inverse_exponential();
    CHECK(ie.value(0, 0) == doctest::Approx(std::numbers::e));
    CHECK(ie.value(1e4, -1e4) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(ie.dx(1, 1) < 0.0);

    const auto ag = WeightFunction::annular_gaussian(2.0);
    CHECK(ag.value(0, 0) == 0.0);
    const double rmax = 1 / std::sqrt(2.0);
    CHECK(ag.value(rmax, 0) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-14));
    CHECK(ag.value(rmax * 1.01, 0) < ag.value(rmax, 0));
    CHECK(ag.value(rmax * 0.99, 0) < ag.value(rmax, 0));

    CHECK(WeightFunction::constant(2.5).value(3, -7) == 2.5);
    CHECK_THROWS_AS(WeightFunction::annular_gaussian(0.0), std::invalid_argument);
    CHECK_THROWS_AS(WeightFunction::constant(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_kind("gaussian"), std::invalid_argument);
}

TEST_CASE("analytic partials match finite differences") {
    check_partials(WeightFunction::bump(), 1.0, 1);
    check_partials(WeightFunction::inverse_exponential(), 4.0, 2);
    check_partials(WeightFunction::annular_gaussian(1.0), 3.0, 3);
}

TEST_CASE("radial kinds are rotation invariant") {
    for (const auto& w : {WeightFunction::bump(), WeightFunction::inverse_exponential(), WeightFunction::annular_gaussian(0.7)}) {
        for (double r : {0.2, 0.6, 1.5}) {
            for (double t : {0.3, 1.1, 2.5}) {
                CHECK(std::abs(w.value(r * std::cos(t), r * std::sin(t)) - w.value(r, 0.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("tabulated weight interpolates its samples") {
    const Grid2D g = make_grid(32, 32, 10, 10);
    const auto exact = WeightFunction::annular_gaussian(1.0);
    const Field table = sample_weight(exact, g).h;
    const auto tab = WeightFunction::tabulated(table);
    CHECK(!tab.is_radial());
    CHECK(tab.value(g.x(20), g.y(9)) == doctest::Approx(table(20, 9)).epsilon(1e-12));
    // between nodes the bicubic interpolant stays close to the source
    CHECK(std::abs(tab.value(0.8, 0.3) - exact.value(0.8, 0.3)) < 1e-2);
    Field negative(g, -1.0);
    CHECK_THROWS_AS(WeightFunction::tabulated(negative), std::invalid_argument);
}

TEST_CASE("condition validators") {
    const Grid2D g = make_grid(64, 64, 20, 20);
    const auto one = WeightFunction::constant(1.0);
    CHECK(validate_13(one, g).pass);
    const auto h1 = validate_H1(one, g);
    CHECK(!h1.pass);
    CHECK(h1.failed_clause == "h(0,0) = 0");

    const auto ag = WeightFunction::annular_gaussian(1.0);
    CHECK(validate_13(ag, g).pass);
    CHECK(validate_H1(ag, g).pass);

    const auto zero = validate_13(WeightFunction::constant(0.0), g);
    CHECK(!zero.pass);
    CHECK(zero.failed_clause == "h is not zero");
}

TEST_CASE("radial sign hypothesis") {
    const Grid2D g = make_grid(64, 64, 20, 20);
    CHECK(radial_hypothesis_sign(WeightFunction::bump(), g, 1.0).holds);
    const auto ag = radial_hypothesis_sign(WeightFunction::annular_gaussian(1.0), g, 1.0);
    CHECK(!ag.holds);
    REQUIRE(!ag.violations.empty());
    // the worst offenders sit inside the maximum radius, where h grows outward
    CHECK(std::hypot(ag.violations.front().x, ag.violations.front().y) < 1.0);
    CHECK(radial_hypothesis_sign(WeightFunction::annular_gaussian(1.0), g, 0.0).holds);
    CHECK(radial_hypothesis_sign(WeightFunction::inverse_exponential(), g, 0.0).holds);
    // a negative coupling flips the requirement
    CHECK(!radial_hypothesis_sign(WeightFunction::bump(), g, -1.0).holds);
}

}
