#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsch/errors.hpp"
#include "mixsch/nehari.hpp"
#include "mixsch/pohozaev.hpp"

using namespace mixsch;
using testutil::rel;

namespace {

Problem critical(WeightFunction h, double kappa = 2.0, std::size_t n = 64) {
    return Problem(ModelParams{0.5, 0.5, 3, 3, kappa}, h, make_grid(n, n, 20, 20));
}

Pair random_pair(const Grid2D& g, std::uint64_t seed) {
    return Pair(testutil::smooth_field(g, seed), testutil::smooth_field(g, seed + 1));
}

// Node map (i, j) -> (ti(i), tj(j)) applied to both components.
template <class Fi, class Fj>
Pair remap(const Pair& p, Fi ti, Fj tj) {
    const Grid2D& g = p.grid();
    Pair out = zero_pair(g);
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            out.u(ti(i), tj(j)) = p.u(i, j);
            out.v(ti(i), tj(j)) = p.v(i, j);
        }
    return out;
}

}  // namespace

TEST_SUITE("pohozaev") {

TEST_CASE("zero pair has zero residuals") {
    const Problem prob = critical(WeightFunction::annular_gaussian(1.0));
    const PohozaevReport r = pohozaev_residuals(zero_pair(prob.grid), prob);
    CHECK(r.r61 == 0.0);
    CHECK(r.r62 == 0.0);
    CHECK(r.r622 == 0.0);
    CHECK(relative_residual(0.0, 0.0) == 0.0);
    CHECK(relative_residual(1.0, 2.0) == doctest::Approx(0.5));
}

TEST_CASE("regime gate") {
    const Problem sub(ModelParams{0.5, 0.5, 2, 2, 1}, WeightFunction::constant(1.0), make_grid(32, 32, 20, 20));
    CHECK_THROWS_AS(pohozaev_residuals(zero_pair(sub.grid), sub), RegimeMismatch);
    CHECK_THROWS_AS(nonexistence_probe(sub, ProbeOptions{}), RegimeMismatch);
}

TEST_CASE("second identity is the Nehari identity at critical exponents") {
    for (const auto& h : {WeightFunction::annular_gaussian(1.0), WeightFunction::bump(), WeightFunction::constant(1.0)}) {
        const Problem prob = critical(h, 3.0);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const Pair p = project_to_nehari(random_pair(prob.grid, 10 * seed), prob).scaled;
            CHECK(pohozaev_residuals(p, prob).r62 < 1e-10);
        }
    }
}

TEST_CASE("sign lemma under the radial hypothesis") {
    const Problem prob = critical(WeightFunction::bump(), 1.0);
    REQUIRE(radial_hypothesis_sign(prob.weight, prob.grid, 1.0).holds);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const PohozaevReport r = pohozaev_residuals(random_pair(prob.grid, 3 * seed), prob);
        CHECK(r.rhs622 <= 1e-12);
        CHECK(r.lhs622 - r.rhs622 > 0.0);
    }
    const Problem flat = critical(WeightFunction::constant(1.0), 1.0);
    CHECK(pohozaev_residuals(random_pair(flat.grid, 1), flat).rhs622 == 0.0);
}

TEST_CASE("residuals respect grid symmetries") {
    // Moments are box-centered, so with a constant weight any grid translation
    // is a symmetry and with a radial weight the reflections through the origin
    // node are.
    const Problem flat = critical(WeightFunction::constant(1.0));
    const Pair p = random_pair(flat.grid, 7);
    const std::size_t n = flat.grid.nx();
    const PohozaevReport a = pohozaev_residuals(p, flat);
    const PohozaevReport b = pohozaev_residuals(remap(p, [&](std::size_t i) { return (i + 5) % n; }, [&](std::size_t j) { return (j + 11) % n; }), flat);
    CHECK(std::abs(a.r61 - b.r61) < 1e-8);
    CHECK(std::abs(a.r62 - b.r62) < 1e-8);
    CHECK(std::abs(a.r622 - b.r622) < 1e-8);

    const Problem ring = critical(WeightFunction::annular_gaussian(1.0));
    const Pair q = random_pair(ring.grid, 9);
    const PohozaevReport c = pohozaev_residuals(q, ring);
    const PohozaevReport d = pohozaev_residuals(remap(q, [&](std::size_t i) { return (n - i) % n; }, [](std::size_t j) { return j; }), ring);
    const PohozaevReport e = pohozaev_residuals(remap(q, [](std::size_t i) { return i; }, [&](std::size_t j) { return (n - j) % n; }), ring);
    for (const auto* r : {&d, &e}) {
        CHECK(std::abs(c.r61 - r->r61) < 1e-8);
        CHECK(std::abs(c.r62 - r->r62) < 1e-8);
        CHECK(std::abs(c.r622 - r->r622) < 1e-8);
    }
}

TEST_CASE("moment diagnostics") {
    const Problem prob = critical(WeightFunction::annular_gaussian(1.0));
    const Field centered = Field::from_function(prob.grid, [](double x, double y) { return std::exp(-(x * x + y * y)); });
    const PohozaevReport r = pohozaev_residuals(Pair(centered, centered), prob);
    CHECK(r.moment_ok);
    CHECK(r.moment_xu == doctest::Approx(r.moment_yv));
    const PohozaevReport wide = pohozaev_residuals(Pair(Field(prob.grid, 1.0), centered), prob);
    CHECK(!wide.moment_ok);
}

TEST_CASE("probe declines when the hypothesis fails") {
    const Problem prob = critical(WeightFunction::annular_gaussian(1.0), 1.0, 32);
    const NonexistenceReport r = nonexistence_probe(prob, ProbeOptions{});
    CHECK(!r.hypothesis_holds);
    CHECK(r.gate == "declined");
    CHECK(r.candidates.empty());
    CHECK(!r.sign.violations.empty());
}

TEST_CASE("probe with a constant weight flags every candidate") {
    const Problem prob = critical(WeightFunction::constant(1.0), 1.0, 48);
    ProbeOptions po;
    po.solve.n_starts = 2;
    const NonexistenceReport r = nonexistence_probe(prob, po);
    CHECK(r.hypothesis_holds);
    CHECK(r.gate == "constant");
    REQUIRE(!r.candidates.empty());
    CHECK(r.max_rhs622 == 0.0);
    CHECK(r.all_inconsistent);
    for (const auto& c : r.candidates) CHECK(rel(c.gap, c.mass) < 1e-14);
}

}
