#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsch/errors.hpp"
#include "mixsch/nehari.hpp"
#include "mixsch/spectral.hpp"

using namespace mixsch;
using testutil::rel;

namespace {

Problem problem(double alpha, double beta, double kappa, std::size_t n = 64) {
    return Problem(ModelParams{0.5, 0.5, alpha, beta, kappa}, WeightFunction::annular_gaussian(1.0), make_grid(n, n, 30, 30));
}

Pair random_pair(const Grid2D& g, std::uint64_t seed) {
    return Pair(testutil::smooth_field(g, seed, false), testutil::smooth_field(g, seed + 50, false));
}

}  // namespace

TEST_SUITE("nehari") {

TEST_CASE("fiber map limits") {
    const ModelParams m{0.5, 0.5, 2, 2, 1};
    const FiberCoefficients c{2.0, 1.0, 0.5, 0.3};
    const FiberValues small = fiber_map(1e-4, c, m);
    CHECK(small.d1 > 0.0);
    CHECK(small.d1 < 1e-3);
    CHECK_THROWS_AS(fiber_map(0.0, c, m), std::invalid_argument);

    const FiberCoefficients quad{3.0, 0.0, 0.0, 0.0};
    CHECK(fiber_map(2.0, quad, m).psi == doctest::Approx(6.0));
    CHECK_THROWS_AS(fiber_root(quad, m), NoProjection);
    CHECK_THROWS_AS(fiber_root(FiberCoefficients{}, m), NoProjection);

    // derivatives against differences of psi
    const double t = 0.8, h = 1e-5;
    const FiberValues v = fiber_map(t, c, m);
    CHECK(rel(v.d1, (fiber_map(t + h, c, m).psi - fiber_map(t - h, c, m).psi) / (2 * h)) < 1e-7);
    CHECK(rel(v.d2, (fiber_map(t + h, c, m).d1 - fiber_map(t - h, c, m).d1) / (2 * h)) < 1e-7);
    CHECK(rel(v.d3, (fiber_map(t + h, c, m).d2 - fiber_map(t - h, c, m).d2) / (2 * h)) < 1e-6);
}

TEST_CASE("decoupled fiber root in closed form") {
    const ModelParams m{0.5, 0.5, 2, 2, 0};
    const FiberCoefficients c{2.0, 0.7, 0.0, 5.0};
    CHECK(rel(fiber_root(c, m), std::pow(2.0 / 0.7, 1.0 / (6.0 - 2.0))) < 1e-12);
}

TEST_CASE("decoupled projection matches the closed form") {
    const Problem prob = problem(2, 2, 0);
    const Field u = testutil::smooth_field(prob.grid, 3);
    const Pair p(u, Field(prob.grid, 0.0));
    double crit = 0.0;
    for (double x : u.values()) crit += std::pow(std::abs(x), 6.0);
    crit *= prob.grid.cell_area();
    const double expected = std::pow(sobolev_norm_sq(u, 0.5) / crit, 1.0 / 4.0);
    CHECK(rel(project_to_nehari(p, prob).eta, expected) < 1e-10);
}

TEST_CASE("projection lands on the manifold and maximizes the fiber") {
    for (auto [alpha, beta] : {std::pair{2.0, 2.0}, std::pair{3.0, 3.0}, std::pair{1.5, 2.5}}) {
        const Problem prob = problem(alpha, beta, 2.0);
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const Pair p = random_pair(prob.grid, seed);
            const Projection pr = project_to_nehari(p, prob);
            const double norm = energy(pr.scaled, prob).norm_sq();
            CHECK(std::abs(nehari_value(pr.scaled, prob)) < 1e-10 * norm);
            CHECK(fiber_map(pr.eta, pr.coefficients, prob.model).d2 < 0.0);

            // dense sampling of t -> J(t p): the best sample brackets eta
            double best_t = 0.0, best = -std::numeric_limits<double>::infinity();
            const int samples = 50;
            const double step = 3.0 * pr.eta / samples;
            for (int k = 1; k <= samples; ++k) {
                const double t = k * step;
                const double val = fiber_map(t, pr.coefficients, prob.model).psi;
                if (val > best) {
                    best = val;
                    best_t = t;
                }
            }
            CHECK(std::abs(best_t - pr.eta) <= step);
            CHECK(fiber_map(pr.eta, pr.coefficients, prob.model).psi >= best);
            CHECK(rel(fiber_map(pr.eta, pr.coefficients, prob.model).psi, energy(pr.scaled, prob).total) < 1e-10);

            // fixed point and scaling equivariance
            CHECK(std::abs(project_to_nehari(pr.scaled, prob).eta - 1.0) < 1e-8);
            CHECK(rel(project_to_nehari(2.5 * p, prob).eta, pr.eta / 2.5) < 1e-10);
        }
    }
}

TEST_CASE("on-manifold energy forms agree") {
    for (auto [alpha, beta] : {std::pair{2.0, 2.0}, std::pair{3.0, 3.0}}) {
        const Problem prob = problem(alpha, beta, 1.5);
        const Pair p = project_to_nehari(random_pair(prob.grid, 9), prob).scaled;
        const NehariForms f = energy_on_nehari_forms(p, prob);
        CHECK(rel(f.form24, f.direct) < 1e-8);
        CHECK(rel(f.form29, f.direct) < 1e-8);
        CHECK(f.direct > 0.0);
    }
    CHECK_THROWS_AS(energy_on_nehari_forms(random_pair(problem(2, 2, 1).grid, 1), problem(2, 2, 1)), std::invalid_argument);
}

TEST_CASE("decoupled level on the manifold") {
    const Problem prob = problem(2, 2, 0);
    const Pair p = project_to_nehari(Pair(testutil::smooth_field(prob.grid, 4), Field(prob.grid, 0.0)), prob).scaled;
    const EnergyBreakdown e = energy(p, prob);
    CHECK(rel(e.total, (0.5 / 1.5) * e.crit_u) < 1e-10);
}

TEST_CASE("critical coefficients in the second form vanish") {
    // With alpha + beta = 2_s the form reduces to (1/2 - 1/6) A1.
    const Problem prob = problem(3, 3, 1.0);
    const Pair p = project_to_nehari(random_pair(prob.grid, 5), prob).scaled;
    const EnergyBreakdown e = energy(p, prob);
    CHECK(rel(energy_on_nehari_forms(p, prob).form29, (0.5 - 1.0 / 6.0) * e.norm_sq()) < 1e-12);
}

TEST_CASE("manifold norm is bounded below") {
    // ||p||_D^2 on the manifold stays above a common positive floor.
    const Problem prob = problem(2, 2, 1.0);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Pair p = project_to_nehari(random_pair(prob.grid, 20 + seed), prob).scaled;
        const double n = energy(p, prob).norm_sq();
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    CHECK(lo > 0.1);
    CHECK(hi < 1e4);
}

}
