#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mixsch/analysis.hpp"
#include "mixsch/errors.hpp"
#include "mixsch/nehari.hpp"
#include "mixsch/solver.hpp"
#include "mixsch/spectral.hpp"

using namespace mixsch;
using testutil::rel;

namespace {

Problem subcritical(double kappa, WeightFunction h = WeightFunction::annular_gaussian(1.0), std::size_t n = 64) {
    return Problem(ModelParams{0.5, 0.5, 2, 2, kappa}, h, make_grid(n, n, 20, 20));
}

Pair shifted(const Pair& p, std::size_t di, std::size_t dj) {
    const Grid2D& g = p.grid();
    Pair out = zero_pair(g);
    for (std::size_t i = 0; i < g.nx(); ++i)
        for (std::size_t j = 0; j < g.ny(); ++j) {
            out.u((i + di) % g.nx(), (j + dj) % g.ny()) = p.u(i, j);
            out.v((i + di) % g.nx(), (j + dj) % g.ny()) = p.v(i, j);
        }
    return out;
}

void check_postconditions(const SolveReport& r) {
    REQUIRE(r.converged);
    CHECK(r.nehari_residual < 1e-8 * r.norm_sq);
    CHECK(r.el_residual < 1e-5);
    CHECK(r.energy > 0.0);
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("option validation") {
    SolveOptions o;
    o.grad_tol = 0.0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = SolveOptions{};
    o.n_starts = 0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = SolveOptions{};
    o.step_rule = StepRule::fixed;
    o.fixed_step = -1.0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
}

TEST_CASE("residual helpers") {
    const Problem prob = subcritical(1.0);
    CHECK(euler_lagrange_residual(zero_pair(prob.grid), prob) == 0.0);
    const Pair p(testutil::smooth_field(prob.grid, 1), testutil::smooth_field(prob.grid, 2));
    const double el = euler_lagrange_residual(p, prob);
    CHECK(el > 0.0);
    const Pair g = gradient(p, prob);
    const double lu = l2_norm_sq(apply_mixed_operator(p.u, 0.5)) + l2_norm_sq(apply_mixed_operator(p.v, 0.5));
    CHECK(rel(el, std::sqrt((l2_norm_sq(g.u) + l2_norm_sq(g.v)) / lu)) < 1e-10);

    const Field centered = Field::from_function(prob.grid, [](double x, double y) { return std::exp(-(x * x + y * y)); });
    CHECK(outer_mass_fraction(centered) < 1e-12);
    CHECK(outer_mass_fraction(Field(prob.grid, 1.0)) == doctest::Approx(1.0 - 0.8 * 0.8).epsilon(0.05));
}

TEST_CASE("symmetrization") {
    const Problem prob = subcritical(2.0);
    const Pair pos(testutil::smooth_field(prob.grid, 3, false), testutil::smooth_field(prob.grid, 4, false));
    const Pair s = symmetrize(pos);
    CHECK((s.u - pos.u).max_abs() == 0.0);
    const Pair flipped = -1.0 * pos;
    const EnergyBreakdown a = energy(pos, prob);
    const EnergyBreakdown b = energy(flipped, prob);
    CHECK(rel(a.total, b.total) < 1e-14);
    CHECK(rel(a.coupling, b.coupling) < 1e-14);

    // On a smooth mixed-sign pair the modulus is not smooth, so the discrete
    // level need not drop; record the change rather than assert a sign.
    const Pair mixed(testutil::smooth_field(prob.grid, 5), testutil::smooth_field(prob.grid, 6));
    const double e0 = energy(project_to_nehari(mixed, prob).scaled, prob).total;
    const double e1 = energy(project_to_nehari(symmetrize(mixed), prob).scaled, prob).total;
    MESSAGE("symmetrized level change on a mixed-sign pair: " << (e1 - e0) / e0);
    CHECK(std::isfinite(e1));
}

TEST_CASE("subcritical solve meets its postconditions") {
    const Problem prob = subcritical(10.0);
    SolveOptions o;
    o.record_history = true;
    const SolveReport r = minimize_ground_state(initial_guess(prob.grid, 0, 0, false), prob, o);
    check_postconditions(r);
    CHECK(!r.semi_trivial);
    CHECK(std::abs(euler_lagrange_residual(r.pair, prob) - r.el_residual) < 1e-10);

    // accepted iterates never raise the energy beyond round-off
    REQUIRE(r.history.size() > 2);
    for (std::size_t k = 1; k < r.history.size(); ++k) {
        CHECK(r.history[k].energy <= r.history[k - 1].energy + 1e-12 * std::abs(r.history[k - 1].energy));
    }

    // restarting from the answer is immediate
    const SolveReport again = minimize_ground_state(r.pair, prob, o);
    CHECK(again.iterations <= 2);
    CHECK(rel(again.energy, r.energy) < 1e-10);
}

TEST_CASE("translation covariance with a constant weight") {
    const Problem prob = subcritical(1.0, WeightFunction::constant(1.0));
    SolveOptions o;
    o.symmetrize = false;
    const Pair init = initial_guess(prob.grid, 5, 0, false);
    const SolveReport a = minimize_ground_state(init, prob, o);
    const SolveReport b = minimize_ground_state(shifted(init, 7, 3), prob, o);
    check_postconditions(a);
    check_postconditions(b);
    CHECK(rel(a.energy, b.energy) < 1e-8);
    CHECK((shifted(a.pair, 7, 3).u - b.pair.u).max_abs() < 1e-5 * a.pair.u.max_abs());
}

TEST_CASE("radial solve stays radial") {
    const Problem prob = subcritical(10.0);
    SolveOptions o;
    o.radial = true;
    const SolveReport r = minimize_ground_state(initial_guess(prob.grid, 0, 1, true), prob, o);
    REQUIRE(r.converged);
    CHECK(r.radial_defect < 1e-4);
    CHECK(r.constrained_el_residual < 1e-5);
}

TEST_CASE("decoupled radial level equals the single-field Sobolev level") {
    // With v = 0 and no coupling the pair problem is the single critical
    // equation, whose Nehari level is (s/(1+s)) Lambda_r^{(1+s)/(2s)}.
    const Grid2D g = make_grid(64, 64, 20, 20);
    const Problem prob(ModelParams{0.5, 0.5, 3, 3, 0.0}, WeightFunction::annular_gaussian(1.0), g);
    SolveOptions o;
    o.radial = true;
    Pair init = initial_guess(g, 0, 0, true);
    init.v = Field(g, 0.0);
    const SolveReport r = minimize_ground_state(init, prob, o);
    REQUIRE(r.converged);
    CHECK(l2_norm_sq(r.pair.v) == 0.0);
    CHECK(r.semi_trivial);
    const SobolevEstimate lam = estimate_lambda(0.5, true, g, LambdaOptions{});
    CHECK(rel(r.energy, lam.threshold) < 1e-6);
}

TEST_CASE("multistart") {
    const Problem prob = subcritical(10.0);
    SolveOptions o;
    o.n_starts = 1;
    o.seed = 4;
    const MultistartResult one = multistart(prob, o);
    const SolveReport single = minimize_ground_state(initial_guess(prob.grid, 4, 0, false), prob, o);
    CHECK(one.best.energy == single.energy);
    CHECK(one.best.iterations == single.iterations);

    o.n_starts = 3;
    o.jobs = 2;
    const MultistartResult par = multistart(prob, o);
    o.jobs = 1;
    const MultistartResult seq = multistart(prob, o);
    CHECK(par.best.energy == seq.best.energy);
    CHECK(par.best.start_index == seq.best.start_index);
    for (const auto& r : seq.reports)
        if (r.converged) CHECK(r.energy >= seq.best.energy);

    o.max_iters = 1;
    CHECK_THROWS_AS(multistart(prob, o), AllFailed);
}

TEST_CASE("initial guesses are seeded and decay") {
    const Grid2D g = make_grid(64, 64, 20, 20);
    const Pair a = initial_guess(g, 3, 2, false);
    const Pair b = initial_guess(g, 3, 2, false);
    CHECK((a.u - b.u).max_abs() == 0.0);
    CHECK((a.u - initial_guess(g, 3, 1, false).u).max_abs() > 0.0);
    CHECK(outer_mass_fraction(a.u) < 1e-3);
    // wide starts reach the box edge, so only approximately in the fitted subspace
    CHECK(radial_defect(initial_guess(g, 3, 2, true).u, RadialProjector(g)) < 1e-5);
}

}
