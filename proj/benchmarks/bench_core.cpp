#include <benchmark/benchmark.h>

#include <cmath>

#include "mixsch/energy.hpp"
#include "mixsch/nehari.hpp"
#include "mixsch/radial.hpp"
#include "mixsch/spectral.hpp"

using namespace mixsch;

namespace {

Field gaussian(const Grid2D& g, double w) {
    return Field::from_function(g, [=](double x, double y) { return std::exp(-(x * x + y * y) / (w * w)); });
}

Problem make_problem(std::size_t n) {
    return Problem(ModelParams{0.5, 0.5, 2, 2, 10}, WeightFunction::annular_gaussian(1.0), make_grid(n, n, 40, 40));
}

void BM_ForwardInverse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid2D g = make_grid(n, n, 40, 40);
    const Field f = gaussian(g, 2.0);
    for (auto _ : state) {
        Field back = inverse_transform(forward_transform(f));
        benchmark::DoNotOptimize(back.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_ForwardInverse)->Arg(64)->Arg(128)->Arg(256);

void BM_MixedOperator(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid2D g = make_grid(n, n, 40, 40);
    const Field f = gaussian(g, 2.0);
    for (auto _ : state) {
        Field out = apply_mixed_operator(f, 0.5);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_MixedOperator)->Arg(64)->Arg(128)->Arg(256);

void BM_EnergyAndGradient(benchmark::State& state) {
    const Problem prob = make_problem(static_cast<std::size_t>(state.range(0)));
    const Pair p(gaussian(prob.grid, 2.0), gaussian(prob.grid, 1.5));
    for (auto _ : state) {
        Evaluation ev = evaluate(p, prob);
        benchmark::DoNotOptimize(ev.energy.total);
    }
}
BENCHMARK(BM_EnergyAndGradient)->Arg(64)->Arg(128)->Arg(256);

void BM_NehariProjection(benchmark::State& state) {
    const Problem prob = make_problem(static_cast<std::size_t>(state.range(0)));
    const Pair p(gaussian(prob.grid, 2.0), gaussian(prob.grid, 1.5));
    for (auto _ : state) {
        Projection pr = project_to_nehari(p, prob);
        benchmark::DoNotOptimize(pr.eta);
    }
}
BENCHMARK(BM_NehariProjection)->Arg(64)->Arg(128)->Arg(256);

void BM_RadialProjectorBuild(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid2D g = make_grid(n, n, 40, 40);
    for (auto _ : state) {
        RadialProjector proj(g);
        benchmark::DoNotOptimize(proj.basis_size());
    }
}
BENCHMARK(BM_RadialProjectorBuild)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_RadialProjectorApply(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid2D g = make_grid(n, n, 40, 40);
    const RadialProjector proj(g);
    const Field f = gaussian(g, 2.0);
    for (auto _ : state) {
        Field out = proj.apply(f);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_RadialProjectorApply)->Arg(64)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
