#include <benchmark/benchmark.h>

#include <cmath>

#include "madelung/kg.hpp"
#include "madelung/limits.hpp"
#include "madelung/quadrature.hpp"
#include "madelung/spatial.hpp"
#include "madelung/temporal.hpp"

namespace {

using namespace madelung;

void BM_SolveSpatial(benchmark::State& state) {
    const double t_val = std::pow(10.0, -static_cast<double>(state.range(0)));
    SpatialSolveInput in;
    in.constants = {1.0, 1.0, t_val};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_spatial(in));
    }
}
BENCHMARK(BM_SolveSpatial)->Arg(1)->Arg(2)->Arg(4);

void BM_SolveTemporal(benchmark::State& state) {
    const double t_val = std::pow(10.0, -static_cast<double>(state.range(0)));
    TemporalSolveInput in;
    in.constants = {1.0, 1.0, t_val};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_temporal(in));
    }
}
BENCHMARK(BM_SolveTemporal)->Arg(1)->Arg(2)->Arg(4);

void BM_KgResidual(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ProductState ps =
        build_product_state(sinc_limit(1.0, 1.0), cos_limit(-2.0, 1.0, 1.0), n, n, {1.0, 1.0, 0.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(kg_residual(ps));
    }
}
BENCHMARK(BM_KgResidual)->Arg(257)->Arg(513);

void BM_Quadrature(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const GridFunction f =
        make_uniform_grid(0.0, 2.2, n, [](double r) { return std::exp(-r * r); });
    for (auto _ : state) {
        benchmark::DoNotOptimize(quadrature(f, Weight::RadialBall));
    }
}
BENCHMARK(BM_Quadrature)->Arg(4096)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
