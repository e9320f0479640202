#include <benchmark/benchmark.h>

#include "heatflow/exponents.hpp"
#include "heatflow/gronwall.hpp"
#include "heatflow/projection.hpp"
#include "heatflow/sampling.hpp"
#include "heatflow/solver.hpp"

using namespace heatflow;

namespace {

void BM_TransformRoundTrip(benchmark::State& state) {
    const int K = int(state.range(0));
    ScalarField f = sample_scalar(K, 1, 1.0);
    for (auto _ : state) {
        ScalarField back = from_grid_scalar(to_grid(f, 2 * K), K);
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(8)->Arg(16)->Arg(32);

void BM_LerayProjection(benchmark::State& state) {
    const int K = int(state.range(0));
    VelocityField u = sample_velocity(K, 2, 1.0);
    GridField g = to_grid(u, 2 * K);
    leray_project(g, K);  // warm the factor cache
    for (auto _ : state) {
        VelocityField p = leray_project(g, K);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_LerayProjection)->Arg(8)->Arg(16)->Arg(32);

void BM_RhsFull(benchmark::State& state) {
    const int K = int(state.range(0));
    VelocityField u = sample_velocity(K, 3, 1.0);
    ScalarField th = sample_scalar(K, 4, 1.0);
    ForcingLaw law = make_forcing_law("linear-buoyancy", 1.0);
    rhs_full(u, th, law);  // warm the table cache
    for (auto _ : state) {
        RhsValue r = rhs_full(u, th, law);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_RhsFull)->Arg(8)->Arg(16)->Arg(32);

void BM_EtdStep(benchmark::State& state) {
    const int K = int(state.range(0));
    DiagonalOperator opu(OperatorKind::StokesFreeSlip, K);
    DiagonalOperator opt(OperatorKind::TemperatureLaplacian, K);
    VelocityField u0 = normalize_to(opu, 0.5, 1e-2, sample_velocity(K, 5, 1.0));
    ScalarField th0 = normalize_to(opt, 0.5, 1e-2, sample_scalar(K, 6, 1.0));
    ForcingLaw law = make_forcing_law("linear-buoyancy", 1.0);
    for (auto _ : state) {
        Trajectory t = etd_march(u0, th0, law, TimeGrid{0.25, 16});
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_EtdStep)->Arg(8)->Arg(16);

void BM_VolterraOracle(benchmark::State& state) {
    GronwallSpec s;
    s.a = {{1.0, 0.5}};
    s.b = {{1.0, 0.5}};
    s.horizon = 1.0;
    const int nodes = int(state.range(0));
    for (auto _ : state) {
        auto y = volterra_oracle(s, nodes);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_VolterraOracle)->Arg(256)->Arg(1024)->Arg(4096);

void BM_PlanSearch(benchmark::State& state) {
    BaseExponents base{2, 2.0, 2.0, 0.5, 0.5};
    for (auto _ : state) {
        PlanOutcome out = plan_exponents(base);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_PlanSearch);

}  // namespace

BENCHMARK_MAIN();
