#include <benchmark/benchmark.h>

#include <numbers>

#include "kravchuk/basis.hpp"
#include "kravchuk/evolution.hpp"
#include "kravchuk/operators.hpp"
#include "kravchuk/transform.hpp"
#include "kravchuk/tridiagonal.hpp"

using namespace kravchuk;

static void BM_make_basis(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(make_basis(grid));
}
BENCHMARK(BM_make_basis)->Arg(64)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_expm_tridiagonal(benchmark::State& state) {
    const auto A = make_transform_generator(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(expm_tridiagonal(A, Complex(0.0, -std::numbers::pi / 4)));
}
BENCHMARK(BM_expm_tridiagonal)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_build_L_factored(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_L_factored(grid));
}
BENCHMARK(BM_build_L_factored)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_apply_Hh(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const auto H = make_hamiltonian(grid);
    const auto u = phi_h(make_basis(grid), 3);
    for (auto _ : state) benchmark::DoNotOptimize(apply_Hh(H, u));
}
BENCHMARK(BM_apply_Hh)->Arg(512)->Arg(4096);

static void BM_eigenvalues_ql(benchmark::State& state) {
    const auto H = make_hamiltonian(Grid(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_ql(H.matrix));
}
BENCHMARK(BM_eigenvalues_ql)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_propagate_synthesize(benchmark::State& state) {
    const Grid grid(static_cast<int>(state.range(0)));
    const auto basis = make_basis(grid);
    const auto s = analyze(basis, phi_h(basis, 2));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize(basis, propagate(s, t)));
        t += 0.1;
    }
}
BENCHMARK(BM_propagate_synthesize)->Arg(100)->Arg(512);

BENCHMARK_MAIN();
