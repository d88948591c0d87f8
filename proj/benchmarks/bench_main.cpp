#include <benchmark/benchmark.h>

#include <hopfdual/duality.hpp>

using namespace hopfdual;

namespace {

CMatrix random_hermitian(Rng& rng, int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.complex_box();
    return (m + m.adjoint()) * cplx(0.5);
}

void BM_hermitian_eig(benchmark::State& state) {
    Rng rng(1);
    const CMatrix H = random_hermitian(rng, int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(H));
}
BENCHMARK(BM_hermitian_eig)->Arg(16)->Arg(32)->Arg(64);

void BM_wedderburn_group_algebra(benchmark::State& state) {
    const FiniteGroup G = symmetric_group(int(state.range(0)));
    const FinStarAlgebra A = group_star_algebra(G);
    for (auto _ : state) benchmark::DoNotOptimize(wedderburn_blocks(A, kDefaultSeed));
}
BENCHMARK(BM_wedderburn_group_algebra)->Arg(3)->Arg(4);

void BM_dualize_function_side(benchmark::State& state) {
    const HopfPtr M = function_algebra(symmetric_group(int(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(dualize(M, kDefaultSeed));
}
BENCHMARK(BM_dualize_function_side)->Arg(3)->Arg(4);

void BM_dualize_groupvn_side(benchmark::State& state) {
    const HopfPtr M = group_vn_algebra(symmetric_group(3), kDefaultSeed);
    for (auto _ : state) benchmark::DoNotOptimize(dualize(M, kDefaultSeed));
}
BENCHMARK(BM_dualize_groupvn_side);

void BM_is_reflexive_q8(benchmark::State& state) {
    const HopfPtr M = function_algebra(quaternion_group());
    for (auto _ : state) benchmark::DoNotOptimize(is_reflexive(M, kDefaultSeed));
}
BENCHMARK(BM_is_reflexive_q8);

void BM_build_generator(benchmark::State& state) {
    const HopfPtr M = function_algebra(symmetric_group(3));
    const PredualPtr P = build_predual(M);
    StarRep pi;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, kDefaultSeed))
        if (r.degree == 2) pi = lift_rep(P, r);
    for (auto _ : state) benchmark::DoNotOptimize(build_generator(pi));
}
BENCHMARK(BM_build_generator);

} // namespace

BENCHMARK_MAIN();
