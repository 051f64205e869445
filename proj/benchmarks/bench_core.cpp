#include <benchmark/benchmark.h>

#include "cohgram/closure.hpp"
#include "cohgram/edm.hpp"
#include "cohgram/generators.hpp"
#include "cohgram/membership.hpp"

using namespace cohgram;

namespace {

void BM_GramOfEnsemble(benchmark::State& state) {
    const CoherentEnsemble e =
        random_ensemble({1, static_cast<Index>(state.range(0)), 4, 1.0});
    for (auto _ : state) benchmark::DoNotOptimize(gram_of_ensemble(e));
}
BENCHMARK(BM_GramOfEnsemble)->Arg(8)->Arg(32)->Arg(128);

void BM_HadamardLog(benchmark::State& state) {
    const GramMatrix p = gram_of_ensemble(
        random_ensemble({2, static_cast<Index>(state.range(0)), 2, 0.6}));
    for (auto _ : state) benchmark::DoNotOptimize(hadamard_log(p.mat));
}
BENCHMARK(BM_HadamardLog)->Arg(16)->Arg(64);

void BM_MembershipEquiangular(benchmark::State& state) {
    const GramMatrix p = equiangular_gram(state.range(0), 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_membership(p, {}, 1ull << 62));
}
BENCHMARK(BM_MembershipEquiangular)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_MembershipRandomMember(benchmark::State& state) {
    const GramMatrix p = gram_of_ensemble(
        random_ensemble({7, static_cast<Index>(state.range(0)), 4, 2.0}));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_membership(p, {}, 1ull << 62));
}
BENCHMARK(BM_MembershipRandomMember)->Arg(3)->Arg(4)->Arg(5);

void BM_MembershipCounterexample(benchmark::State& state) {
    const GramMatrix p = equiangular_gram(state.range(0), -1.0 / (state.range(0) - 1.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_membership(p, {}, 1ull << 62));
}
BENCHMARK(BM_MembershipCounterexample)->Arg(3)->Arg(4);

void BM_IsEdm(benchmark::State& state) {
    const EdmCandidate d = random_edm(5, state.range(0), 3, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(is_edm(d));
}
BENCHMARK(BM_IsEdm)->Arg(16)->Arg(64);

void BM_EdmPoints(benchmark::State& state) {
    const EdmCandidate d = random_edm(6, state.range(0), 3, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(edm_points(d));
}
BENCHMARK(BM_EdmPoints)->Arg(16)->Arg(64);

void BM_ClosureBlockDiagonal(benchmark::State& state) {
    const Index half = state.range(0) / 2;
    ComplexMatrix m = ComplexMatrix::Zero(2 * half, 2 * half);
    m.topLeftCorner(half, half) =
        gram_of_ensemble(random_ensemble({11, half, 2, 1.0})).mat;
    m.bottomRightCorner(half, half) =
        gram_of_ensemble(random_ensemble({12, half, 2, 1.0})).mat;
    const GramMatrix p = GramMatrix::unchecked(std::move(m));
    ClosureOptions opts;
    opts.max_candidates = 1ull << 62;
    for (auto _ : state)
        benchmark::DoNotOptimize(check_closure_membership(p, {}, opts));
}
BENCHMARK(BM_ClosureBlockDiagonal)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
