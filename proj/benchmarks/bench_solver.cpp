#include <benchmark/benchmark.h>

#include "wavode/decimal.hpp"
#include "wavode/oracle.hpp"
#include "wavode/problem.hpp"

using namespace wavode;

namespace {

void BM_CompileBeta(benchmark::State& state) {
    ODEOperator op = example_operator_1();
    for (auto _ : state) benchmark::DoNotOptimize(compute_beta(op));
}
BENCHMARK(BM_CompileBeta);

void BM_MatrixElements(benchmark::State& state) {
    BetaTable beta = compute_beta(example_operator_1());
    for (auto _ : state) {
        GaussianRational acc;
        for (long m = 0; m < 64; ++m)
            for (long n = 0; n < 64; ++n) acc += beta.matrix_element(m, n);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_MatrixElements);

void BM_BandExtension(benchmark::State& state) {
    BetaTable beta = compute_beta(example_operator_1());
    KernelBasis head = initial_basis(beta);
    const long N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(extend_recursion(head, beta, N));
    state.SetComplexityN(N);
}
BENCHMARK(BM_BandExtension)->Arg(100)->Arg(200)->Arg(400)->Complexity();

void BM_GramInit(benchmark::State& state) {
    BetaTable beta = compute_beta(example_operator_1());
    KernelBasis full = extend_recursion(initial_basis(beta), beta, state.range(0));
    std::vector<CoeffVector> ints;
    for (const auto& v : full.vectors) ints.push_back(integerize(v));
    WeightSpec spec;
    spec.N = state.range(0);
    spec.k0 = 2;
    spec.K = WeightSpec::default_K(spec.N, 2);
    spec.J = WeightSpec::default_J(spec.N, 2);
    Forms forms(spec);
    for (auto _ : state) benchmark::DoNotOptimize(gram_init(forms, ints));
}
BENCHMARK(BM_GramInit)->Arg(100)->Arg(200);

void BM_FullSolve(benchmark::State& state) {
    Problem p;
    p.op = example_operator_1();
    p.solver.N = state.range(0);
    p.solver.interleave_reduce_every = state.range(0) > 100 ? 25 : 0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_problem(p));
}
BENCHMARK(BM_FullSolve)->Arg(47)->Arg(99)->Arg(199)->Unit(benchmark::kMillisecond);

void BM_DecimalRender(benchmark::State& state) {
    BigRational v = make_rational(BigInt("123456789123456789"), BigInt("987654321987"));
    for (auto _ : state)
        benchmark::DoNotOptimize(decimal_render(v, BigRational(2), 100));
}
BENCHMARK(BM_DecimalRender);

}  // namespace

BENCHMARK_MAIN();
