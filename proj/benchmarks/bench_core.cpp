#include <array>
#include <complex>

#include <benchmark/benchmark.h>

#include <polyfock/fock_spaces.hpp>
#include <polyfock/hermite_basis.hpp>
#include <polyfock/laguerre.hpp>
#include <polyfock/quadrature.hpp>
#include <polyfock/toeplitz.hpp>

namespace {

using namespace polyfock;

void BM_LaguerreFunction(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(laguerre_function(m, 3, x));
    x = x < 100.0 ? x + 0.25 : 0.5;
  }
}
BENCHMARK(BM_LaguerreFunction)->Arg(10)->Arg(100)->Arg(1000);

void BM_BasisEval(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const std::complex<double> z(0.7, -1.3);
  for (auto _ : state) benchmark::DoNotOptimize(b_eval({p, p / 2}, z));
}
BENCHMARK(BM_BasisEval)->Arg(4)->Arg(64);

void BM_ExactBasis(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(b_coeffs({p, p}));
}
BENCHMARK(BM_ExactBasis)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_PiecewiseRule(benchmark::State& state) {
  const std::array<double, 1> cut{2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lebesgue_rule(cut, static_cast<int>(state.range(0)), 4.0));
  }
}
BENCHMARK(BM_PiecewiseRule)->Arg(16)->Arg(32);

void BM_KernelClosedForm(benchmark::State& state) {
  const SpaceId space{SpaceKind::poly, static_cast<int>(state.range(0))};
  const std::complex<double> z(0.3, 0.4);
  const std::complex<double> w(-1.0, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(space, z, w));
}
BENCHMARK(BM_KernelClosedForm)->Arg(1)->Arg(8);

void BM_KernelPartialSum(benchmark::State& state) {
  const SpaceId space{SpaceKind::poly, 3};
  const std::complex<double> z(0.3, 0.4);
  const std::complex<double> w(-1.0, 0.2);
  const int truncation = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_partial_sum(space, z, w, truncation));
}
BENCHMARK(BM_KernelPartialSum)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_Beta(benchmark::State& state) {
  const RadialSymbol a = state.range(0) == 0 ? symbol_exp_decay() : symbol_indicator(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(beta(a, 5, 1, 2));
}
BENCHMARK(BM_Beta)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_LambdaSeq(benchmark::State& state) {
  const RadialSymbol a = symbol_indicator(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_seq(a, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LambdaSeq)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ToeplitzMatrix(benchmark::State& state) {
  const RadialSymbol a = symbol_exp_decay();
  const SpaceId space{SpaceKind::poly, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(toeplitz_matrix(a, space, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_ToeplitzMatrix)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
