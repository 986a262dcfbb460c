#include <benchmark/benchmark.h>

#include "petersson/geom_side.hpp"
#include "petersson/local_gsp4.hpp"
#include "petersson/measure.hpp"
#include "petersson/padic_cartan.hpp"

using namespace petersson;

namespace {

void BM_LocalIntegralOracle(benchmark::State& st) {
  const LocalSpec s{static_cast<long>(st.range(0)), 4, 2};
  const DiagData d{2, 2, HalfIntegralSymMat::binary(3, 1, 5)};
  for (auto _ : st) benchmark::DoNotOptimize(local_integral_oracle(s, d).value);
}
BENCHMARK(BM_LocalIntegralOracle)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_LocalIntegralExplicit(benchmark::State& st) {
  const LocalSpec s{7, 6, 3};
  const DiagData d{3, 3, HalfIntegralSymMat::binary(3, 1, 5)};
  for (auto _ : st) benchmark::DoNotOptimize(local_integral_explicit(s, d));
}
BENCHMARK(BM_LocalIntegralExplicit);

void BM_EnumerateA(benchmark::State& st) {
  const auto s = HalfIntegralSymMat::binary(2, 1, 3);
  const Int r = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_A(s, s, r));
}
BENCHMARK(BM_EnumerateA)->Arg(1)->Arg(25)->Arg(625)->Arg(15625);

void BM_WeylCharacter(benchmark::State& st) {
  const Coweight lam({st.range(0), 0, st.range(0) / 2});
  for (auto _ : st) benchmark::DoNotOptimize(weyl_character(lam));
}
BENCHMARK(BM_WeylCharacter)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_ClassifyCoset(benchmark::State& st) {
  const IntMat g =
      random_integral_symplectic(2, 1, 12) * lambda_matrix(Coweight({4, 0, 1}), 5) * random_integral_symplectic(2, 2, 12);
  for (auto _ : st) benchmark::DoNotOptimize(classify_coset(g, 5));
}
BENCHMARK(BM_ClassifyCoset);

}  // namespace
BENCHMARK_MAIN();
