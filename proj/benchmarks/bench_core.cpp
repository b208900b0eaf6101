#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qsn/base_change.hpp"
#include "qsn/complex_pair.hpp"
#include "qsn/gauge.hpp"
#include "qsn/numeral.hpp"
#include "qsn/random.hpp"
#include "qsn/sequence.hpp"

namespace {

using namespace qsn;

BasisNumeral dense_numeral(int base, int len, int salt) {
  std::vector<std::uint32_t> digits;
  digits.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i)
    digits.push_back(static_cast<std::uint32_t>((i * 7 + salt) % base));
  if (digits.back() == 0) digits.back() = 1;
  return BasisNumeral(base, salt % 2 == 1, std::move(digits), -(len / 2));
}

void BM_Add(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const BasisNumeral a = dense_numeral(10, len, 3);
  const BasisNumeral b = dense_numeral(10, len, 5);
  for (auto _ : state) benchmark::DoNotOptimize(arith_add(a, b));
}
BENCHMARK(BM_Add)->Arg(8)->Arg(32)->Arg(128);

void BM_Mul(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const BasisNumeral a = dense_numeral(10, len, 3);
  const BasisNumeral b = dense_numeral(10, len, 5);
  for (auto _ : state) benchmark::DoNotOptimize(arith_mul(a, b));
}
BENCHMARK(BM_Mul)->Arg(8)->Arg(32)->Arg(128);

void BM_Div(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const BasisNumeral a = dense_numeral(10, len, 3);
  const BasisNumeral b = dense_numeral(10, len / 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(arith_div(a, b, 16));
}
BENCHMARK(BM_Div)->Arg(8)->Arg(32)->Arg(128);

void BM_DecodeEncode(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const BasisNumeral a = dense_numeral(10, len, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(encode_rational(decode_rational(a), 10));
}
BENCHMARK(BM_DecodeEncode)->Arg(8)->Arg(32)->Arg(128);

void BM_ConvertExact(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  const BasisNumeral a = dense_numeral(2, len, 3);
  for (auto _ : state) benchmark::DoNotOptimize(convert_exact(a, 16));
}
BENCHMARK(BM_ConvertExact)->Arg(8)->Arg(32)->Arg(128);

void BM_ApplyGauge(benchmark::State& state) {
  DeterministicRng rng(7);
  GaugeField u(3, "bench");
  u.set_column(0, random_unitary(rng, 3));
  u.set_column(-1, random_unitary(rng, 3));
  u.set_column(-2, random_unitary(rng, 3));
  const FockState s = seq_from_spec("psiex1:3:1").at(6);
  for (auto _ : state) benchmark::DoNotOptimize(apply_gauge(u, s));
}
BENCHMARK(BM_ApplyGauge);

void BM_CauchyGrid(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const StateSequence s = seq_from_spec("psiex1:10:3");
    benchmark::DoNotOptimize(cauchy_report(s, N, N / 2, 1e-9));
  }
}
BENCHMARK(BM_CauchyGrid)->Arg(8)->Arg(16)->Arg(32);

void BM_Compare(benchmark::State& state) {
  for (auto _ : state) {
    const StateSequence a = seq_from_spec("stream:10:1/3");
    const StateSequence b = seq_from_spec("stream:10:1/7");
    benchmark::DoNotOptimize(asymptotic_compare(a, b, 32, 16, 1e-9));
  }
}
BENCHMARK(BM_Compare);

void BM_ComplexMul(benchmark::State& state) {
  const ComplexBasisPair a(dense_numeral(10, 32, 3), dense_numeral(10, 32, 5));
  const ComplexBasisPair b(dense_numeral(10, 32, 7), dense_numeral(10, 32, 9));
  for (auto _ : state)
    benchmark::DoNotOptimize(complex_arith(OpKind::mul(), a, b));
}
BENCHMARK(BM_ComplexMul);

void BM_ComplexDiv(benchmark::State& state) {
  const ComplexBasisPair a(dense_numeral(10, 32, 3), dense_numeral(10, 32, 5));
  const ComplexBasisPair b(dense_numeral(10, 32, 7), dense_numeral(10, 32, 9));
  for (auto _ : state)
    benchmark::DoNotOptimize(complex_arith(OpKind::div(16), a, b));
}
BENCHMARK(BM_ComplexDiv);

}  // namespace

BENCHMARK_MAIN();
