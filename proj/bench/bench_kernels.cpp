#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "crspde/kernels.hpp"

namespace k = crspde::kernels;
using crspde::kernels::Complex;

namespace {

std::vector<Complex> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(d(rng), d(rng));
  return v;
}

struct Triple {
  explicit Triple(std::size_t n, std::uint64_t seed) {
    for (int j = 0; j < 3; ++j) v[j] = random_vector(n, seed + j);
  }
  k::ConstSpan3 view() const { return {v[0], v[1], v[2]}; }
  k::Span3 span() { return {v[0], v[1], v[2]}; }
  std::array<std::vector<Complex>, 3> v;
};

template <bool Parallel>
void BM_ScaleAlternating(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto data = random_vector(static_cast<std::size_t>(m) * m, 1);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::scale_alternating(data, m, 1.0);
    } else {
      k::serial::scale_alternating(data, m, 1.0);
    }
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * m * m);
}

template <bool Parallel>
void BM_FixedPointBracket(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const std::size_t n = static_cast<std::size_t>(m) * m;
  const Triple r(n, 10), g(n, 20);
  Triple out(n, 30);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::fixed_point_bracket(r.view(), g.view(), out.span());
    } else {
      k::serial::fixed_point_bracket(r.view(), g.view(), out.span());
    }
    benchmark::DoNotOptimize(out.v[0].data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool Parallel>
void BM_MaxShiftDifference(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto data = random_vector(static_cast<std::size_t>(m) * m, 2);
  for (auto _ : state) {
    double v;
    if constexpr (Parallel) {
      v = k::max_shift_difference(data, m, 4, -4);
    } else {
      v = k::serial::max_shift_difference(data, m, 4, -4);
    }
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * m * m);
}

}  // namespace

BENCHMARK(BM_ScaleAlternating<true>)->Name("scale_alternating/openmp")->Arg(256)->Arg(768)->UseRealTime();
BENCHMARK(BM_ScaleAlternating<false>)->Name("scale_alternating/serial")->Arg(256)->Arg(768)->UseRealTime();
BENCHMARK(BM_FixedPointBracket<true>)->Name("fixed_point_bracket/openmp")->Arg(256)->Arg(768)->UseRealTime();
BENCHMARK(BM_FixedPointBracket<false>)->Name("fixed_point_bracket/serial")->Arg(256)->Arg(768)->UseRealTime();
BENCHMARK(BM_MaxShiftDifference<true>)->Name("max_shift_difference/openmp")->Arg(256)->Arg(768)->UseRealTime();
BENCHMARK(BM_MaxShiftDifference<false>)->Name("max_shift_difference/serial")->Arg(256)->Arg(768)->UseRealTime();

BENCHMARK_MAIN();
