#include <benchmark/benchmark.h>

#include "rmf/basis20.hpp"
#include "rmf/eisenstein.hpp"
#include "rmf/formula.hpp"
#include "rmf/oracle.hpp"
#include "rmf/qseries.hpp"

using namespace rmf;

static void SeriesMultiply(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const QSeries a = eisenstein_series({EisensteinKind::Even, 4, 1}, t);
  const QSeries b = eisenstein_series({EisensteinKind::Even, 6, 1}, t);
  for (auto _ : state) {
    QSeries c = a * b;
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SeriesMultiply)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void EtaExpand(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const EtaQuotientSpec spec = family_eta_spec(1, 40, 12);
  for (auto _ : state) {
    QSeries s = eta_expand(spec, t);
    benchmark::DoNotOptimize(s);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(EtaExpand)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void ThetaPower(benchmark::State& state) {
  for (auto _ : state) {
    QSeries s = theta_product_series(13, static_cast<int>(state.range(0)), 1, 101);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(ThetaPower)->DenseRange(2, 8, 2);

static void ConvolutionOracle(benchmark::State& state) {
  const FormSpec spec = FormSpec::theta_power(5, 6, 2);
  for (auto _ : state) {
    auto counts = repnum_convolution(spec, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(counts);
  }
}
BENCHMARK(ConvolutionOracle)->Arg(100)->Arg(400);

static void VerifyIdentity(benchmark::State& state) {
  const long p = state.range(0);
  for (auto _ : state) {
    FormulaReport r = verify_identity(p, 4, 2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(VerifyIdentity)->Arg(5)->Arg(13)->Unit(benchmark::kMillisecond);

// The basis itself is memoized, so this times expansion of the residual plus
// forward substitution against the cached basis.
static void Level20Decompose(benchmark::State& state) {
  const int weight = static_cast<int>(state.range(0));
  const Character chi = weight % 2 == 0 ? Character::trivial() : Character::chi_minus4();
  cusp_basis(weight, chi, 101);
  for (auto _ : state) {
    auto alpha = decompose(cusp_residual(5, weight, 1, 101), weight, chi);
    benchmark::DoNotOptimize(alpha);
  }
}
BENCHMARK(Level20Decompose)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void Level20FamilySeries(benchmark::State& state) {
  for (auto _ : state) {
    auto s = family_series(1, static_cast<int>(state.range(0)), 3, 101);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(Level20FamilySeries)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
