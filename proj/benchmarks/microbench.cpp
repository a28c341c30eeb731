#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "qb/avdonin.hpp"
#include "qb/fourier.hpp"
#include "qb/gram.hpp"
#include "qb/nodeset.hpp"
#include "qb/qnum.hpp"
#include "qb/spectral.hpp"
#include "qb/spectrum.hpp"

using namespace qb;

namespace {

const Alpha& session_alpha() {
  static const Alpha a = Alpha::sqrt_of(mpq_class(2));
  return a;
}

const Spectrum& two_band() {
  static const Spectrum s = Spectrum::from_bands(
      {{QNum(0ll), QNum(1ll)}, {QNum(2ll), QNum(to_mpq(2), 1)}},
      session_alpha());
  return s;
}

}  // namespace

static void BM_Phi(benchmark::State& state) {
  const Alpha& a = session_alpha();
  const Spectrum& s = two_band();
  long long n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi(s, QNum(to_mpq(0), n), a));
    n = n % 4096 + 1;
  }
}
BENCHMARK(BM_Phi);

static void BM_QnumCompare(benchmark::State& state) {
  const Alpha& a = session_alpha();
  std::mt19937_64 rng(5);
  std::vector<QNum> xs;
  for (int i = 0; i < 256; ++i)
    xs.emplace_back(mpq_class(static_cast<long>(rng() % 2001) - 1000,
                              static_cast<long>(rng() % 97) + 1),
                    static_cast<long long>(rng() % 41) - 20);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnum_less(xs[i], xs[(i + 1) % xs.size()], a));
    i = (i + 1) % xs.size();
  }
}
BENCHMARK(BM_QnumCompare);

static void BM_PartitionEnumerate(benchmark::State& state) {
  const Alpha& a = session_alpha();
  const Spectrum& s = two_band();
  const long long half = state.range(0);
  for (auto _ : state) {
    NodeSet part = partition_enumerate(s, a, -half, half);
    benchmark::DoNotOptimize(part.values.data());
  }
  state.SetItemsProcessed(state.iterations() * (2 * half + 1));
}
BENCHMARK(BM_PartitionEnumerate)->RangeMultiplier(4)->Range(64, 4096);

static void BM_KernelEval(benchmark::State& state) {
  const SpectrumKernel k(two_band(), session_alpha());
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k(t));
    t += 0.37;
    if (t > 50.0) t -= 100.0;
  }
}
BENCHMARK(BM_KernelEval);

static void BM_GramAssembly(benchmark::State& state) {
  const Alpha& a = session_alpha();
  const Spectrum& s = two_band();
  const std::vector<QNum> nodes =
      window_values(s, a, state.range(0), LatticeSide::Primal);
  for (auto _ : state) {
    GramMatrix g = gram_from_values(nodes, s, a);
    benchmark::DoNotOptimize(g.data().data());
  }
  state.SetItemsProcessed(state.iterations() * nodes.size() * nodes.size());
}
BENCHMARK(BM_GramAssembly)->RangeMultiplier(2)->Range(5, 40);

static void BM_GramApply(benchmark::State& state) {
  const Alpha& a = session_alpha();
  const Spectrum& s = two_band();
  const std::vector<QNum> nodes = window_values(s, a, 25, LatticeSide::Primal);
  const GramMatrix g = gram_from_values(nodes, s, a);
  std::vector<std::complex<double>> x(g.dim(), {1.0, -0.5});
  std::vector<std::complex<double>> y(g.dim());
  for (auto _ : state) {
    g.apply(x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * g.dim() * g.dim());
}
BENCHMARK(BM_GramApply);

static void BM_MeanConditionScan(benchmark::State& state) {
  const Alpha& a = session_alpha();
  const Spectrum& s = two_band();
  const NodeSet part = partition_enumerate(s, a, -1500, 1900);
  const DeltaSeq ds = deltas(part, s.measure(), a);
  for (auto _ : state) {
    AvdoninReport rep =
        avdonin_mean_condition(ds, a, {100, 1000}, -2000, 2000, false);
    benchmark::DoNotOptimize(rep.sup_block_deviation);
  }
}
BENCHMARK(BM_MeanConditionScan);

BENCHMARK_MAIN();
