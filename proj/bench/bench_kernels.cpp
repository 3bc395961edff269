// Parallel kernels against their serial twins. With nproc = 1 the two should be close;
// the gap is the OpenMP overhead.

#include <benchmark/benchmark.h>

#include <random>

#include "gaf/bundle.hpp"
#include "gaf/composite.hpp"
#include "gaf/convolution.hpp"
#include "gaf/harness.hpp"
#include "gaf/kernels.hpp"

using namespace gaf;

namespace {

std::vector<cplx> noise(std::size_t n) {
  std::mt19937_64 g(7);
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {d(g), d(g)};
  return v;
}

CMat noise_matrix(int r, int c) {
  const auto v = noise(static_cast<std::size_t>(r * c));
  return Eigen::Map<const CMat>(v.data(), r, c);
}

GridFunction grid(std::size_t per_axis) {
  const int n = static_cast<int>(per_axis);
  std::vector<Axis> axes{uniform_axis(AxisKind::Translation, "A1", n, -8, 8),
                         uniform_axis(AxisKind::Diagonal, "u1", n, -8, 8),
                         uniform_axis(AxisKind::Nilpotent, "x12", n, -8, 8)};
  return GridFunction(axes, noise(per_axis * per_axis * per_axis));
}

template <bool Parallel>
void BM_contract(benchmark::State& state) {
  const std::size_t b = static_cast<std::size_t>(state.range(0)), outer = 64, trailing = 64;
  const auto in = noise(outer * b * trailing);
  const CMat m = noise_matrix(static_cast<int>(b), static_cast<int>(b));
  std::vector<cplx> out(in.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::contract(in, outer, trailing, m, out);
    else
      kernels::contract_serial(in, outer, trailing, m, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_apply_along(benchmark::State& state) {
  const GridFunction f = grid(static_cast<std::size_t>(state.range(0)));
  const Axis target = frequency_axis(AxisKind::FreqNilpotent, "xi12", static_cast<int>(state.range(0)), 8.0);
  const CMat m = noise_matrix(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    GridFunction r = Parallel ? kernels::apply_along(f, 1, m, target) : kernels::apply_along_serial(f, 1, m, target);
    benchmark::DoNotOptimize(r.values().data());
  }
}

template <bool Parallel>
void BM_weighted_norm2(benchmark::State& state) {
  const GridFunction f = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::weighted_norm2(f) : kernels::weighted_norm2_serial(f));
}

template <bool Parallel>
void BM_convolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HaarGrid rule = haar_grid(Chart(ChartKind::AffinePlus, 2, Ordering::KNA),
                                  {uniform_axis(AxisKind::Translation, "A1", n, -3, 3),
                                   uniform_axis(AxisKind::Translation, "A2", n, -3, 3),
                                   uniform_axis(AxisKind::Scale, "ut", n, -1, 1), uniform_axis(AxisKind::Diagonal, "u1", n, -1, 1),
                                   uniform_axis(AxisKind::Nilpotent, "x12", n, -2, 2), periodic_axis(AxisKind::Circle, "theta", n)});
  const GroupFunction f = [](const GroupElement& x) {
    return cplx(std::exp(-x.translation().squaredNorm() - (x.matrix() - Mat::Identity(2, 2)).squaredNorm()));
  };
  GroupSampler rng(3);
  const std::vector<GroupElement> points{rng.affine(2), rng.affine(2)};
  for (auto _ : state) {
    auto r = Parallel ? convolve(f, f, rule, points) : convolve_serial(f, f, rule, points);
    benchmark::DoNotOptimize(r.data());
  }
}

void BM_plancherel_ga(benchmark::State& state) {
  LevelGrid g = profile_config(state.range(0) ? "deep" : "default").grid;
  const TestFunctionBundle b = make_bundle("mixed", Level::GAPlus, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(plancherel_residual(g, b).residual);
}

}  // namespace

BENCHMARK(BM_contract<true>)->Arg(32)->Arg(128);
BENCHMARK(BM_contract<false>)->Arg(32)->Arg(128);
BENCHMARK(BM_apply_along<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_apply_along<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_weighted_norm2<true>)->Arg(64)->Arg(128);
BENCHMARK(BM_weighted_norm2<false>)->Arg(64)->Arg(128);
BENCHMARK(BM_convolve<true>)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve<false>)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_plancherel_ga)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
