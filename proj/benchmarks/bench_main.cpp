#include <benchmark/benchmark.h>

#include <random>

#include "pgt/counting.hpp"
#include "pgt/nf/units.hpp"
#include "pgt/tauberian.hpp"

using namespace pgt;

namespace {

Spectrum random_spectrum(std::size_t rank, std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> len(0.01, 12.0), vol(0.1, 3.0), det(0.01, 0.99);
  std::vector<double> lengths(rank * n), flat(n), dets(n);
  for (auto& l : lengths) l = len(rng);
  for (auto& f : flat) f = vol(rng);
  for (auto& d : dets) d = det(rng);
  return Spectrum::from_columns(rank, std::move(lengths), std::move(flat), std::move(dets), {},
                                Provenance::kSynthetic);
}

void BM_Psi(benchmark::State& state) {
  const auto s = random_spectrum(2, static_cast<std::size_t>(state.range(0)));
  const CountQuery q{{8.0, 8.0}, BoundScale::kLog, 0, {}};
  for (auto _ : state) benchmark::DoNotOptimize(psi(s, q, static_cast<unsigned>(state.range(1))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Psi)->Args({100000, 1})->Args({1000000, 1})->Args({1000000, 4});

void BM_PhiJ(benchmark::State& state) {
  const auto s = random_spectrum(3, 200000);
  const CountQuery q{{8.0, 8.0, 8.0}, BoundScale::kLog, 2, {}};
  for (auto _ : state) benchmark::DoNotOptimize(phi_j(s, q));
}
BENCHMARK(BM_PhiJ);

void BM_EnumerateFields(benchmark::State& state) {
  nf::EnumerationOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(nf::enumerate_fields(state.range(0), {2, 3}, opt));
}
BENCHMARK(BM_EnumerateFields)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_UnitsInBox(benchmark::State& state) {
  auto r = nf::make_field_record({-1, -2, 1});
  const auto fu = nf::find_fundamental_units(r, 2);
  r.fundamental_units = {fu.units[0], fu.units[1]};
  r.R = fu.regulator;
  r.unit_status = fu.status;
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nf::enumerate_units_in_box(r, {T, T}));
}
BENCHMARK(BM_UnitsInBox)->Arg(10)->Arg(40);

void BM_MomentCheck(benchmark::State& state) {
  const auto kernel = make_kernel(KernelShape::kMollifierSquare, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(moment_check(kernel, 2, static_cast<double>(state.range(0))));
}
BENCHMARK(BM_MomentCheck)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_KernelBuild(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(make_kernel(KernelShape::kMollifierSquare, 1.0, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_KernelBuild)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
