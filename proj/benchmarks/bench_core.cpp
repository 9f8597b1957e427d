#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "vsharp/functor.hpp"
#include "vsharp/io.hpp"
#include "vsharp/root_data.hpp"
#include "vsharp/verify.hpp"

namespace {

const std::filesystem::path kData = VSHARP_DATA_DIR;
const char* const kKeys[] = {"q8", "q12", "c2xq8"};

vsharp::IrrepCatalog catalog(const std::string& key) { return vsharp::load_catalog(kData / "catalogs" / (key + ".json")); }

vsharp::FunctorInstance functor(const std::string& key) {
  const auto c = catalog(key);
  return vsharp::build_functor(c, vsharp::load_weights(kData / "weights" / (key + ".json"), c));
}

void BM_AllSubgroups(benchmark::State& state) {
  const auto g = vsharp::load_group(kData / "groups" / (std::string(kKeys[state.range(0)]) + ".json"));
  for (auto _ : state) benchmark::DoNotOptimize(vsharp::all_subgroups(g));
  state.SetLabel(kKeys[state.range(0)]);
}
BENCHMARK(BM_AllSubgroups)->DenseRange(0, 2);

void BM_BuildFunctor(benchmark::State& state) {
  const std::string key = kKeys[state.range(0)];
  const auto c = catalog(key);
  const auto w = vsharp::load_weights(kData / "weights" / (key + ".json"), c);
  for (auto _ : state) benchmark::DoNotOptimize(vsharp::build_functor(c, w));
  state.SetLabel(key);
}
BENCHMARK(BM_BuildFunctor)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const auto f = functor(kKeys[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(vsharp::verify(f));
  state.SetLabel(kKeys[state.range(0)]);
}
BENCHMARK(BM_Verify)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_CommutantDimension(benchmark::State& state) {
  const auto f = functor(kKeys[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(vsharp::commutant_dimension(f));
  state.SetLabel(kKeys[state.range(0)]);
}
BENCHMARK(BM_CommutantDimension)->DenseRange(0, 2);

}  // namespace

BENCHMARK_MAIN();
