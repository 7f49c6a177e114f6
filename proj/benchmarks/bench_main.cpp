// Hot paths of the setup pipeline. Inputs come from the same seeded
// generators the property tests use.

#include "simcrew/chemio/geometry.hpp"
#include "simcrew/chemio/structure.hpp"
#include "simcrew/evalbench/params.hpp"
#include "simcrew/forcefield/library.hpp"
#include "simcrew/io.hpp"
#include "simcrew/siminput/plan.hpp"
#include "simcrew/siminput/spec.hpp"

#include "generators.hpp"
#include "test_support.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace simcrew;
using simcrew::testing::fixture;

static void BM_ParseCif(benchmark::State& state) {
  auto text = io::read_file(fixture("structures/MFI.cif"));
  for (auto _ : state) benchmark::DoNotOptimize(chemio::parse_cif(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseCif);

static void BM_Replication(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<chemio::LatticeParameters> cells;
  for (int i = 0; i < 256; ++i) cells.push_back(testing::random_lattice(rng, 3.0, 45.0, 55.0, 125.0));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chemio::replication_for_cutoff(cells[i++ % cells.size()], 12.0));
}
BENCHMARK(BM_Replication);

static void BM_PlanBatch(benchmark::State& state) {
  testing::TempDir dir("simcrew-bench");
  auto ch4 = forcefield::load_bundle(fixture("library/Dubbeldam-CH4"));
  auto co2 = forcefield::load_bundle(fixture("library/Garcia-Sanchez-CO2"));
  auto co = forcefield::load_bundle(fixture("library/Martin-Calero-CO"));
  auto bundle = forcefield::combine_force_fields(ch4, {co2, co}).bundle;
  forcefield::render_bundle(bundle, dir / "ff");
  std::mt19937_64 rng(2);
  std::vector<siminput::StructureSource> structures;
  for (int i = 0; i < state.range(0); ++i) {
    auto s = testing::random_structure(rng, "S" + std::to_string(i), 8, false);
    structures.push_back({s, dir / (s.name + ".cif")});
  }
  siminput::TaskRequest task;
  task.adsorbates = {"methane", "CO2", "CO"};
  task.pressures = {1e5};
  task.structure_glob = "*";
  for (auto _ : state) {
    auto plans = siminput::plan_batch(task, structures, task.adsorbates, bundle, dir / "ff");
    benchmark::DoNotOptimize(plans.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_PlanBatch)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_ScoreParameters(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(1.0, 300.0);
  evalbench::ParameterSet ref, ext;
  for (int i = 0; i < state.range(0); ++i) {
    auto key = "t" + std::to_string(i);
    double x = v(rng);
    ref.add({key, "epsilon", x, "K"});
    ext.add({key, "epsilon", i % 5 ? x : x * 1.1, "K"});
  }
  for (auto _ : state) benchmark::DoNotOptimize(evalbench::score_parameters(ext, ref));
}
BENCHMARK(BM_ScoreParameters)->Arg(16)->Arg(1024);

static void BM_SimulationInputRoundTrip(benchmark::State& state) {
  std::mt19937 rng(4);
  std::vector<std::string> texts;
  for (int i = 0; i < 64; ++i) texts.push_back(siminput::render_simulation_input(testing::random_spec(rng, i)));
  std::size_t i = 0;
  for (auto _ : state) {
    auto spec = siminput::parse_simulation_input(texts[i++ % texts.size()]);
    benchmark::DoNotOptimize(siminput::render_simulation_input(spec));
  }
}
BENCHMARK(BM_SimulationInputRoundTrip);
BENCHMARK_MAIN();
