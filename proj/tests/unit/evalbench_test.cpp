#include "simcrew/error.hpp"
#include "simcrew/evalbench/benchmark.hpp"
#include "simcrew/evalbench/params.hpp"
#include "simcrew/io.hpp"
#include "simcrew/siminput/task.hpp"
#include "simcrew/text.hpp"

#include "scenarios.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace simcrew;
using namespace simcrew::evalbench;
using namespace simcrew::testing;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::parse;
}

ParameterSet make_set(std::initializer_list<ParameterSlot> slots) {
  ParameterSet s;
  for (const auto& x : slots) s.add(x);
  return s;
}

const ParameterSet kRef = make_set({{"O", "epsilon", 53.0, "K"},
                                    {"O", "sigma", 3.3, "Å"},
                                    {"O", "charge", -0.393, "e"},
                                    {"Si|O_co2", "epsilon", 0.0, "K"}});

}  // namespace

// ---- parameter sets ----

TEST(Params, CanonicalKeys) {
  EXPECT_EQ(canonical_key(" O_CO2 "), "o_co2");
  EXPECT_EQ(canonical_key("O_co2|C_co2"), "c_co2|o_co2");
  EXPECT_EQ(canonical_key("Bond:O_co2-C_co2"), "bond:c_co2-o_co2");
  EXPECT_EQ(canonical_key("angle:O2-C-O1"), "angle:o1-c-o2");
  EXPECT_EQ(canonical_key("angle:O1-C-O2"), "angle:o1-c-o2");
  EXPECT_EQ(default_units("epsilon"), "K");
  EXPECT_EQ(default_units("bond-length"), "Å");
  EXPECT_EQ(default_units("other:k"), "");
}

TEST(Params, AddSetAndJson) {
  auto s = kRef;
  EXPECT_EQ(code_of([&] { s.add({"o", "epsilon", 1.0, "K"}); }), Errc::duplicate);
  EXPECT_EQ(code_of([&] { s.add({"x", "other:k", 1.0, ""}); }), Errc::precondition);
  s.set({"o", "epsilon", 60.0, "K"});
  EXPECT_DOUBLE_EQ(s.find("O", "epsilon")->value, 60.0);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(parameter_set_from_json(parameter_set_to_json(kRef)), kRef);
  auto d = parameter_set_from_json(nlohmann::json::parse(R"([{"key": "C", "name": "sigma", "value": 2.8}])"));
  EXPECT_EQ(d.find("c", "sigma")->units, "Å");
  EXPECT_EQ(code_of([] { parameter_set_from_json(nlohmann::json::parse(R"({"key": 1})")); }), Errc::format);
}

TEST(Params, LibraryBundleGivesReferenceSlots) {
  auto b = forcefield::load_bundle(fixture("library/Garcia-Sanchez-CO2"));
  auto r = score_parameters(parameter_set_from_bundle(b), reference_set("co2-silica-ff"));
  EXPECT_EQ(r.matched, 13);
  EXPECT_DOUBLE_EQ(r.iou, 1.0);
}

// ---- scoring ----

TEST(Score, HandCountedCases) {
  auto r = score_parameters(kRef, kRef);
  EXPECT_EQ(r.matched, 4);
  EXPECT_DOUBLE_EQ(r.iou, 1.0);

  auto missing = kRef;
  missing = make_set({{"O", "epsilon", 53.0, "K"}, {"O", "sigma", 3.3, "Å"}, {"O", "charge", -0.393, "e"}});
  r = score_parameters(missing, kRef);
  EXPECT_EQ(r.missed, 1);
  EXPECT_DOUBLE_EQ(r.iou, 3.0 / 4.0);

  auto off = kRef;
  off.set({"o", "sigma", 3.4, "Å"});
  off.add({"c", "sigma", 2.8, "Å"});
  r = score_parameters(off, kRef);
  EXPECT_EQ(r.wrong, 1);
  EXPECT_EQ(r.extra, 1);
  EXPECT_DOUBLE_EQ(r.iou, 3.0 / 5.0);

  auto units = kRef;
  units.set({"o", "epsilon", 53.0, "kJ/mol"});
  r = score_parameters(units, kRef);
  EXPECT_EQ(r.wrong, 1);
  ASSERT_EQ(r.details.size(), 1u);
  EXPECT_NE(r.details[0].find("kJ/mol"), std::string::npos);

  EXPECT_DOUBLE_EQ(score_parameters({}, {}).iou, 1.0);
  EXPECT_DOUBLE_EQ(score_parameters({}, kRef).iou, 0.0);
  EXPECT_EQ(code_of([] { score_parameters(kRef, kRef, 0.0); }), Errc::precondition);
}

TEST(Score, ToleranceIsRelativeAboveOneAndAbsoluteBelow) {
  auto at = [](double ref, double est) {
    return score_parameters(make_set({{"a", "epsilon", est, "K"}}), make_set({{"a", "epsilon", ref, "K"}})).matched;
  };
  EXPECT_EQ(at(100.0, 100.09), 1);
  EXPECT_EQ(at(100.0, 100.11), 0);
  EXPECT_EQ(at(0.0, 9e-4), 1);  // zero reference: absolute 1e-3
  EXPECT_EQ(at(0.0, 1.1e-3), 0);
  EXPECT_EQ(at(-0.393, -0.3925), 1);
}

TEST(Score, PropertiesOnRandomSets) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coin(0, 3);
  const char* names[] = {"epsilon", "sigma", "charge"};
  for (int trial = 0; trial < 300; ++trial) {
    ParameterSet a, b;
    for (int i = 0; i < 12; ++i) {
      ParameterSlot s{"t" + std::to_string(i / 3), names[i % 3], 1.0 + i, std::string(default_units(names[i % 3]))};
      int c = coin(rng);
      if (c != 0) a.add(s);
      if (c != 1) {
        if (coin(rng) == 0) s.value += 0.5;
        b.add(s);
      }
    }
    auto ab = score_parameters(a, b), ba = score_parameters(b, a);
    EXPECT_EQ(ab.missed, ba.extra);
    EXPECT_EQ(ab.extra, ba.missed);
    EXPECT_EQ(ab.wrong, ba.wrong);
    EXPECT_DOUBLE_EQ(ab.iou, ba.iou);
    EXPECT_EQ(ab.matched + ab.wrong + ab.missed, static_cast<int>(b.size()));
    EXPECT_EQ(ab.matched + ab.wrong + ab.extra, static_cast<int>(a.size()));
    EXPECT_GE(ab.iou, 0.0);
    EXPECT_LE(ab.iou, 1.0);
    EXPECT_EQ(ab.iou == 1.0, ab.missed == 0 && ab.wrong == 0 && ab.extra == 0);
  }
}

// ---- batch rates ----

TEST(BatchRates, Rows) {
  using simlint::OutcomeLabel;
  std::vector<OutcomeLabel> v(4, OutcomeLabel{true, true});
  v.push_back({false, false});
  auto r = batch_rates(v);
  EXPECT_EQ(r.success.num, 4);
  EXPECT_EQ(r.success.den, 5);
  EXPECT_DOUBLE_EQ(r.execution.value(), 0.8);
  std::vector<OutcomeLabel> w = {{false, true}, {false, true}, {true, true}};
  r = batch_rates(w);
  EXPECT_EQ(r.success.num, 1);
  EXPECT_EQ(r.execution.num, 3);
  EXPECT_EQ(code_of([] { batch_rates({}); }), Errc::precondition);
}

TEST(BatchRates, ExactCountsUpToAThousand) {
  std::mt19937 rng(11);
  std::bernoulli_distribution flip(0.7);
  for (int n = 1; n <= 1000; n += 37) {
    std::vector<simlint::OutcomeLabel> v;
    long ok = 0, ex = 0;
    for (int i = 0; i < n; ++i) {
      bool e = flip(rng);
      bool c = e && flip(rng);
      ok += c;
      ex += e;
      v.push_back({c, e});
    }
    auto r = batch_rates(v);
    EXPECT_EQ(r.success.num, ok);
    EXPECT_EQ(r.execution.num, ex);
    EXPECT_EQ(r.success.den, n);
    EXPECT_EQ(r.success.value(), static_cast<double>(ok) / n);
    EXPECT_LE(r.success.num, r.execution.num);
  }
}

// ---- suite ----

TEST(Suite, CommittedFixturesMatchBuilders) {
  for (const auto& t : bench_matrix()) {
    auto req = fixture("bench/requests/" + t.label + ".json");
    auto text = siminput::task_to_json(t.request).dump(2) + "\n";
    if (std::getenv("SIMCREW_UPDATE_FIXTURES")) io::write_file(req, text);
    EXPECT_EQ(io::read_file(req), text) << t.label;
    EXPECT_TRUE(matches_golden("bench_" + t.label, setup_clean(t.request).str())) << t.label;
  }
}

TEST(Suite, LoadsEntriesRelativeToFile) {
  auto s = load_suite(fixture("bench/suite.json"));
  ASSERT_EQ(s.entries.size(), 9u);
  EXPECT_EQ(s.entries[0].request, fixture("bench/requests/iso-methane-MFI.json"));
  EXPECT_EQ(s.entries[6].kind, EntryKind::research);
  EXPECT_EQ(s.entries[6].query, kCleanQuery);

  TempDir dir;
  io::write_file(dir / "a.json", R"({"tasks": [{"kind": "sweep"}]})");
  EXPECT_EQ(code_of([&] { load_suite(dir / "a.json"); }), Errc::config);
  io::write_file(dir / "b.json", "tasks:");
  EXPECT_EQ(code_of([&] { load_suite(dir / "b.json"); }), Errc::config);
}

class SuiteRun : public ::testing::Test {
 protected:
  Suite setup_only() {
    auto s = load_suite(fixture("bench/suite.json"));
    s.entries.resize(6);
    return s;
  }
  BenchmarkReport run(const Suite& s, const fs::path& scratch, int reps = 5) {
    BenchmarkOptions o;
    o.repetitions = reps;
    o.scratch = scratch;
    return run_benchmark(s, fixture_config(), replay_provider_factory(), &corpus_, o);
  }
  crews::FixtureCorpus corpus_{fixture("corpus")};
  TempDir dir_;
};

TEST_F(SuiteRun, CleanSetupMatrixIsAllSuccessful) {
  auto r = run(setup_only(), dir_ / "a");
  ASSERT_EQ(r.setup.size(), 6u);
  std::vector<std::pair<int, int>> shape;
  for (const auto& s : r.setup) {
    EXPECT_EQ(s.rates.success.num, 5) << s.label << ": " << s.failures[0];
    EXPECT_EQ(s.rates.execution.num, 5) << s.label;
    EXPECT_EQ(s.rates.success.den, 5);
    shape.push_back({s.adsorbates, s.structures});
  }
  EXPECT_EQ(shape, (std::vector<std::pair<int, int>>{{1, 1}, {1, 1}, {1, 3}, {3, 1}, {2, 2}, {1, 4}}));
  auto tables = render_tables(r);
  EXPECT_NE(tables.find("iso-methane-3fw"), std::string::npos);
  EXPECT_NE(tables.find("100%"), std::string::npos);
}

TEST_F(SuiteRun, OneMissingCifInFiveRepetitions) {
  auto s = setup_only();
  s.entries.resize(1);
  auto& e = s.entries[0];
  e.replays = {e.replays[0], e.replays[0], fixture("replays/setup_cif_omission.jsonl"), e.replays[0], e.replays[0]};
  auto r = run(s, dir_.path());
  const auto& row = r.setup.at(0);
  EXPECT_EQ(row.rates.success.num, 4);
  EXPECT_EQ(row.rates.execution.num, 4);
  EXPECT_DOUBLE_EQ(row.rates.success.value(), 0.8);
  EXPECT_FALSE(row.outcomes[2].executable);
  EXPECT_NE(row.failures[2].find("evaluator rejected"), std::string::npos);
  EXPECT_TRUE(row.failures[0].empty());
}

TEST_F(SuiteRun, MissingReplayFailsBeforeAnythingRuns) {
  auto s = setup_only();
  s.entries[3].replays = {dir_ / "nope.jsonl"};
  EXPECT_EQ(code_of([&] { run(s, dir_ / "scratch"); }), Errc::config);
  EXPECT_FALSE(fs::exists(dir_ / "scratch"));
  s.entries[3].replays.clear();
  EXPECT_EQ(code_of([&] { run(s, dir_ / "scratch"); }), Errc::config);
  EXPECT_FALSE(fs::exists(dir_ / "scratch"));
}

TEST_F(SuiteRun, ResultsAreByteIdenticalAcrossRuns) {
  auto s = load_suite(fixture("bench/suite.json"));
  auto a = run(s, dir_ / "a", 2), b = run(s, dir_ / "b", 2);
  write_results(a, dir_ / "out-a");
  write_results(b, dir_ / "out-b");
  EXPECT_EQ(io::read_file(dir_ / "out-a/results.jsonl"), io::read_file(dir_ / "out-b/results.jsonl"));
  EXPECT_EQ(io::read_file(dir_ / "out-a/tables.txt"), io::read_file(dir_ / "out-b/tables.txt"));
  // 9 entries x 2 repetitions, then one summary per entry
  EXPECT_EQ(text::split_lines(results_jsonl(a)).size(), 27u);
}

TEST_F(SuiteRun, ResearchScores) {
  auto s = load_suite(fixture("bench/suite.json"));
  s.entries.erase(s.entries.begin(), s.entries.begin() + 6);
  auto r = run(s, dir_.path(), 2);
  ASSERT_EQ(r.research.size(), 3u);
  EXPECT_DOUBLE_EQ(r.research[0].mean_iou, 1.0);
  EXPECT_DOUBLE_EQ(r.research[1].mean_wrong, 3.0);
  EXPECT_DOUBLE_EQ(r.research[1].mean_missed, 0.0);
  EXPECT_NEAR(r.research[1].mean_iou, 6.0 / 9.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.research[2].mean_iou, 1.0);
  auto tables = render_tables(r);
  EXPECT_NE(tables.find("co2-three-site"), std::string::npos);
  EXPECT_NE(tables.find("0.67"), std::string::npos);

  BenchmarkOptions o;
  o.scratch = dir_ / "x";
  EXPECT_EQ(code_of([&] { run_benchmark(s, fixture_config(), replay_provider_factory(), nullptr, o); }), Errc::config);
}
