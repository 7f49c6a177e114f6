// Acceptance checks: one PASS/FAIL line per criterion with its measured value,
// tolerance and runtime budget. Exit status is the number of failures.
//
// usage: acceptance [--suite <test binary>...]
// The listed binaries are the fixture-mode test executables timed by
// criterion 8.

#include "simcrew/agentcore/react.hpp"
#include "simcrew/chemio/geometry.hpp"
#include "simcrew/chemio/structure.hpp"
#include "simcrew/crews/teams.hpp"
#include "simcrew/evalbench/benchmark.hpp"
#include "simcrew/evalbench/params.hpp"
#include "simcrew/forcefield/files.hpp"
#include "simcrew/forcefield/library.hpp"
#include "simcrew/io.hpp"
#include "simcrew/text.hpp"
#include "simcrew/siminput/plan.hpp"
#include "simcrew/simlint/lint.hpp"

#include "fault_fixtures.hpp"
#include "generators.hpp"
#include "scenarios.hpp"

#include <fmt/core.h>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

using namespace simcrew;
using namespace simcrew::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_ms, const std::function<Verdict()>& body) {
  auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, fmt::format("exception: {}", e.what())};
  }
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  bool in_time = ms < budget_ms;
  bool ok = v.pass && in_time;
  failures += ok ? 0 : 1;
  std::cout << fmt::format("{} {} {}: {} [{:.0f} ms, limit {:.0f} ms{}]", ok ? "PASS" : "FAIL", id, name, v.detail, ms,
                           budget_ms, in_time ? "" : ", over budget")
            << std::endl;
}

// ---- 1: parameter scoring ----

Verdict metric_scoring() {
  constexpr double kTol = 1e-3;
  auto ref = reference_set("co2-three-site");
  auto swapped = evalbench::score_parameters(rotated_epsilons(ref), ref);
  bool ok = swapped.missed == 0 && swapped.wrong == 3 && std::abs(swapped.iou - 0.667) <= kTol;
  std::string detail = fmt::format("transposed table: missed {} wrong {} iou {:.4f} (want 0/3/0.667 +- {})",
                                   swapped.missed, swapped.wrong, swapped.iou, kTol);
  for (const auto* name : {"co2-three-site", "co2-silica-ff"}) {
    auto r = reference_set(name);
    auto clean = evalbench::score_parameters(r, r);
    ok = ok && clean.missed == 0 && clean.wrong == 0 && clean.iou == 1.0;
  }
  auto bundle = forcefield::load_bundle(fixture("library/Garcia-Sanchez-CO2"));
  auto lib = evalbench::score_parameters(evalbench::parameter_set_from_bundle(bundle), reference_set("co2-silica-ff"));
  ok = ok && lib.missed == 0 && lib.wrong == 0 && lib.iou == 1.0;
  return {ok, detail + fmt::format("; clean fixtures 0/0/{:.2f}", lib.iou)};
}

// ---- 2: batch rates ----

Verdict metric_rates() {
  using simlint::OutcomeLabel;
  struct Row {
    std::vector<OutcomeLabel> outcomes;
    long success, execution;
  };
  std::vector<OutcomeLabel> all(5, {true, true});
  auto one_config = all, one_exec = all;
  one_config[4] = {false, true};
  one_exec[4] = {false, false};
  std::vector<Row> rows = {{all, 5, 5}, {one_config, 4, 5}, {one_exec, 4, 4}};
  bool ok = true;
  std::vector<std::string> shown;
  for (const auto& row : rows) {
    auto r = evalbench::batch_rates(row.outcomes);
    ok = ok && r.success.num == row.success && r.execution.num == row.execution && r.success.den == 5 &&
         r.execution.den == 5;
    shown.push_back(fmt::format("{}/{}", 100 * r.success.num / r.success.den, 100 * r.execution.num / r.execution.den));
  }
  return {ok, fmt::format("rows {} (want 100/100 80/100 80/80)", text::join(shown, " "))};
}

// ---- 3: failure catalog ----

Verdict failure_catalog() {
  TempDir dir;
  FaultBench bench(dir.path());
  int reproduced = 0, flagged = 0;
  std::vector<std::string> bad;
  for (const auto& note : simlint::failure_notes()) {
    auto c = bench.make(std::string(note.id));
    auto findings = simlint::validate_folder(c.folder, c.task);
    std::set<std::string> got, want(note.rules.begin(), note.rules.end());
    for (const auto& f : findings) got.insert(f.rule);
    if (got == want && simlint::classify_outcome(findings) == note.consequence) {
      ++reproduced;
      flagged += !want.empty();
    } else {
      bad.push_back(std::string(note.id));
    }
  }
  int total = static_cast<int>(simlint::failure_notes().size());
  return {reproduced == total && flagged >= 6,
          fmt::format("{}/{} notes reproduced, {} flagged by their mapped rules (need >= 6){}", reproduced, total,
                      flagged, bad.empty() ? "" : "; mismatched: " + text::join(bad, ", "))};
}

// ---- 4: combined replay ----

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = io::read_file(e.path());
  }
  return out;
}

Verdict combined_replay() {
  const auto script = combined_clean().str();
  std::optional<std::map<std::string, std::string>> first;
  int identical = 0, lint_errors = 0;
  for (int rep = 0; rep < 5; ++rep) {
    TempDir dir;
    copy_tree(fixture("library"), dir / "library");
    crews::FixtureCorpus corpus(fixture("corpus"));
    agentcore::ReplayProvider provider(script);
    auto run = crews::run_combined(combined_request(), fixture_config(dir / "library"), provider, corpus, dir / "work");
    if (!run.succeeded || !run.setup || run.setup->folders.empty())
      return {false, fmt::format("repetition {} failed: {}", rep + 1, run.failure)};
    for (const auto& f : run.setup->folders) {
      auto findings = simlint::validate_folder(dir / "work/setup" / f, combined_request());
      lint_errors += static_cast<int>(std::count_if(findings.begin(), findings.end(),
                                                    [](const auto& x) { return x.is_error(); }));
    }
    auto files = tree(dir / "work");
    for (auto& [k, v] : tree(dir / "library/extracted")) files["library/" + k] = v;
    std::string transcript;
    auto dump = [&](const std::vector<crews::AgentTranscript>& ts) {
      for (const auto& t : ts) transcript += t.agent + "\n" + agentcore::transcript_jsonl(t.messages);
    };
    dump(run.research.transcripts);
    dump(run.setup->transcripts);
    dump(run.transcripts);
    files["#transcripts"] = transcript;
    if (!first) first = files;
    identical += files == *first;
  }
  return {identical == 5 && lint_errors == 0,
          fmt::format("5 repetitions, {} byte-identical to the first ({} files), {} lint errors", identical,
                      first->size(), lint_errors)};
}

// ---- 5: batch law ----

Verdict batch_law() {
  constexpr int kStructures = 500;
  constexpr double kCutoff = 12.0;
  TempDir dir;
  auto ch4 = forcefield::load_bundle(fixture("library/Dubbeldam-CH4"));
  auto co2 = forcefield::load_bundle(fixture("library/Garcia-Sanchez-CO2"));
  auto co = forcefield::load_bundle(fixture("library/Martin-Calero-CO"));
  auto bundle = forcefield::combine_force_fields(ch4, {co2, co}).bundle;
  forcefield::render_bundle(bundle, dir / "ff");

  std::mt19937_64 rng(500);
  std::uniform_int_distribution<int> sites(2, 12);
  std::vector<siminput::StructureSource> structures;
  for (int i = 0; i < kStructures; ++i) {
    auto name = fmt::format("SIO{:03}", i);
    auto path = dir / "cif" / (name + ".cif");
    io::write_file(path, chemio::write_cif(random_structure(rng, name, sites(rng), false)));
    structures.push_back({chemio::read_cif_file(path.string()), path});
  }
  auto task = make_request(siminput::TaskKind::isotherm, {"methane", "CO2", "CO"}, {});
  task.structure_glob = "*";
  task.pressures = {1e5};
  auto plans = siminput::plan_batch(task, structures, task.adsorbates, bundle, dir / "ff", kCutoff);

  std::map<std::string, const chemio::LatticeParameters*> lattice;
  for (const auto& s : structures) lattice[s.structure.name] = &s.structure.lattice;
  int single = 0, clean = 0, cells_ok = 0;
  std::set<std::string> folders;
  for (const auto& p : plans) {
    single += p.spec.components.size() == 1;
    folders.insert(p.folder);
    auto folder = siminput::materialize_plan(p, dir / "runs");
    clean += !simlint::has_errors(simlint::validate_folder(folder, task));
    const auto& fw = std::get<std::string>(p.spec.framework_name);
    auto h = oracle_widths(*lattice.at(fw));
    auto n = std::get<siminput::UnitCells>(p.spec.unit_cells);
    bool ok = true;
    for (int d = 0; d < 3; ++d) ok = ok && n[d] * h[d] >= 2 * kCutoff;
    cells_ok += ok;
  }
  int total = static_cast<int>(plans.size());
  bool pass = total == 1500 && single == total && clean == total && cells_ok == total &&
              static_cast<int>(folders.size()) == total;
  return {pass, fmt::format("{} plans ({} distinct folders, {} single-component), {} lint-clean, {} with n*h >= 24 A",
                            total, folders.size(), single, clean, cells_ok)};
}

// ---- 6: geometry oracle ----

Verdict geometry_oracle() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> cut(1.0, 30.0);
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    auto l = random_lattice(rng, 3.0, 45.0, 55.0, 125.0);
    double c = cut(rng);
    auto got = chemio::replication_for_cutoff(l, c);
    auto want = oracle_replication(l, c);
    agree += got[0] == want[0] && got[1] == want[1] && got[2] == want[2];
  }
  return {agree == 200, fmt::format("{}/200 random triclinic cells agree exactly", agree)};
}

// ---- 7: round trips ----

Verdict round_trips() {
  std::mt19937_64 rng(7);
  std::map<std::string, int> ok;
  for (int i = 0; i < 100; ++i) {
    auto s = random_structure(rng, fmt::format("rt{}", i), 1 + i % 9, i % 2 == 0);
    auto back = chemio::parse_cif(chemio::write_cif(s));
    ok["cif"] += back.name == s.name && back.lattice == s.lattice && back.sites.size() == s.sites.size() &&
                 chemio::write_cif(back) == chemio::write_cif(s);

    auto b = random_bundle(rng, i);
    ok["pseudo_atoms"] += forcefield::parse_pseudo_atoms(forcefield::render_pseudo_atoms(b.pseudo_atoms)) == b.pseudo_atoms;
    auto mixing = forcefield::render_mixing_rules(b), overrides = forcefield::render_overrides(b);
    auto set = forcefield::parse_interaction_files(mixing, overrides);
    ok["mixing_rules"] += set.self_params == b.self_params && set.mixing_rule == b.mixing_rule &&
                          set.truncation == b.truncation && set.tail_corrections == b.tail_corrections;
    ok["overrides"] += set.overrides == b.overrides;
    // odd bundles carry no molecule; use the previous even one's shape again
    if (b.molecules.empty()) b = random_bundle(rng, 2 * i);
    const auto& m = b.molecules.begin()->second;
    ok["molecule"] += forcefield::parse_molecule(forcefield::render_molecule(m), m.name) == m;

    std::mt19937 srng(static_cast<unsigned>(i));
    auto spec = random_spec(srng, i);
    ok["simulation.input"] += siminput::parse_simulation_input(siminput::render_simulation_input(spec)) == spec;
  }
  bool pass = true;
  std::vector<std::string> shown;
  for (const auto& [k, v] : ok) {
    pass = pass && v == 100;
    shown.push_back(fmt::format("{} {}/100", k, v));
  }
  return {pass && ok.size() == 6, text::join(shown, ", ")};
}

// ---- 8: runtime safety ----

int run_binary(const std::string& path) {
  std::string cmd = path + " --gtest_brief=1 >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : 128;
}

Verdict runtime_safety(const std::vector<std::string>& suite) {
  // adversarial scripts against single agents and against a whole team
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> len(0, 60), steps(1, 20), kind(0, 3);
  agentcore::ToolRegistry reg;
  reg.add({"echo", "returns its input", {{"x", "string", "text", false}}},
          [](const nlohmann::json& a) { return agentcore::ToolResult::ok(a.dump()); });
  int bounded = 0, trials = 300;
  for (int t = 0; t < trials; ++t) {
    ScriptBuilder sb;
    for (int i = 0, n = len(rng); i < n; ++i) {
      switch (kind(rng)) {
        case 0: sb.call("adv", "echo", {{"x", std::to_string(i)}}); break;
        case 1: sb.call("adv", "missing"); break;
        case 2: sb.raw_call("adv", "echo", "{oops"); break;
        default: sb.calls("adv", {{"echo", nlohmann::json::object()}, {"echo", {{"x", "y"}}}});
      }
    }
    agentcore::ReplayProvider p(sb.str());
    int max_steps = steps(rng);
    auto out = agentcore::run_react({"adv", "adversary", {"echo"}, max_steps, "m"}, "go", reg, p);
    bounded += out.provider_calls <= max_steps && static_cast<int>(p.calls()) <= max_steps;
  }
  auto cfg = fixture_config();
  cfg.max_steps = 6;
  ScriptBuilder loop;
  for (int i = 0; i < 50; ++i) loop.call(agents::supervisor, "delegate", {{"agent", "coding_expert"}, {"instruction", "x"}});
  agentcore::ReplayProvider team_provider(loop.str());
  TempDir dir;
  auto team = crews::run_setup_team(make_request(siminput::TaskKind::isotherm, {"methane"}, {"MFI"}), cfg,
                                    team_provider, dir.path());
  bool team_bounded = static_cast<int>(team_provider.calls()) <= cfg.max_steps && !team.succeeded;

  std::string suite_note = "suite not given";
  bool suite_ok = true;
  if (!suite.empty()) {
    auto t0 = Clock::now();
    int failed = 0;
    for (const auto& b : suite) failed += run_binary(b) != 0;
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    suite_ok = failed == 0 && s < 120.0;
    suite_note = fmt::format("{} fixture-mode binaries with the socket guard, {} failed, {:.1f} s (limit 120 s)",
                             suite.size(), failed, s);
  }
  return {bounded == trials && team_bounded && suite_ok,
          fmt::format("{}/{} adversarial agent scripts within max_steps; looping supervisor stopped after {} calls "
                      "(max {}); {}",
                      bounded, trials, team_provider.calls(), cfg.max_steps, suite_note)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> suite;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--suite") continue;
    suite.push_back(a);
  }
  criterion(1, "parameter scoring reproduces the extraction table", 1000, metric_scoring);
  criterion(2, "batch rates reproduce the setup table rows", 1000, metric_rates);
  criterion(3, "every failure note is seeded and caught", 5000, failure_catalog);
  criterion(4, "combined replay is lint-clean and byte-identical", 30000, combined_replay);
  criterion(5, "500 structures x 3 adsorbates give 1500 clean plans", 60000, batch_law);
  criterion(6, "replication matches the vector-geometry oracle", 5000, geometry_oracle);
  criterion(7, "parse o render is identity on random instances", 10000, round_trips);
  criterion(8, "runtime safety and offline test suite", 130000, [&] { return runtime_safety(suite); });
  std::cout << (failures == 0 ? "all criteria passed" : fmt::format("{} criterion(s) failed", failures)) << std::endl;
  return failures;
}
