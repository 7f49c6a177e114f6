#pragma once

#include "simcrew/agentcore/provider.hpp"
#include "simcrew/crews/config.hpp"
#include "simcrew/crews/literature.hpp"
#include "simcrew/evalbench/params.hpp"
#include "simcrew/simlint/lint.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace simcrew::evalbench {

namespace fs = std::filesystem;

struct Rates {
  Ratio success;
  Ratio execution;
};

/// Fractions of correctly configured and of executable outcomes, as exact
/// counts. Throws Error(precondition) for an empty list.
Rates batch_rates(std::span<const simlint::OutcomeLabel> outcomes);

enum class EntryKind { setup, research };

struct SuiteEntry {
  EntryKind kind = EntryKind::setup;
  std::string label;
  fs::path request;    // setup: task request JSON
  std::string query;   // research: literature query or identifier
  fs::path reference;  // research: reference parameter set JSON
  std::vector<fs::path> replays;  // repetition k uses replays[k % size]
};

struct Suite {
  std::vector<SuiteEntry> entries;
};

/// {"tasks": [{"label", "kind": "setup"|"research", "request" | "query" +
/// "reference", "replay" | "replays": [...]}]}. Paths are relative to the
/// suite file. Throws Error(config).
Suite load_suite(const fs::path& file);

using ProviderFactory = std::function<std::unique_ptr<agentcore::Provider>(const SuiteEntry&, int repetition)>;

/// Replay scripts from the entry; throws Error(config) when none is listed.
ProviderFactory replay_provider_factory();

struct SetupResult {
  std::string label;
  int adsorbates = 0;
  int structures = 0;
  std::vector<simlint::OutcomeLabel> outcomes;  // one per repetition
  std::vector<std::string> failures;            // empty string for successful team runs
  Rates rates;
};

struct ResearchResult {
  std::string label;
  std::vector<ScoreReport> reports;  // one per repetition
  double mean_missed = 0;
  double mean_wrong = 0;
  double mean_iou = 0;
};

struct BenchmarkReport {
  int repetitions = 0;
  std::vector<SetupResult> setup;
  std::vector<ResearchResult> research;
};

struct BenchmarkOptions {
  int repetitions = 5;
  bool offline = true;  // every entry must name a replay script
  fs::path scratch;     // per-repetition work folders go here
  double rel_tol = kDefaultRelTol;
};

/// Runs every entry `repetitions` times through the teams. In offline mode
/// missing replay scripts are reported as Error(config) before anything runs.
BenchmarkReport run_benchmark(const Suite& suite, const crews::TeamConfig& config, const ProviderFactory& providers,
                              crews::LiteratureStore* literature, const BenchmarkOptions& options);

/// One JSON record per repetition followed by one summary per entry.
std::string results_jsonl(const BenchmarkReport& report);
/// Fixed-width tables: setup rates, then research scores.
std::string render_tables(const BenchmarkReport& report);
/// Writes results.jsonl and tables.txt into `dir`.
void write_results(const BenchmarkReport& report, const fs::path& dir);

}  // namespace simcrew::evalbench
