#include "simcrew/evalbench/benchmark.hpp"

#include "simcrew/crews/teams.hpp"
#include "simcrew/error.hpp"
#include "simcrew/io.hpp"
#include "simcrew/siminput/task.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <numeric>

namespace simcrew::evalbench {
namespace {

using nlohmann::json;

std::string percent(const Ratio& r) {
  return fmt::format("{:.0f}%", 100.0 * r.value());
}

std::string ratio_text(const Ratio& r) { return fmt::format("{}/{}", r.num, r.den); }

int count_structures(const siminput::TaskRequest& task, const fs::path& root) {
  if (!task.structures.empty()) return static_cast<int>(task.structures.size());
  int n = 0;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return 0;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_regular_file() && text::iequals(e.path().extension().string(), ".cif") &&
        siminput::glob_match(task.structure_glob.empty() ? "*" : task.structure_glob, e.path().stem().string()))
      ++n;
  }
  return n;
}

siminput::TaskRequest read_request(const fs::path& p) {
  auto j = json::parse(io::read_file(p), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::config, fmt::format("{} is not valid JSON", p.string()));
  return siminput::task_from_json(j);
}

ParameterSet read_reference(const fs::path& p) {
  auto j = json::parse(io::read_file(p), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::config, fmt::format("{} is not valid JSON", p.string()));
  return parameter_set_from_json(j);
}

}  // namespace

Rates batch_rates(std::span<const simlint::OutcomeLabel> outcomes) {
  if (outcomes.empty()) throw Error(Errc::precondition, "batch_rates needs at least one outcome");
  Rates r{{0, static_cast<long>(outcomes.size())}, {0, static_cast<long>(outcomes.size())}};
  for (const auto& o : outcomes) {
    r.success.num += o.correctly_configured ? 1 : 0;
    r.execution.num += o.executable ? 1 : 0;
  }
  return r;
}

Suite load_suite(const fs::path& file) {
  auto j = json::parse(io::read_file(file), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("tasks") || !j["tasks"].is_array())
    throw Error(Errc::config, fmt::format("{}: a suite is a JSON object with a \"tasks\" list", file.string()));
  auto base = file.parent_path();
  auto rooted = [&](const std::string& p) { return fs::path(p).is_relative() ? base / p : fs::path(p); };
  Suite s;
  try {
    for (const auto& t : j["tasks"]) {
      SuiteEntry e;
      auto kind = t.value("kind", std::string("setup"));
      if (kind == "setup") {
        e.kind = EntryKind::setup;
        e.request = rooted(t.at("request").get<std::string>());
      } else if (kind == "research") {
        e.kind = EntryKind::research;
        e.query = t.at("query").get<std::string>();
        e.reference = rooted(t.at("reference").get<std::string>());
      } else {
        throw Error(Errc::config, fmt::format("unknown suite task kind '{}'", kind));
      }
      e.label = t.value("label", e.kind == EntryKind::setup ? e.request.stem().string() : e.query);
      if (t.contains("replay")) e.replays.push_back(rooted(t["replay"].get<std::string>()));
      for (const auto& r : t.value("replays", json::array())) e.replays.push_back(rooted(r.get<std::string>()));
      s.entries.push_back(std::move(e));
    }
  } catch (const json::exception& ex) {
    throw Error(Errc::config, fmt::format("{}: malformed suite: {}", file.string(), ex.what()));
  }
  return s;
}

ProviderFactory replay_provider_factory() {
  return [](const SuiteEntry& e, int rep) -> std::unique_ptr<agentcore::Provider> {
    if (e.replays.empty()) throw Error(Errc::config, fmt::format("suite task '{}' has no replay script", e.label));
    const auto& p = e.replays[static_cast<std::size_t>(rep) % e.replays.size()];
    return std::make_unique<agentcore::ReplayProvider>(agentcore::ReplayProvider::from_file(p.string()));
  };
}

BenchmarkReport run_benchmark(const Suite& suite, const crews::TeamConfig& config, const ProviderFactory& providers,
                              crews::LiteratureStore* literature, const BenchmarkOptions& options) {
  if (options.repetitions < 1) throw Error(Errc::precondition, "repetitions must be at least 1");
  if (options.scratch.empty()) throw Error(Errc::precondition, "a scratch folder is required");
  // Everything that can be checked up front is, so a bad suite fails before
  // the first team runs.
  for (const auto& e : suite.entries) {
    if (options.offline && e.replays.empty())
      throw Error(Errc::config, fmt::format("suite task '{}' has no replay script", e.label));
    for (const auto& r : e.replays) {
      if (options.offline && !fs::is_regular_file(r))
        throw Error(Errc::config, fmt::format("replay script {} for '{}' does not exist", r.string(), e.label));
    }
    if (e.kind == EntryKind::setup) read_request(e.request);
    if (e.kind == EntryKind::research) {
      read_reference(e.reference);
      if (!literature) throw Error(Errc::config, "research tasks need a literature store");
    }
  }

  BenchmarkReport report;
  report.repetitions = options.repetitions;
  int index = 0;
  for (const auto& e : suite.entries) {
    auto root = options.scratch / fmt::format("{:02}-{}", index++, crews::sanitize_id(e.label));
    if (e.kind == EntryKind::setup) {
      auto task = read_request(e.request);
      SetupResult r;
      r.label = e.label;
      r.adsorbates = static_cast<int>(task.adsorbates.size());
      r.structures = count_structures(task, config.structures_root);
      for (int rep = 0; rep < options.repetitions; ++rep) {
        auto provider = providers(e, rep);
        auto work = root / fmt::format("rep{}", rep + 1);
        fs::remove_all(work);
        auto run = crews::run_setup_team(task, config, *provider, work);
        r.outcomes.push_back(run.overall());
        r.failures.push_back(run.failure);
      }
      r.rates = batch_rates(r.outcomes);
      report.setup.push_back(std::move(r));
    } else {
      auto reference = read_reference(e.reference);
      ResearchResult r;
      r.label = e.label;
      for (int rep = 0; rep < options.repetitions; ++rep) {
        auto provider = providers(e, rep);
        auto work = root / fmt::format("rep{}", rep + 1);
        fs::remove_all(work);
        auto run = crews::run_research_team(e.query, config, *provider, *literature, work);
        auto extracted = run.bundle ? parameter_set_from_bundle(*run.bundle) : run.parameters();
        r.reports.push_back(score_parameters(extracted, reference, options.rel_tol));
      }
      double n = static_cast<double>(r.reports.size());
      for (const auto& s : r.reports) {
        r.mean_missed += s.missed / n;
        r.mean_wrong += s.wrong / n;
        r.mean_iou += s.iou / n;
      }
      report.research.push_back(std::move(r));
    }
  }
  return report;
}

std::string results_jsonl(const BenchmarkReport& report) {
  std::string out;
  auto line = [&](const json& j) {
    out += j.dump();
    out += '\n';
  };
  for (const auto& r : report.setup) {
    for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
      line({{"type", "setup"},
            {"label", r.label},
            {"repetition", i + 1},
            {"correctly_configured", r.outcomes[i].correctly_configured},
            {"executable", r.outcomes[i].executable},
            {"failure", r.failures[i]}});
    }
    line({{"type", "setup-summary"},
          {"label", r.label},
          {"repetitions", r.outcomes.size()},
          {"adsorbates", r.adsorbates},
          {"structures", r.structures},
          {"success", ratio_text(r.rates.success)},
          {"execution", ratio_text(r.rates.execution)},
          {"success_rate", r.rates.success.value()},
          {"execution_rate", r.rates.execution.value()}});
  }
  for (const auto& r : report.research) {
    for (std::size_t i = 0; i < r.reports.size(); ++i) {
      const auto& s = r.reports[i];
      line({{"type", "research"},
            {"label", r.label},
            {"repetition", i + 1},
            {"matched", s.matched},
            {"missed", s.missed},
            {"wrong", s.wrong},
            {"extra", s.extra},
            {"iou", s.iou},
            {"details", s.details}});
    }
    line({{"type", "research-summary"},
          {"label", r.label},
          {"repetitions", r.reports.size()},
          {"missed", r.mean_missed},
          {"wrong", r.mean_wrong},
          {"iou", r.mean_iou}});
  }
  return out;
}

std::string render_tables(const BenchmarkReport& report) {
  std::string out;
  if (!report.setup.empty()) {
    out += fmt::format("Setup tasks ({} repetitions)\n", report.repetitions);
    out += fmt::format("{:<32} {:>10} {:>10} {:>8} {:>9}\n", "Task", "Adsorbates", "Structures", "Success",
                       "Execution");
    for (const auto& r : report.setup) {
      out += fmt::format("{:<32} {:>10} {:>10} {:>8} {:>9}\n", r.label, r.adsorbates, r.structures,
                         percent(r.rates.success), percent(r.rates.execution));
    }
  }
  if (!report.research.empty()) {
    if (!out.empty()) out += '\n';
    out += fmt::format("Force-field extraction ({} repetitions)\n", report.repetitions);
    out += fmt::format("{:<32} {:>7} {:>7} {:>6}\n", "Force field", "Missed", "Wrong", "IoU");
    for (const auto& r : report.research) {
      out += fmt::format("{:<32} {:>7.1f} {:>7.1f} {:>6.2f}\n", r.label, r.mean_missed, r.mean_wrong, r.mean_iou);
    }
  }
  return out;
}

void write_results(const BenchmarkReport& report, const fs::path& dir) {
  io::write_file(dir / "results.jsonl", results_jsonl(report));
  io::write_file(dir / "tables.txt", render_tables(report));
}

}  // namespace simcrew::evalbench
