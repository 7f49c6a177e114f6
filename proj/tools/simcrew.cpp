// simcrew command-line entry point.

#include "simcrew/agentcore/memory.hpp"
#include "simcrew/agentcore/provider.hpp"
#include "simcrew/crews/config.hpp"
#include "simcrew/crews/literature.hpp"
#include "simcrew/crews/teams.hpp"
#include "simcrew/crews/toolbox.hpp"
#include "simcrew/error.hpp"
#include "simcrew/evalbench/benchmark.hpp"
#include "simcrew/io.hpp"
#include "simcrew/siminput/task.hpp"
#include "simcrew/simlint/lint.hpp"
#include "simcrew/text.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <iostream>
#include <memory>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace simcrew;

namespace {

enum Exit { kOk = 0, kValidation = 1, kUsage = 2, kProvider = 3 };

struct Common {
  std::string config_file;
  std::string replay;
  std::string out;
};

crews::TeamConfig load_config(const Common& c) {
  crews::TeamConfig cfg;
  if (!c.config_file.empty()) {
    cfg = crews::load_team_config(c.config_file);
  } else if (fs::exists("simcrew.json")) {
    cfg = crews::load_team_config("simcrew.json");
  } else {
    cfg.models = crews::default_models();
  }
  crews::apply_env_overrides(cfg);
  return cfg;
}

std::unique_ptr<agentcore::Provider> make_provider(const Common& c, const crews::TeamConfig& cfg) {
  if (!c.replay.empty())
    return std::make_unique<agentcore::ReplayProvider>(agentcore::ReplayProvider::from_file(c.replay));
  if (cfg.endpoint.empty())
    throw Error(Errc::config, "no model endpoint configured; set SIMCREW_ENDPOINT or pass --replay");
  return std::make_unique<agentcore::HttpChatProvider>(agentcore::HttpProviderConfig{cfg.endpoint, cfg.api_key});
}

siminput::TaskRequest read_request(const std::string& file) {
  auto j = json::parse(io::read_file(file), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::config, fmt::format("{} is not valid JSON", file));
  return siminput::task_from_json(j);
}

void write_transcripts(const std::vector<crews::AgentTranscript>& ts, const std::vector<agentcore::MemoryReport>& memory,
                       const fs::path& out) {
  std::string lines;
  for (const auto& t : ts) {
    json msgs = json::array();
    for (const auto& m : t.messages) msgs.push_back(agentcore::message_to_json(m));
    lines += json{{"agent", t.agent}, {"messages", msgs}}.dump() + "\n";
  }
  io::write_file(out / "transcripts.jsonl", lines);
  std::string mem;
  for (const auto& r : memory) mem += agentcore::report_to_json(r).dump() + "\n";
  io::write_file(out / "memory.jsonl", mem);
}

int report_setup(const crews::TeamRun& run, const fs::path& work) {
  for (const auto& f : run.folders) std::cout << "folder " << (work / f).string() << "\n";
  if (!run.findings.empty()) std::cout << simlint::render_report(run.findings);
  if (!run.succeeded) {
    std::cerr << "setup failed: " << run.failure << "\n";
    return run.provider_failure ? kProvider : kValidation;
  }
  return simlint::has_errors(run.findings) ? kValidation : kOk;
}

std::string utc_stamp() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

json parse_tool_args(const std::vector<std::string>& args) {
  if (args.size() == 1 && !args[0].empty() && args[0].front() == '{') {
    auto j = json::parse(args[0], nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(Errc::config, "tool arguments are not a JSON object");
    return j;
  }
  json j = json::object();
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(Errc::config, fmt::format("expected key=value, got '{}'", a));
    auto key = a.substr(0, eq), value = a.substr(eq + 1);
    // numbers, booleans, lists and objects are passed as JSON; anything else is a string
    auto v = json::parse(value, nullptr, false);
    j[key] = v.is_discarded() || v.is_string() ? json(value) : v;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent preparation and validation of adsorption simulations."};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_file, "JSON configuration file (default ./simcrew.json if present)");

  auto* setup = app.add_subcommand("setup", "Prepare simulation folders for a task request");
  std::string request;
  setup->add_option("--request", request, "task request JSON")->required()->check(CLI::ExistingFile);
  setup->add_option("--replay", common.replay, "replay script instead of a live model");
  setup->add_option("--out", common.out, "work folder")->default_val("simcrew-setup");

  auto* research = app.add_subcommand("research", "Extract a force field from the literature");
  std::string query, doi, corpus;
  auto* q = research->add_option("--query", query, "search text");
  research->add_option("--doi", doi, "paper identifier")->excludes(q);
  research->add_option("--replay", common.replay, "replay script instead of a live model");
  research->add_option("--corpus", corpus, "fixture corpus folder");
  research->add_option("--out", common.out, "work folder")->default_val("simcrew-research");

  auto* combined = app.add_subcommand("combined", "Extract a force field, then prepare folders with it");
  combined->add_option("--request", request, "task request JSON")->required()->check(CLI::ExistingFile);
  combined->add_option("--doi", doi, "paper identifier")->required();
  combined->add_option("--replay", common.replay, "replay script instead of a live model");
  combined->add_option("--corpus", corpus, "fixture corpus folder");
  combined->add_option("--out", common.out, "work folder")->default_val("simcrew-combined");

  auto* validate = app.add_subcommand("validate", "Lint simulation folders");
  std::vector<std::string> folders;
  std::string task_file;
  bool as_json = false, template_mode = false;
  validate->add_option("folders", folders, "simulation folders")->required()->check(CLI::ExistingDirectory);
  validate->add_option("--task", task_file, "task request for intent checks")->check(CLI::ExistingFile);
  validate->add_flag("--template", template_mode, "skip checks that need bound placeholders");
  validate->add_flag("--json", as_json, "print findings as JSON");

  auto* eval = app.add_subcommand("eval", "Run a benchmark suite");
  std::string suite;
  int reps = 5;
  bool online = false;
  eval->add_option("--suite", suite, "suite JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--reps", reps, "repetitions per task")->check(CLI::PositiveNumber);
  eval->add_option("--out", common.out, "results root; a timestamped folder is created inside")->default_val("results");
  eval->add_flag("--online", online, "allow entries without replay scripts to use the live model");

  auto* tools = app.add_subcommand("tools", "Invoke one tool directly");
  std::string tool;
  std::vector<std::string> tool_args;
  bool list = false;
  tools->add_flag("--list", list, "list the available tools");
  tools->add_option("name", tool, "tool name");
  tools->add_option("args", tool_args, "key=value pairs or one JSON object");
  tools->add_option("--work", common.out, "work folder")->default_val(".");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    auto cfg = load_config(common);
    fs::path out = common.out;

    if (*setup) {
      auto task = read_request(request);
      auto provider = make_provider(common, cfg);
      auto run = crews::run_setup_team(task, cfg, *provider, out);
      write_transcripts(run.transcripts, run.memory, out);
      return report_setup(run, out);
    }

    if (*research || *combined) {
      if (!corpus.empty()) cfg.corpus_root = corpus;
      auto literature = crews::open_literature(cfg, out / "papers");
      auto provider = make_provider(common, cfg);
      if (*research) {
        if (query.empty() && doi.empty()) throw Error(Errc::config, "research needs --query or --doi");
        auto run = crews::run_research_team(query.empty() ? doi : query, cfg, *provider, *literature, out);
        write_transcripts(run.transcripts, run.memory, out);
        if (!run.succeeded) {
          std::cerr << "research failed: " << run.failure << "\n";
          return run.provider_failure ? kProvider : kValidation;
        }
        std::cout << "papers: " << text::join(run.papers, ", ") << "\n";
        std::cout << evalbench::parameter_set_to_json(run.parameters()).dump(2) << "\n";
        std::cout << "force field written to " << (out / "forcefield").string() << "\n";
        return kOk;
      }
      auto task = read_request(request);
      task.forcefield = {siminput::ForceFieldDirective::Kind::research, doi};
      auto run = crews::run_combined(task, cfg, *provider, *literature, out);
      write_transcripts(run.transcripts, run.memory, out);
      if (!run.succeeded) {
        std::cerr << "combined run failed: " << run.failure << "\n";
        return run.provider_failure ? kProvider : kValidation;
      }
      std::cout << "force field registered as library:" << run.registered << "\n";
      return report_setup(*run.setup, out / "setup");
    }

    if (*validate) {
      std::optional<siminput::TaskRequest> task;
      if (!task_file.empty()) task = read_request(task_file);
      simlint::LintOptions opts;
      opts.template_mode = template_mode;
      bool errors = false;
      json all = json::object();
      for (const auto& f : folders) {
        auto findings = simlint::validate_folder(f, task, opts);
        errors = errors || simlint::has_errors(findings);
        if (as_json) {
          all[f] = simlint::report_json(findings);
        } else {
          std::cout << "== " << f << "\n" << (findings.empty() ? "No findings.\n" : simlint::render_report(findings));
        }
      }
      if (as_json) std::cout << all.dump(2) << "\n";
      return errors ? kValidation : kOk;
    }

    if (*eval) {
      auto s = evalbench::load_suite(suite);
      auto dir = out / utc_stamp();
      evalbench::BenchmarkOptions opts;
      opts.repetitions = reps;
      opts.offline = !online;
      opts.scratch = dir / "work";
      auto replays = evalbench::replay_provider_factory();
      evalbench::ProviderFactory factory = [&](const evalbench::SuiteEntry& e, int rep) {
        if (e.replays.empty()) return make_provider(Common{}, cfg);
        return replays(e, rep);
      };
      auto literature = crews::open_literature(cfg, dir / "papers");
      auto report = evalbench::run_benchmark(s, cfg, factory, literature.get(), opts);
      evalbench::write_results(report, dir);
      std::cout << evalbench::render_tables(report) << "results in " << dir.string() << "\n";
      return kOk;
    }

    if (*tools) {
      crews::ToolContext ctx{crews::Workspace({cfg.library_root, cfg.structures_root, cfg.examples_root, cfg.corpus_root},
                                              fs::absolute(out))};
      std::unique_ptr<crews::LiteratureStore> literature;
      if (!cfg.corpus_root.empty() || cfg.live_literature) {
        literature = crews::open_literature(cfg, out / "papers");
        ctx.literature = literature.get();
      }
      ctx.cutoff = cfg.cutoff;
      auto reg = crews::make_tool_registry(ctx);
      if (list || tool.empty()) {
        for (const auto& n : reg.names()) std::cout << n << ": " << reg.schema(n)->description << "\n";
        return kOk;
      }
      if (!reg.contains(tool)) throw Error(Errc::config, fmt::format("unknown tool '{}'; see tools --list", tool));
      auto r = reg.invoke(tool, parse_tool_args(tool_args).dump());
      (r.is_error ? std::cerr : std::cout) << r.content << (r.content.ends_with('\n') ? "" : "\n");
      return r.is_error ? kValidation : kOk;
    }
  } catch (const ProviderError& e) {
    std::cerr << "provider error: " << e.what() << "\n";
    return kProvider;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == Errc::divergence ? kProvider : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
