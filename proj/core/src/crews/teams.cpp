#include "simcrew/crews/teams.hpp"

#include "simcrew/agentcore/react.hpp"
#include "simcrew/chemio/structure.hpp"
#include "simcrew/crews/prompts.hpp"
#include "simcrew/error.hpp"
#include "simcrew/forcefield/library.hpp"
#include "simcrew/siminput/plan.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <set>

namespace simcrew::crews {
namespace {

using agentcore::GlobalMemory;
using agentcore::ToolResult;
using nlohmann::json;

std::string first_line(std::string_view s) {
  auto t = text::trim(s);
  return std::string(text::trim(t.substr(0, t.find('\n'))));
}

bool reports_failure(const agentcore::AgentOutcome& o) {
  return !o.succeeded() || text::trim(o.final_answer).rfind("FAILED", 0) == 0;
}

std::string failure_text(const agentcore::AgentOutcome& o) {
  if (o.succeeded()) return first_line(o.final_answer);
  std::string s(to_string(o.terminated_by));
  if (!o.error.empty()) s += ": " + first_line(o.error);
  return s;
}

std::vector<fs::path> subdirs(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> cifs_in(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && text::iequals(e.path().extension().string(), ".cif")) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Workspace::Roots roots_of(const TeamConfig& c) {
  return {c.library_root, c.structures_root, c.examples_root, c.corpus_root};
}

void add_read_memory(agentcore::ToolRegistry& reg, GlobalMemory& memory, std::string agent) {
  reg.add({kReadMemoryTool, "Reports the team members have filed so far.", {}},
          [&memory, agent](const json&) { return ToolResult::ok(memory.render(agent)); });
}

simlint::Finding finding(std::string_view rule, std::string message, std::string folder,
                         std::optional<std::string> file = std::nullopt) {
  const auto* info = simlint::find_rule(rule);
  return {std::string(rule), info ? info->severity : simlint::Severity::setup_error, std::move(message),
          std::move(folder), std::move(file)};
}

class SetupTeam {
 public:
  SetupTeam(const siminput::TaskRequest& request, const TeamConfig& config, agentcore::Provider& provider,
            const fs::path& work, GlobalMemory& memory)
      : request_(request),
        config_(config),
        provider_(provider),
        memory_(memory),
        ctx_{Workspace(roots_of(config), work), nullptr, {}, request, request.cutoff} {
    register_domain_tools(registry_, ctx_);
    add_read_memory(registry_, memory_, agents::supervisor);
    registry_.add({kDelegateTool,
                   "Hand a stage to a team member; returns their result once the evaluator has approved it.",
                   {{"agent", "string", "structure_expert, forcefield_expert, input_expert or coding_expert"},
                    {"instruction", "string", "what the member should do"}}},
                  [this](const json& a) {
                    return delegate(agentcore::arg_string(a, "agent"), agentcore::arg_string(a, "instruction"));
                  });
  }

  TeamRun run() {
    auto sup = run_agent(agents::supervisor,
                         fmt::format("Request:\n{}\n\nPrepare the simulation folders for this request.",
                                     siminput::task_to_json(request_).dump(2)));
    const auto& stages = setup_stage_agents();
    if (run_.failure.empty() && next_ < stages.size()) {
      run_.failure = reports_failure(sup)
                         ? fmt::format("supervisor stopped: {}", failure_text(sup))
                         : fmt::format("supervisor finished before the {} stage", stages[next_]);
    }
    final_validation();
    run_.succeeded = run_.failure.empty();
    run_.memory = memory_.snapshot();
    return std::move(run_);
  }

 private:
  const fs::path& work() const { return ctx_.workspace.work(); }
  std::string show(const fs::path& p) const { return ctx_.workspace.display(p); }

  agentcore::AgentOutcome run_agent(const std::string& agent, const std::string& task) {
    agentcore::ReactOptions opts;
    opts.memory = &memory_;
    auto out = agentcore::run_react(agent_config(agent, config_), task, registry_, provider_, opts);
    run_.transcripts.push_back({agent, out.transcript});
    if (out.terminated_by == agentcore::Termination::provider_error) run_.provider_failure = true;
    return out;
  }

  ToolResult delegate(const std::string& agent, const std::string& instruction) {
    const auto& stages = setup_stage_agents();
    if (!run_.failure.empty()) return ToolResult::error(fmt::format("error: the team has stopped: {}", run_.failure));
    if (next_ >= stages.size()) return ToolResult::error("error: every stage is already complete");
    if (agent != stages[next_]) {
      bool member = std::find(stages.begin(), stages.end(), agent) != stages.end();
      return ToolResult::error(member ? fmt::format("error: out of order; the next stage belongs to {}", stages[next_])
                                      : fmt::format("error: '{}' is not a member of this team", agent));
    }

    StageRecord rec{agent};
    std::string feedback;
    for (int attempt = 0;; ++attempt) {
      rec.attempts = attempt + 1;
      std::string task = fmt::format("{}\n\nRequest:\n{}", instruction, siminput::task_to_json(request_).dump(2));
      if (!feedback.empty()) task += fmt::format("\n\nThe evaluator asked for corrections:\n{}", feedback);
      auto out = run_agent(agent, task);
      if (reports_failure(out)) {
        run_.failure = fmt::format("{} failed: {}", agent, failure_text(out));
        rec.feedback = run_.failure;
        run_.stages.push_back(rec);
        return ToolResult::error(run_.failure);
      }

      agentcore::ReviewInput review;
      review.subject = fmt::format("{} reported: {}", agent, first_line(out.final_answer));
      for (const auto& a : out.artifacts) review.artifacts.push_back(fmt::format("{} {}", a.role, a.value));
      auto findings = stage_findings(agent, out.artifacts);
      if (!findings.empty()) review.lint_report = simlint::render_report(findings);
      auto verdict = agentcore::evaluator_review(agent_config(agents::evaluator, config_), review, registry_,
                                                 provider_, &memory_);
      run_.transcripts.push_back({agents::evaluator, verdict.outcome.transcript});
      if (verdict.verdict.approved) {
        rec.approved = true;
        run_.stages.push_back(rec);
        ++next_;
        return ToolResult::ok(fmt::format("{} finished and the evaluator approved.\n{}", agent, out.final_answer));
      }
      feedback = verdict.verdict.feedback;
      rec.feedback = feedback;
      if (attempt >= config_.revision_rounds) {
        run_.failure = fmt::format("evaluator rejected the {} output after {} attempt(s): {}", agent, attempt + 1,
                                   feedback);
        run_.stages.push_back(rec);
        return ToolResult::error(run_.failure);
      }
    }
  }

  // Checks handed to the evaluator as the lint report for each stage.
  std::vector<simlint::Finding> stage_findings(const std::string& agent,
                                               const std::vector<agentcore::Artifact>& artifacts) const {
    std::vector<simlint::Finding> out;
    auto sdir = work() / "structures";
    auto fdir = work() / "forcefield";
    if (agent == agents::structure_expert) {
      auto staged = cifs_in(sdir);
      if (staged.empty()) out.push_back(finding("R1", "no framework CIF was staged", "structures"));
      std::set<std::string> names;
      for (const auto& p : staged) {
        names.insert(p.stem().string());
        try {
          chemio::read_cif_file(p.string());
        } catch (const Error& e) {
          out.push_back(finding("R1", fmt::format("{} cannot be read: {}", p.filename().string(), e.what()),
                                "structures", p.filename().string()));
        }
      }
      for (const auto& n : request_.structures) {
        if (!names.count(n)) out.push_back(finding("R1", fmt::format("requested framework {} is not staged", n), "structures"));
      }
    } else if (agent == agents::forcefield_expert) {
      forcefield::ForceFieldBundle bundle;
      try {
        bundle = forcefield::load_bundle(fdir);
      } catch (const Error& e) {
        out.push_back(finding("R4", fmt::format("force field cannot be loaded: {}", e.what()), "forcefield"));
        return out;
      }
      for (const auto& m : request_.adsorbates) {
        if (!bundle.molecules.count(m))
          out.push_back(finding("R10", fmt::format("no molecule definition for {}", m), "forcefield", m + ".def"));
      }
      for (const auto& p : cifs_in(sdir)) {
        try {
          for (const auto& [type, n] : chemio::atom_type_census(chemio::read_cif_file(p.string()))) {
            if (!bundle.find_atom(type))
              out.push_back(finding("R4", fmt::format("framework type {} of {} has no pseudo atom", type,
                                                      p.filename().string()),
                                    "forcefield"));
          }
        } catch (const Error&) {
          // unreadable CIFs were reported at the structure stage
        }
      }
    } else if (agent == agents::input_expert) {
      simlint::LintOptions opts;
      opts.template_mode = true;
      int templates = 0;
      for (const auto& a : artifacts) {
        if (a.role != "simulation-template") continue;
        ++templates;
        try {
          auto dir = ctx_.workspace.resolve(a.value);
          auto tmpl = complete_template(dir, sdir, fdir);
          siminput::SimulationPlan plan{a.value, tmpl.spec, tmpl.files};
          auto f = simlint::validate_plan(plan, request_, opts);
          out.insert(out.end(), f.begin(), f.end());
        } catch (const Error& e) {
          out.push_back(finding("R0", fmt::format("template cannot be read: {}", e.what()), a.value));
        }
      }
      if (templates == 0) out.push_back(finding("R0", "no simulation template was written", "template"));
    } else if (agent == agents::coding_expert) {
      auto folders = subdirs(work() / "runs");
      if (folders.empty()) out.push_back(finding("R0", "no simulation folder was created", "runs"));
      for (const auto& d : folders) {
        auto f = simlint::validate_folder(d, request_);
        for (auto& x : f) x.folder = show(d);
        out.insert(out.end(), f.begin(), f.end());
      }
    }
    return out;
  }

  void final_validation() {
    std::vector<agentcore::Artifact> outputs;
    int errors = 0;
    for (const auto& d : subdirs(work() / "runs")) {
      auto f = simlint::validate_folder(d, request_);
      for (auto& x : f) x.folder = show(d);
      errors += static_cast<int>(std::count_if(f.begin(), f.end(), [](const auto& x) { return x.is_error(); }));
      run_.folders.push_back(show(d));
      run_.outcomes.push_back(simlint::classify_outcome(f));
      run_.findings.insert(run_.findings.end(), f.begin(), f.end());
      outputs.push_back({"simulation-folder", show(d)});
    }
    agentcore::MemoryReport r;
    r.author = "validator";
    r.summary = fmt::format("{} folder(s) checked, {} error finding(s)", run_.folders.size(), errors);
    r.outputs = std::move(outputs);
    r.status = errors > 0 || run_.folders.empty() ? agentcore::ReportStatus::failed : agentcore::ReportStatus::done;
    memory_.append(std::move(r));
  }

  const siminput::TaskRequest& request_;
  const TeamConfig& config_;
  agentcore::Provider& provider_;
  GlobalMemory& memory_;
  ToolContext ctx_;
  agentcore::ToolRegistry registry_;
  std::size_t next_ = 0;
  TeamRun run_;
};

class ResearchTeam {
 public:
  ResearchTeam(const TeamConfig& config, agentcore::Provider& provider, LiteratureStore& literature,
               const fs::path& work, GlobalMemory& memory)
      : config_(config),
        provider_(provider),
        memory_(memory),
        ctx_{Workspace(roots_of(config), work), &literature, {}, std::nullopt, config.cutoff} {
    register_domain_tools(registry_, ctx_);
  }

  ResearchRun run(const std::string& query) {
    auto& session = ctx_.session;
    std::vector<std::string> wanted = {query};
    std::set<std::string> asked = {query};
    std::size_t seen_findings = 0;
    while (!wanted.empty() && run_.search_rounds < config_.search_rounds) {
      ++run_.search_rounds;
      auto before = session.papers.size();
      auto task = run_.search_rounds == 1
                      ? fmt::format("Find and download the publication for: {}", query)
                      : fmt::format("A paper we read takes parameters from other work. Find and download:\n- {}",
                                    text::join(wanted, "\n- "));
      run_agent(agents::paper_search, task);
      if (session.papers.size() == before) {
        if (run_.search_rounds == 1) return finish(fmt::format("no paper found for '{}'", query));
        break;  // the cited work is not available; continue with what we have
      }
      std::vector<std::string> fresh;
      for (auto i = before; i < session.papers.size(); ++i) fresh.push_back(session.papers[i].id);
      run_agent(agents::extraction, fmt::format("Extract the force-field parameters for '{}' from: {}", query,
                                                text::join(fresh, ", ")));
      wanted.clear();
      for (; seen_findings < session.findings.size(); ++seen_findings) {
        for (const auto& u : session.findings[seen_findings].unresolved) {
          if (asked.insert(u).second) wanted.push_back(u);
        }
      }
    }
    if (session.merged_parameters().empty()) return finish("no force-field parameters were extracted");

    auto writer = run_agent(agents::forcefield_writer,
                            fmt::format("Write the force field for '{}' into forcefield/. The recorded parameters "
                                        "are available through read_extraction_findings; scaffold files are in "
                                        "library:_scaffold.",
                                        query));
    if (reports_failure(writer)) return finish(fmt::format("force-field writer failed: {}", failure_text(writer)));
    try {
      auto bundle = forcefield::load_bundle(ctx_.workspace.work() / "forcefield");
      forcefield::validate_bundle(bundle);
      run_.bundle = std::move(bundle);
    } catch (const Error& e) {
      return finish(fmt::format("written force field is not usable: {}", e.what()));
    }
    return finish({});
  }

 private:
  agentcore::AgentOutcome run_agent(const std::string& agent, const std::string& task) {
    agentcore::ReactOptions opts;
    opts.memory = &memory_;
    auto out = agentcore::run_react(agent_config(agent, config_), task, registry_, provider_, opts);
    run_.transcripts.push_back({agent, out.transcript});
    if (out.terminated_by == agentcore::Termination::provider_error) run_.provider_failure = true;
    return out;
  }

  ResearchRun finish(std::string failure) {
    run_.failure = std::move(failure);
    run_.succeeded = run_.failure.empty();
    run_.findings = ctx_.session.findings;
    for (const auto& p : ctx_.session.papers) run_.papers.push_back(p.id);
    run_.memory = memory_.snapshot();
    return std::move(run_);
  }

  const TeamConfig& config_;
  agentcore::Provider& provider_;
  GlobalMemory& memory_;
  ToolContext ctx_;
  agentcore::ToolRegistry registry_;
  ResearchRun run_;
};

}  // namespace

simlint::OutcomeLabel TeamRun::overall() const noexcept {
  if (!succeeded || outcomes.empty()) return {false, false};
  simlint::OutcomeLabel o;
  for (const auto& x : outcomes) {
    o.correctly_configured = o.correctly_configured && x.correctly_configured;
    o.executable = o.executable && x.executable;
  }
  return o;
}

evalbench::ParameterSet ResearchRun::parameters() const {
  ResearchSession s;
  s.findings = findings;
  return s.merged_parameters();
}

TeamRun run_setup_team(const siminput::TaskRequest& request, const TeamConfig& config,
                       agentcore::Provider& provider, const fs::path& work, GlobalMemory* memory) {
  siminput::validate_task(request);
  require_roots(config, false);
  fs::create_directories(work);
  GlobalMemory own;
  return SetupTeam(request, config, provider, work, memory ? *memory : own).run();
}

ResearchRun run_research_team(const std::string& query, const TeamConfig& config, agentcore::Provider& provider,
                              LiteratureStore& literature, const fs::path& work, GlobalMemory* memory) {
  if (text::trim(query).empty()) throw Error(Errc::precondition, "research query is empty");
  require_roots(config, false);
  fs::create_directories(work);
  GlobalMemory own;
  return ResearchTeam(config, provider, literature, work, memory ? *memory : own).run(query);
}

std::string extracted_entry_name(std::string_view paper_id) {
  return "extracted/" + sanitize_id(paper_id);
}

CombinedRun run_combined(const siminput::TaskRequest& request, const TeamConfig& config,
                         agentcore::Provider& provider, LiteratureStore& literature, const fs::path& work) {
  if (request.forcefield.kind != siminput::ForceFieldDirective::Kind::research || request.forcefield.value.empty())
    throw Error(Errc::precondition, "the combined run needs a research force-field directive naming a paper");
  siminput::validate_task(request);
  require_roots(config, false);
  fs::create_directories(work);

  GlobalMemory memory;
  CombinedRun run;
  bool research_done = false;
  bool setup_done = false;

  agentcore::ToolRegistry registry;
  add_read_memory(registry, memory, agents::top_supervisor);
  registry.add(
      {kResearchTeamTool, "Run the research team; on success its force field is added to the library.",
       {{"query", "string", "paper or force field to look for; default: the request's source", false}}},
      [&](const json& a) {
        if (research_done) return ToolResult::error("error: the research team has already run");
        research_done = true;
        auto query = agentcore::arg_string(a, "query", request.forcefield.value);
        run.research = run_research_team(query, config, provider, literature, work / "research", &memory);
        if (!run.research.succeeded)
          return ToolResult::error(fmt::format("research failed: {}", run.research.failure));
        auto bundle = *run.research.bundle;
        run.registered = extracted_entry_name(run.research.papers.front());
        bundle.name = run.registered;
        bundle.description = fmt::format("Extracted from {}", run.research.papers.front());
        if (!run.research.findings.empty()) bundle.description += ": " + run.research.findings.front().summary;
        auto dest = config.library_root / run.registered;
        forcefield::render_bundle(bundle, dest);
        forcefield::write_descriptor(bundle, dest);
        return ToolResult::ok(fmt::format("research finished; force field registered as library:{}", run.registered),
                              {{"force-field", "library:" + run.registered}});
      });
  registry.add({kSetupTeamTool, "Run the setup team with the force field registered by the research team.", {}},
               [&](const json&) {
                 if (!run.research.succeeded)
                   return ToolResult::error("error: setup needs a force field from a successful research run");
                 if (setup_done) return ToolResult::error("error: the setup team has already run");
                 setup_done = true;
                 auto req = request;
                 req.forcefield = {siminput::ForceFieldDirective::Kind::library, run.registered};
                 run.setup = run_setup_team(req, config, provider, work / "setup", &memory);
                 if (!run.setup->succeeded)
                   return ToolResult::error(fmt::format("setup failed: {}", run.setup->failure));
                 std::vector<agentcore::Artifact> arts;
                 for (const auto& f : run.setup->folders) arts.push_back({"simulation-folder", "setup/" + f});
                 return ToolResult::ok(fmt::format("setup finished: {} folder(s), {} finding(s)",
                                                   run.setup->folders.size(), run.setup->findings.size()),
                                       std::move(arts));
               });

  agentcore::ReactOptions opts;
  opts.memory = &memory;
  auto top = agentcore::run_react(
      agent_config(agents::top_supervisor, config),
      fmt::format("Request:\n{}\n\nBuild the force field from '{}' and prepare the simulation folders.",
                  siminput::task_to_json(request).dump(2), request.forcefield.value),
      registry, provider, opts);
  run.transcripts.push_back({agents::top_supervisor, top.transcript});
  run.provider_failure = top.terminated_by == agentcore::Termination::provider_error ||
                         run.research.provider_failure || (run.setup && run.setup->provider_failure);

  if (research_done && !run.research.succeeded) run.failure = fmt::format("research failed: {}", run.research.failure);
  else if (!research_done && !top.succeeded()) run.failure = fmt::format("top supervisor stopped: {}", top.error.empty() ? std::string(agentcore::to_string(top.terminated_by)) : top.error);
  else if (!research_done) run.failure = "the research team was never run";
  else if (!run.setup) run.failure = "the setup team was never run";
  else if (!run.setup->succeeded) run.failure = fmt::format("setup failed: {}", run.setup->failure);
  run.succeeded = run.failure.empty();
  run.memory = memory.snapshot();
  return run;
}

std::unique_ptr<LiteratureStore> open_literature(const TeamConfig& config, const fs::path& download_store) {
  if (config.live_literature) {
    SemanticScholarConfig s;
    s.endpoint = config.literature_endpoint;
    s.api_key = config.literature_api_key;
    s.store = download_store;
    return std::make_unique<SemanticScholarClient>(s);
  }
  return std::make_unique<FixtureCorpus>(config.corpus_root);
}

}  // namespace simcrew::crews
