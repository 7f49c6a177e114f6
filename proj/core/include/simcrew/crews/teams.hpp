#pragma once

#include "simcrew/agentcore/memory.hpp"
#include "simcrew/agentcore/provider.hpp"
#include "simcrew/crews/config.hpp"
#include "simcrew/crews/literature.hpp"
#include "simcrew/crews/toolbox.hpp"
#include "simcrew/forcefield/types.hpp"
#include "simcrew/simlint/lint.hpp"
#include "simcrew/siminput/task.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace simcrew::crews {

namespace fs = std::filesystem;

struct AgentTranscript {
  std::string agent;
  std::vector<agentcore::ChatMessage> messages;
};

struct StageRecord {
  std::string agent;
  int attempts = 0;
  bool approved = false;
  std::string feedback;  // last evaluator feedback or failure text
};

struct TeamRun {
  bool succeeded = false;
  std::string failure;
  bool provider_failure = false;  // some agent stopped on a provider error
  std::vector<std::string> folders;             // runs/<name>, sorted
  std::vector<simlint::Finding> findings;       // folder names relative to the work root
  std::vector<simlint::OutcomeLabel> outcomes;  // one per folder
  std::vector<StageRecord> stages;              // in delegation order
  std::vector<AgentTranscript> transcripts;     // in completion order
  std::vector<agentcore::MemoryReport> memory;

  /// AND over the folders; a failed team or an empty batch is (false, false).
  simlint::OutcomeLabel overall() const noexcept;
};

/// Supervisor-led setup: structure, force field, input and coding experts
/// in that order, each gated by the evaluator, then a final lint of runs/.
/// `memory` defaults to a private log. Throws Error(precondition) for an
/// invalid request or missing roots; replay divergence propagates.
TeamRun run_setup_team(const siminput::TaskRequest& request, const TeamConfig& config,
                       agentcore::Provider& provider, const fs::path& work,
                       agentcore::GlobalMemory* memory = nullptr);

struct ResearchRun {
  bool succeeded = false;
  std::string failure;
  bool provider_failure = false;  // some agent stopped on a provider error
  std::optional<forcefield::ForceFieldBundle> bundle;
  std::vector<ExtractionFindings> findings;
  std::vector<std::string> papers;  // consulted, in download order
  int search_rounds = 0;
  std::vector<AgentTranscript> transcripts;
  std::vector<agentcore::MemoryReport> memory;

  evalbench::ParameterSet parameters() const;  // merged findings
};

/// Search, extraction and writing; unresolved references trigger further
/// search rounds up to config.search_rounds. The bundle is read back from
/// <work>/forcefield.
ResearchRun run_research_team(const std::string& query, const TeamConfig& config, agentcore::Provider& provider,
                              LiteratureStore& literature, const fs::path& work,
                              agentcore::GlobalMemory* memory = nullptr);

struct CombinedRun {
  bool succeeded = false;
  std::string failure;
  bool provider_failure = false;  // some agent stopped on a provider error
  ResearchRun research;
  std::optional<TeamRun> setup;  // absent when research did not succeed
  std::string registered;        // library entry, e.g. "extracted/10.1021_jp810871f"
  std::vector<AgentTranscript> transcripts;  // top supervisor
  std::vector<agentcore::MemoryReport> memory;
};

/// Top supervisor over both teams. The request's force-field directive must
/// be a research directive; its value is the literature query. Research runs
/// in <work>/research, setup in <work>/setup, and the extracted bundle is
/// registered under <library>/extracted/.
CombinedRun run_combined(const siminput::TaskRequest& request, const TeamConfig& config,
                         agentcore::Provider& provider, LiteratureStore& literature, const fs::path& work);

/// Library entry name for a paper identifier.
std::string extracted_entry_name(std::string_view paper_id);

/// Fixture corpus unless config.live_literature; live downloads are kept in
/// `download_store`.
std::unique_ptr<LiteratureStore> open_literature(const TeamConfig& config, const fs::path& download_store = {});

}  // namespace simcrew::crews
