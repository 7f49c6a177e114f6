#pragma once

#include "simcrew/agentcore/memory.hpp"
#include "simcrew/agentcore/provider.hpp"
#include "simcrew/agentcore/tools.hpp"

#include <string>
#include <vector>

namespace simcrew::agentcore {

struct AgentConfig {
  std::string name;
  std::string system_prompt;
  std::vector<std::string> toolset;  // names resolved in the registry
  int max_steps = 12;
  std::string model;
};

enum class Termination { final_answer, step_limit, provider_error };

std::string_view to_string(Termination t) noexcept;

struct AgentOutcome {
  std::string final_answer;
  std::vector<ChatMessage> transcript;
  int tool_invocations = 0;
  int provider_calls = 0;
  Termination terminated_by = Termination::final_answer;
  std::string error;  // provider error text
  std::vector<Artifact> artifacts;

  bool succeeded() const noexcept { return terminated_by == Termination::final_answer; }
};

struct ReactOptions {
  GlobalMemory* memory = nullptr;          // report appended on termination; digest shown to the agent
  std::vector<ChatMessage> preamble;       // inserted after the task message
  std::size_t memory_budget = kDefaultMemoryBudget;
};

/// Throws Error(precondition) when a toolset name is not registered.
/// Provider transport errors end the run; replay divergence propagates.
AgentOutcome run_react(const AgentConfig& agent, const std::string& task, const ToolRegistry& registry,
                       Provider& provider, const ReactOptions& options = {});

struct Verdict {
  bool approved = false;
  std::string feedback;
};

/// Final answers beginning with APPROVE approve; `REVISE:` carries feedback;
/// anything else is a revise whose feedback is the raw text.
Verdict parse_verdict(std::string_view answer);

inline constexpr std::string_view kLintToolName = "lint_report";

struct ReviewInput {
  std::string subject;                    // what was produced and by whom
  std::vector<std::string> artifacts;     // paths the evaluator may inspect
  std::string lint_report;                // empty when there are no findings
};

struct ReviewResult {
  Verdict verdict;
  AgentOutcome outcome;
};

/// Runs the evaluator with the lint findings injected as an earlier tool
/// result.
ReviewResult evaluator_review(const AgentConfig& evaluator, const ReviewInput& input,
                              const ToolRegistry& registry, Provider& provider,
                              GlobalMemory* memory = nullptr);

}  // namespace simcrew::agentcore
