#include "simcrew/agentcore/react.hpp"

#include "simcrew/error.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>

namespace simcrew::agentcore {
namespace {

std::string first_line(std::string_view s, std::size_t cap = 300) {
  auto t = text::trim(s);
  auto nl = t.find('\n');
  std::string out(text::trim(t.substr(0, nl)));
  if (out.size() > cap) out = out.substr(0, cap) + "...";
  return out;
}

void finish(const AgentConfig& agent, AgentOutcome& outcome, GlobalMemory* memory) {
  if (!memory) return;
  MemoryReport r;
  r.author = agent.name;
  r.outputs = outcome.artifacts;
  switch (outcome.terminated_by) {
    case Termination::final_answer:
      r.summary = first_line(outcome.final_answer);
      if (r.summary.rfind("FAILED", 0) == 0)
        r.status = ReportStatus::failed;
      else if (r.summary.rfind("NEEDS INPUT", 0) == 0)
        r.status = ReportStatus::needs_input;
      else
        r.status = ReportStatus::done;
      break;
    case Termination::step_limit:
      r.summary = fmt::format("stopped after {} model call(s) without a final answer", outcome.provider_calls);
      r.status = ReportStatus::failed;
      break;
    case Termination::provider_error:
      r.summary = fmt::format("provider error: {}", first_line(outcome.error));
      r.status = ReportStatus::failed;
      break;
  }
  memory->append(std::move(r));
}

}  // namespace

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::final_answer: return "final-answer";
    case Termination::step_limit: return "step-limit";
    case Termination::provider_error: return "provider-error";
  }
  return "";
}

AgentOutcome run_react(const AgentConfig& agent, const std::string& task, const ToolRegistry& registry,
                       Provider& provider, const ReactOptions& options) {
  if (agent.max_steps < 1)
    throw Error(Errc::precondition, fmt::format("agent '{}' needs max_steps > 0", agent.name));
  for (const auto& t : agent.toolset) {
    if (!registry.contains(t))
      throw Error(Errc::precondition, fmt::format("agent '{}' uses unregistered tool '{}'", agent.name, t));
  }
  const auto tools = registry.schemas(agent.toolset);

  AgentOutcome outcome;
  auto& transcript = outcome.transcript;
  transcript.push_back(ChatMessage::system(agent.system_prompt));
  if (options.memory) {
    transcript.push_back(ChatMessage::user(fmt::format("Shared team memory:\n{}\n\nTask:\n{}",
                                                       options.memory->render(agent.name, options.memory_budget),
                                                       task)));
  } else {
    transcript.push_back(ChatMessage::user(task));
  }
  transcript.insert(transcript.end(), options.preamble.begin(), options.preamble.end());

  outcome.terminated_by = Termination::step_limit;
  while (outcome.provider_calls < agent.max_steps) {
    ChatMessage reply;
    ++outcome.provider_calls;
    try {
      reply = provider.complete({agent.name, agent.model, transcript, tools});
    } catch (const ProviderError& e) {
      outcome.terminated_by = Termination::provider_error;
      outcome.error = e.what();
      break;
    }
    reply.role = Role::assistant;
    transcript.push_back(reply);
    if (reply.tool_calls.empty()) {
      outcome.final_answer = reply.content;
      outcome.terminated_by = Termination::final_answer;
      break;
    }
    for (const auto& call : reply.tool_calls) {
      ToolResult result;
      bool allowed = std::find(agent.toolset.begin(), agent.toolset.end(), call.name) != agent.toolset.end();
      if (!allowed)
        result = ToolResult::error(fmt::format("error: tool '{}' is not available to {}", call.name, agent.name));
      else
        result = registry.invoke(call.name, call.arguments);
      ++outcome.tool_invocations;
      outcome.artifacts.insert(outcome.artifacts.end(), result.artifacts.begin(), result.artifacts.end());
      transcript.push_back(ChatMessage::tool(call.id, std::move(result.content)));
    }
  }
  finish(agent, outcome, options.memory);
  return outcome;
}

Verdict parse_verdict(std::string_view answer) {
  auto t = text::trim(answer);
  if (t.substr(0, 7) == "APPROVE") return {true, std::string(text::trim(t.substr(7)))};
  if (t.substr(0, 7) == "REVISE:") return {false, std::string(text::trim(t.substr(7)))};
  return {false, std::string(t)};
}

ReviewResult evaluator_review(const AgentConfig& evaluator, const ReviewInput& input,
                              const ToolRegistry& registry, Provider& provider, GlobalMemory* memory) {
  std::string task = fmt::format("Review this output: {}\n", input.subject);
  if (!input.artifacts.empty()) {
    task += "Artifacts:\n";
    for (const auto& a : input.artifacts) task += fmt::format("- {}\n", a);
  }
  task += "Reply with APPROVE, or with REVISE: followed by concrete corrections.";

  ReactOptions options;
  options.memory = memory;
  const std::string call_id = "lint-0";
  options.preamble.push_back(ChatMessage::assistant("", {{call_id, std::string(kLintToolName), "{}"}}));
  options.preamble.push_back(
      ChatMessage::tool(call_id, input.lint_report.empty() ? "No findings." : input.lint_report));

  ReviewResult result;
  result.outcome = run_react(evaluator, task, registry, provider, options);
  if (result.outcome.succeeded()) {
    result.verdict = parse_verdict(result.outcome.final_answer);
  } else {
    result.verdict = {false, fmt::format("evaluator did not finish ({})", to_string(result.outcome.terminated_by))};
  }
  return result;
}

}  // namespace simcrew::agentcore
