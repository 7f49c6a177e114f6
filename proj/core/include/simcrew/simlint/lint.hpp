#pragma once

#include "simcrew/siminput/plan.hpp"
#include "simcrew/siminput/task.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::simlint {

namespace fs = std::filesystem;

enum class Severity { execution_error, setup_error, warning };

std::string_view to_string(Severity s) noexcept;

struct Finding {
  std::string rule;
  Severity severity = Severity::warning;
  std::string message;
  std::string folder;
  std::optional<std::string> file;

  bool is_error() const noexcept { return severity != Severity::warning; }
};

struct RuleInfo {
  std::string_view id;
  Severity severity;
  std::string_view summary;
};

/// R0 covers folders whose simulation.input is missing or unreadable.
const std::vector<RuleInfo>& rule_catalog();
const RuleInfo* find_rule(std::string_view id) noexcept;

struct LintOptions {
  double cutoff_warning = 20.0;  // Å, R6 fires above this
  bool template_mode = false;    // skip checks that need bound placeholders
};

/// Applies every rule to <folder>/simulation.input and the files beside it.
/// `task` enables the task-dependent rules (R3, R9). Never throws for folder
/// content problems; they become findings.
std::vector<Finding> validate_folder(const fs::path& folder,
                                     const std::optional<siminput::TaskRequest>& task,
                                     const LintOptions& options = {});

/// Same rules over an in-memory plan, reading required files from their sources.
std::vector<Finding> validate_plan(const siminput::SimulationPlan& plan,
                                   const std::optional<siminput::TaskRequest>& task,
                                   const LintOptions& options = {});

struct OutcomeLabel {
  bool correctly_configured = true;
  bool executable = true;

  bool operator==(const OutcomeLabel&) const = default;
};

OutcomeLabel classify_outcome(const std::vector<Finding>& findings) noexcept;

bool has_errors(const std::vector<Finding>& findings) noexcept;

/// `RULE <id> <severity> <folder> <message>` per finding.
std::string render_report(const std::vector<Finding>& findings);
nlohmann::json report_json(const std::vector<Finding>& findings);

/// Documented mapping from observed setup mistakes to the rules that catch
/// them. `rules` is empty for notes that describe valid-but-unusual setups.
struct FailureNote {
  std::string_view id;
  std::string_view summary;
  std::vector<std::string_view> rules;
  OutcomeLabel consequence;
};

const std::vector<FailureNote>& failure_notes();

}  // namespace simcrew::simlint
