#pragma once

// Deterministic operations exposed to the agents. Every tool resolves paths
// through the Workspace and reports virtual paths only.

#include "simcrew/agentcore/tools.hpp"
#include "simcrew/crews/literature.hpp"
#include "simcrew/crews/workspace.hpp"
#include "simcrew/evalbench/params.hpp"
#include "simcrew/siminput/plan.hpp"
#include "simcrew/siminput/task.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace simcrew::crews {

struct ExtractionFindings {
  std::string paper_id;
  std::string summary;
  evalbench::ParameterSet parameters;
  std::vector<std::string> molecule_notes;
  std::vector<std::string> unresolved;  // cited works still to be consulted
};

nlohmann::json findings_to_json(const ExtractionFindings& f);

/// Papers and findings gathered during one research run.
struct ResearchSession {
  std::vector<PaperRecord> papers;  // in download order
  std::vector<ExtractionFindings> findings;

  const PaperRecord* find(std::string_view id) const noexcept;
  /// Union of all recorded parameters; later findings override earlier ones.
  evalbench::ParameterSet merged_parameters() const;
};

struct ToolContext {
  Workspace workspace;
  LiteratureStore* literature = nullptr;  // research tools fail without one
  ResearchSession session;
  std::optional<siminput::TaskRequest> task;
  double cutoff = 12.0;
};

/// The ten literature and inspection tools every registry carries.
const std::vector<std::string>& catalog_tool_names();

/// Registers the catalog tools plus the file, setup and research tools. The
/// context must outlive the registry.
void register_domain_tools(agentcore::ToolRegistry& registry, ToolContext& context);
agentcore::ToolRegistry make_tool_registry(ToolContext& context);

/// Template folder plus the force-field files and molecule definitions it
/// needs from `forcefield_dir`, with "{FRAMEWORK}.cif" taken from
/// `structures_dir`.
siminput::SimulationTemplate complete_template(const fs::path& template_dir, const fs::path& structures_dir,
                                               const fs::path& forcefield_dir);

/// JSON accepted by render_simulation_input. Strings of the form "{TOKEN}"
/// become placeholders. Throws Error(format).
siminput::SimulationSpec spec_from_json(const nlohmann::json& j);

}  // namespace simcrew::crews
