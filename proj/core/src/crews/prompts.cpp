#include "simcrew/crews/prompts.hpp"

#include "simcrew/error.hpp"

#include <fmt/core.h>

#include <map>

namespace simcrew::crews {
namespace {

// Shared description of the work folder so every agent agrees on where
// things go.
constexpr const char* kLayout =
    "Paths: 'library:<name>' is the force-field library, 'structures:<file>' the framework CIF library, "
    "'examples:<file>' the example inputs; all of them are read-only. Any other path is inside your team's "
    "work folder: structures/ holds the selected CIFs, forcefield/ the force-field files, "
    "template/<adsorbate>/ one simulation.input template per adsorbate, runs/ the final simulation folders.";

struct Role {
  const char* prompt;
  std::vector<std::string> tools;
};

const std::map<std::string, Role>& roles() {
  static const std::map<std::string, Role> r = {
      {agents::supervisor,
       {"You coordinate the experiment setup team for adsorption simulations in porous crystals. Read the "
        "request, then hand the work to your experts one at a time with the delegate tool, in this order: "
        "structure_expert, forcefield_expert, input_expert, coding_expert. Give each a precise instruction. "
        "Each hand-off is reviewed before you get the result back. When all four are done, answer with a short "
        "summary of the prepared folders. If a stage cannot be completed, answer starting with FAILED and the "
        "reason.",
        {kDelegateTool, kReadMemoryTool}}},
      {agents::structure_expert,
       {"You select framework structures. Find the requested frameworks in the structure library and copy them "
        "into structures/. Check that each CIF reads and report its cell. If a requested framework does not "
        "exist, answer starting with FAILED and name it.",
        {"list_structures", "copy_structures", "get_unit_cell_size", "read_atoms_in_file", "count_atom_type_in_cif",
         "list_directory"}}},
      {agents::forcefield_expert,
       {"You provide the force field. Pick library force fields that cover every framework atom type and every "
        "adsorbate; combine them into forcefield/ when more than one is needed. Each adsorbate needs its "
        "molecule definition file. If nothing suitable exists, answer starting with FAILED.",
        {"get_all_force_field_descriptions", "get_atoms_in_ff_file", "read_atoms_in_file", "combine_force_fields",
         "read_file", "copy_file", "list_directory"}}},
      {agents::input_expert,
       {"You write simulation.input templates. Start from a similar example input. Write one template per "
        "adsorbate under template/<adsorbate>/ unless the request asks for a mixture. Leave the framework name "
        "as {FRAMEWORK} and the unit cells as {UNITCELLS}; they are filled in per structure later. Isotherms "
        "need swap moves and the requested pressures; heats of adsorption use Widom insertions and no pressure.",
        {"list_all_example_simulation_inputs", "read_file", "render_simulation_input", "write_file",
         "list_directory"}}},
      {agents::coding_expert,
       {"You produce the final simulation folders. Replicate every template in template/ over the structures "
        "in structures/ into runs/, so each folder holds simulation.input, its framework CIF, the force-field "
        "files and the molecule definitions it uses.",
        {"replicate_template", "get_minimum_unit_cells", "list_directory", "read_file", "write_file", "copy_file"}}},
      {agents::evaluator,
       {"You review the output of one team member. A lint report is provided; inspect the files if needed. "
        "Answer APPROVE when the output is correct for the request. Otherwise answer REVISE: followed by the "
        "concrete corrections.",
        {"read_file", "list_directory", "validate_simulation_folder", "read_atoms_in_file", "get_unit_cell_size",
         "get_atoms_in_ff_file"}}},
      {agents::paper_search,
       {"You find publications. Search the literature for the requested force field or reference, choose the "
        "best match and download it. Answer with the identifier of the downloaded paper, or start with FAILED "
        "if nothing relevant exists.",
        {"semantic_scholar_search", "download_paper", "read_paper_headers"}}},
      {agents::extraction,
       {"You extract force-field parameters. Read the relevant sections of the downloaded papers and record "
        "every Lennard-Jones epsilon (K) and sigma (Å), partial charge (e) and bond length (Å) with "
        "record_parameters, using the paper's atom type names. Pair interactions use keys like 'A|B', bonds "
        "'bond:A-B'. If the paper takes values from another publication, list that work under unresolved.",
        {"read_paper_headers", "read_paper_section", "record_parameters", "read_extraction_findings"}}},
      {agents::forcefield_writer,
       {"You write force-field files. Read the recorded parameters and the scaffold files in library:_scaffold, "
        "then write a complete force field, including molecule definitions, into forcefield/ with "
        "write_force_field_files.",
        {"read_extraction_findings", "read_file", "list_directory", "write_force_field_files", "write_file",
         "copy_file"}}},
      {agents::top_supervisor,
       {"You oversee a two-team workflow. First run the research team to build a force field from the "
        "literature, then run the setup team, which will use the registered force field. Do not start the "
        "setup team if research failed. Finish with a short summary, or start with FAILED.",
        {kResearchTeamTool, kSetupTeamTool, kReadMemoryTool}}},
  };
  return r;
}

}  // namespace

agentcore::AgentConfig agent_config(const std::string& agent, const TeamConfig& config) {
  const auto& r = roles();
  auto it = r.find(agent);
  if (it == r.end()) throw Error(Errc::config, fmt::format("unknown agent '{}'", agent));
  agentcore::AgentConfig a;
  a.name = agent;
  a.system_prompt = fmt::format("{}\n\n{}", it->second.prompt, kLayout);
  a.toolset = it->second.tools;
  a.max_steps = config.max_steps;
  a.model = config.model_for(agent);
  return a;
}

const std::vector<std::string>& setup_stage_agents() {
  static const std::vector<std::string> s = {agents::structure_expert, agents::forcefield_expert,
                                             agents::input_expert, agents::coding_expert};
  return s;
}

}  // namespace simcrew::crews
