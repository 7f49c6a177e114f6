#pragma once

#include "simcrew/chemio/structure.hpp"
#include "simcrew/forcefield/types.hpp"
#include "simcrew/siminput/spec.hpp"
#include "simcrew/siminput/task.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace simcrew::siminput {

namespace fs = std::filesystem;

inline constexpr std::string_view kInputFile = "simulation.input";

enum class FileRole { framework_cif, force_field_file, molecule_def };
std::string_view to_string(FileRole role) noexcept;

struct RequiredFile {
  FileRole role = FileRole::framework_cif;
  std::string filename;
  fs::path source;

  bool operator==(const RequiredFile&) const = default;
};

/// One fully bound simulation folder.
struct SimulationPlan {
  std::string folder;
  SimulationSpec spec;
  std::vector<RequiredFile> files;
};

struct StructureSource {
  chemio::CrystalStructure structure;
  fs::path cif;
};

/// Default move mixes for the task kinds.
std::map<MoveKind, double> isotherm_moves();
std::map<MoveKind, double> widom_moves();

/// One plan per structure x adsorbate (one per structure for mixture tasks).
/// Unit cells come from the minimum-image replication for `cutoff`.
std::vector<SimulationPlan> plan_batch(const TaskRequest& task,
                                       std::span<const StructureSource> structures,
                                       std::span<const std::string> adsorbates,
                                       const forcefield::ForceFieldBundle& bundle,
                                       const fs::path& bundle_dir,
                                       double cutoff = kDefaultCutoff);

/// Placeholder token -> concrete value, e.g. {"{UNITCELLS}", "2 2 3"}.
using TemplateBinding = std::map<std::string, std::string>;

struct SimulationTemplate {
  SimulationSpec spec;
  std::vector<RequiredFile> files;  // names and sources may contain tokens
};

struct Instantiation {
  SimulationPlan plan;
  std::vector<std::string> warnings;  // unused bindings
};

/// Throws Error(unbound_placeholder) naming the first token without a binding.
Instantiation instantiate_template(const SimulationTemplate& tmpl, const TemplateBinding& bindings,
                                   int condition_index = 0);

/// Reads <folder>/simulation.input and classifies the other definition files.
/// An unbound framework gets a "{FRAMEWORK}.cif" entry sourced from
/// `structures_dir`.
SimulationTemplate load_template(const fs::path& folder, const fs::path& structures_dir);

/// Writes <batch_root>/<plan.folder>/ with simulation.input and copies of all
/// required files. Returns the folder.
fs::path materialize_plan(const SimulationPlan& plan, const fs::path& batch_root);

std::string plan_folder_name(const std::string& framework, const std::vector<std::string>& molecules,
                             int condition_index);

struct ExampleInput {
  std::string name;
  std::string description;
  std::string text;
};

/// One entry per regular file in `root` (sorted); the description is the first
/// comment line. Throws Error(io) if the root cannot be read.
std::vector<ExampleInput> example_inputs_catalog(const fs::path& root);

}  // namespace simcrew::siminput
