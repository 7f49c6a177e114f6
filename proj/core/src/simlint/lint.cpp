#include "simcrew/simlint/lint.hpp"

#include "simcrew/chemio/geometry.hpp"
#include "simcrew/chemio/structure.hpp"
#include "simcrew/error.hpp"
#include "simcrew/forcefield/files.hpp"
#include "simcrew/io.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <map>
#include <set>

namespace simcrew::simlint {
namespace {

using siminput::MoveKind;
using siminput::Placeholder;
using siminput::SimulationSpec;
using siminput::TaskKind;

// filename -> readable location
using FileView = std::map<std::string, fs::path>;

class Linter {
 public:
  Linter(std::string folder, const FileView& files, const std::optional<siminput::TaskRequest>& task,
         const LintOptions& options)
      : folder_(std::move(folder)), files_(files), task_(task), options_(options) {}

  std::vector<Finding> run(const SimulationSpec& spec) {
    check_placeholders(spec);
    auto structure = check_framework(spec);
    check_moves(spec);
    check_task(spec);
    check_coverage(spec, structure);
    check_cells(spec, structure);
    check_unused(spec);
    check_molecules(spec);
    std::stable_sort(findings_.begin(), findings_.end(), [](const Finding& a, const Finding& b) {
      return rule_number(a.rule) < rule_number(b.rule);
    });
    return std::move(findings_);
  }

  std::vector<Finding> run_empty() { return std::move(findings_); }

  void add(std::string_view rule, std::string message, std::optional<std::string> file = {}) {
    const auto* info = find_rule(rule);
    findings_.push_back({std::string(rule), info->severity, std::move(message), folder_, std::move(file)});
  }

 private:
  static int rule_number(const std::string& id) { return std::stoi(id.substr(1)); }

  bool has(const std::string& name) const { return files_.count(name) > 0; }

  bool local_forcefield(const SimulationSpec& spec) const {
    return text::iequals(spec.forcefield, "Local");
  }

  void check_placeholders(const SimulationSpec& spec) {
    if (options_.template_mode) return;
    for (const auto& token : siminput::placeholders_in(spec))
      add("R0", fmt::format("placeholder {} is still unbound", token), std::string(siminput::kInputFile));
  }

  std::optional<chemio::CrystalStructure> check_framework(const SimulationSpec& spec) {
    const auto* name = std::get_if<std::string>(&spec.framework_name);
    if (!name) return std::nullopt;
    auto cif = *name + ".cif";
    if (!has(cif)) {
      if (!options_.template_mode)
        add("R1", fmt::format("framework CIF {} referenced by FrameworkName is not in the folder", cif), cif);
      return std::nullopt;
    }
    try {
      return chemio::parse_cif(io::read_file(files_.at(cif)));
    } catch (const Error& e) {
      add("R1", fmt::format("framework CIF {} cannot be read: {}", cif, e.what()), cif);
      return std::nullopt;
    }
  }

  void check_moves(const SimulationSpec& spec) {
    for (const auto& c : spec.components) {
      if (!c.has_positive_move())
        add("R2", fmt::format("component {} ({}) has no move with positive probability", c.index,
                              c.molecule_name));
    }
  }

  void check_task(const SimulationSpec& spec) {
    if (!task_) return;
    if (task_->kind == TaskKind::heat_of_adsorption) {
      for (const auto& c : spec.components) {
        if (c.probability(MoveKind::widom) <= 0)
          add("R3", fmt::format("heat-of-adsorption component {} ({}) has no Widom insertion move",
                                c.index, c.molecule_name));
        if (c.probability(MoveKind::swap) > 0)
          add("R3", fmt::format("heat-of-adsorption component {} ({}) uses swap moves", c.index,
                                c.molecule_name));
      }
      if (spec.pressure)
        add("R3", "heat-of-adsorption input sets ExternalPressure; Widom runs need no reservoir");
    }
    if (task_->kind == TaskKind::isotherm && spec.components.size() > 1) {
      std::vector<std::string> names;
      for (const auto& c : spec.components) names.push_back(c.molecule_name);
      add("R9", fmt::format("isotherm input combines {} components ({}) into one mixture simulation; "
                            "the task asks for separate single-component runs",
                            spec.components.size(), text::join(names, ", ")));
    }
  }

  void check_coverage(const SimulationSpec& spec, const std::optional<chemio::CrystalStructure>& structure) {
    if (!local_forcefield(spec)) return;
    const auto pseudo = std::string(forcefield::kPseudoAtomsFile);
    const auto mixing = std::string(forcefield::kMixingRulesFile);
    if (!has(mixing)) add("R4", fmt::format("force-field file {} is missing", mixing), mixing);
    if (!has(pseudo)) {
      add("R4", fmt::format("force-field file {} is missing", pseudo), pseudo);
      return;
    }
    std::set<std::string> known;
    try {
      for (const auto& a : forcefield::parse_pseudo_atoms(io::read_file(files_.at(pseudo))))
        known.insert(a.name);
    } catch (const Error& e) {
      add("R4", fmt::format("{} cannot be read: {}", pseudo, e.what()), pseudo);
      return;
    }
    auto report = [&](const std::set<std::string>& types, const std::string& file) {
      std::vector<std::string> missing;
      for (const auto& t : types)
        if (!known.count(t)) missing.push_back(t);
      if (!missing.empty())
        add("R4", fmt::format("atom types not defined in {}: {}", pseudo, text::join(missing, ", ")), file);
    };
    if (structure) {
      std::set<std::string> types;
      for (const auto& [type, n] : chemio::atom_type_census(*structure)) types.insert(type);
      report(types, std::get<std::string>(spec.framework_name) + ".cif");
    }
    for (const auto& c : spec.components) {
      auto def = c.molecule_name + ".def";
      if (!has(def)) continue;
      try {
        auto mol = forcefield::parse_molecule(io::read_file(files_.at(def)), c.molecule_name);
        std::set<std::string> types;
        for (const auto& a : mol.atoms) types.insert(a.type);
        report(types, def);
      } catch (const Error& e) {
        add("R10", fmt::format("molecule file {} cannot be read: {}", def, e.what()), def);
      }
    }
  }

  void check_cells(const SimulationSpec& spec, const std::optional<chemio::CrystalStructure>& structure) {
    if (spec.cutoff > options_.cutoff_warning)
      add("R6", fmt::format("cutoff {} Å exceeds the usual range (threshold {} Å)",
                            text::format_number(spec.cutoff), text::format_number(options_.cutoff_warning)));
    const auto* cells = std::get_if<siminput::UnitCells>(&spec.unit_cells);
    if (!structure || !cells || !(spec.cutoff > 0)) return;
    chemio::Replication need{};
    chemio::Widths h{};
    try {
      need = chemio::replication_for_cutoff(structure->lattice, spec.cutoff);
      h = chemio::perpendicular_widths(structure->lattice);
    } catch (const Error& e) {
      add("R5", fmt::format("cannot evaluate the cell geometry: {}", e.what()));
      return;
    }
    static constexpr char kAxis[] = {'a', 'b', 'c'};
    for (int i = 0; i < 3; ++i) {
      if ((*cells)[i] * h[i] < 2 * spec.cutoff)
        add("R5", fmt::format("{} unit cell(s) along {} give {} Å, less than twice the {} Å cutoff",
                              (*cells)[i], kAxis[i], text::format_number((*cells)[i] * h[i]),
                              text::format_number(spec.cutoff)));
    }
    if (std::equal(cells->begin(), cells->end(), need.begin(), [](int n, int m) { return n <= m; }) ||
        std::any_of(cells->begin(), cells->end(), [](int n) { return n < 1; }))
      return;
    for (int i = 0; i < 3; ++i) {
      if ((*cells)[i] > need[i]) {
        add("R7", fmt::format("UnitCells {} {} {} exceed the minimum {} {} {} for a {} Å cutoff",
                              (*cells)[0], (*cells)[1], (*cells)[2], need[0], need[1], need[2],
                              text::format_number(spec.cutoff)));
        break;
      }
    }
  }

  void check_unused(const SimulationSpec& spec) {
    std::set<std::string> used;
    if (const auto* name = std::get_if<std::string>(&spec.framework_name)) used.insert(*name + ".cif");
    if (local_forcefield(spec)) {
      for (auto f : {forcefield::kPseudoAtomsFile, forcefield::kMixingRulesFile, forcefield::kOverridesFile})
        used.emplace(f);
    }
    for (const auto& c : spec.components) used.insert(c.molecule_name + ".def");
    for (const auto& [name, path] : files_) {
      auto ext = text::to_lower(fs::path(name).extension().string());
      if ((ext == ".def" || ext == ".cif") && !used.count(name))
        add("R8", fmt::format("{} is present but not referenced by simulation.input", name), name);
    }
  }

  void check_molecules(const SimulationSpec& spec) {
    for (const auto& c : spec.components) {
      if (!text::iequals(c.molecule_definition, "Local")) continue;
      if (options_.template_mode && siminput::is_placeholder_token(c.molecule_name)) continue;
      auto def = c.molecule_name + ".def";
      if (!has(def))
        add("R10", fmt::format("molecule file {} for component {} is missing", def, c.index), def);
    }
  }

  std::string folder_;
  const FileView& files_;
  const std::optional<siminput::TaskRequest>& task_;
  const LintOptions& options_;
  std::vector<Finding> findings_;
};

}  // namespace

std::string_view to_string(Severity s) noexcept {
  switch (s) {
    case Severity::execution_error: return "execution-error";
    case Severity::setup_error: return "setup-error";
    case Severity::warning: return "warning";
  }
  return "";
}

const std::vector<RuleInfo>& rule_catalog() {
  static const std::vector<RuleInfo> rules = {
      {"R0", Severity::execution_error, "simulation.input is missing, unreadable or has unbound placeholders"},
      {"R1", Severity::execution_error, "framework CIF named by FrameworkName is present and readable"},
      {"R2", Severity::setup_error, "every component has at least one positive move probability"},
      {"R3", Severity::setup_error, "heat-of-adsorption inputs use Widom insertion without swap or pressure"},
      {"R4", Severity::execution_error, "force-field files define every framework and adsorbate atom type"},
      {"R5", Severity::execution_error, "unit cells satisfy the minimum-image condition for the cutoff"},
      {"R6", Severity::warning, "cutoff is within the usual range"},
      {"R7", Severity::warning, "unit cells do not exceed the required minimum"},
      {"R8", Severity::warning, "every definition and CIF file in the folder is referenced"},
      {"R9", Severity::setup_error, "isotherm inputs hold one adsorbate unless a mixture was requested"},
      {"R10", Severity::execution_error, "molecule definition files for local components are present"},
  };
  return rules;
}

const RuleInfo* find_rule(std::string_view id) noexcept {
  for (const auto& r : rule_catalog()) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::vector<Finding> validate_folder(const fs::path& folder, const std::optional<siminput::TaskRequest>& task,
                                     const LintOptions& options) {
  FileView files;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(folder, ec)) {
    if (e.is_regular_file()) files.emplace(e.path().filename().string(), e.path());
  }
  Linter lint(folder.string(), files, task, options);
  const auto input = std::string(siminput::kInputFile);
  if (ec || !files.count(input)) {
    lint.add("R0", ec ? fmt::format("folder cannot be read: {}", ec.message())
                      : fmt::format("{} is missing", input),
             input);
    return lint.run_empty();
  }
  SimulationSpec spec;
  try {
    spec = siminput::parse_simulation_input(io::read_file(files.at(input)));
  } catch (const Error& e) {
    lint.add("R0", fmt::format("{} cannot be parsed: {}", input, e.what()), input);
    return lint.run_empty();
  }
  files.erase(input);
  return lint.run(spec);
}

std::vector<Finding> validate_plan(const siminput::SimulationPlan& plan,
                                   const std::optional<siminput::TaskRequest>& task,
                                   const LintOptions& options) {
  FileView files;
  for (const auto& f : plan.files) {
    if (fs::exists(f.source)) files.emplace(f.filename, f.source);
  }
  return Linter(plan.folder, files, task, options).run(plan.spec);
}

OutcomeLabel classify_outcome(const std::vector<Finding>& findings) noexcept {
  OutcomeLabel label;
  for (const auto& f : findings) {
    if (f.severity == Severity::execution_error) label.executable = false;
    if (f.severity == Severity::setup_error) label.correctly_configured = false;
  }
  // An input that cannot run cannot be the requested setup either.
  if (!label.executable) label.correctly_configured = false;
  return label;
}

bool has_errors(const std::vector<Finding>& findings) noexcept {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.is_error(); });
}

std::string render_report(const std::vector<Finding>& findings) {
  std::string out;
  for (const auto& f : findings)
    out += fmt::format("RULE {} {} {} {}\n", f.rule, to_string(f.severity), f.folder, f.message);
  return out;
}

nlohmann::json report_json(const std::vector<Finding>& findings) {
  auto arr = nlohmann::json::array();
  for (const auto& f : findings) {
    nlohmann::json j = {{"rule", f.rule}, {"severity", to_string(f.severity)}, {"folder", f.folder},
                        {"message", f.message}};
    if (f.file) j["file"] = *f.file;
    arr.push_back(std::move(j));
  }
  auto label = classify_outcome(findings);
  return {{"findings", arr},
          {"correctly_configured", label.correctly_configured},
          {"executable", label.executable}};
}

const std::vector<FailureNote>& failure_notes() {
  static const std::vector<FailureNote> notes = {
      {"adsorbate-files-copied", "every adsorbate definition copied into each single-adsorbate folder",
       {"R8"}, {true, true}},
      {"zero-probability-moves", "all moves listed with zero probability except Widom insertion",
       {}, {true, true}},
      {"no-moves", "adsorbate component without any move", {"R2", "R3"}, {false, true}},
      {"cif-not-copied", "framework CIF files missing from the simulation folders", {"R1"}, {false, false}},
      {"redundant-ff-files", "unused force-field files left in the folder", {"R8"}, {true, true}},
      {"minimum-unit-cells", "a floor on unit cells per direction beyond what the cutoff needs", {"R7"},
       {true, true}},
      {"mixture-instead-of-single", "one mixture simulation instead of one run per adsorbate", {"R9"},
       {false, true}},
      {"wide-cutoff", "24 Å cutoff instead of the usual 12 Å", {"R6"}, {true, true}},
      {"widom-misconfigured", "heat-of-adsorption component without Widom insertion", {"R3"}, {false, true}},
  };
  return notes;
}

}  // namespace simcrew::simlint
