#include "simcrew/siminput/plan.hpp"

#include "simcrew/chemio/geometry.hpp"
#include "simcrew/error.hpp"
#include "simcrew/forcefield/files.hpp"
#include "simcrew/io.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <set>

namespace simcrew::siminput {
namespace {

bool is_force_field_file(std::string_view name) {
  return name == forcefield::kPseudoAtomsFile || name == forcefield::kMixingRulesFile ||
         name == forcefield::kOverridesFile;
}

std::vector<RequiredFile> bundle_files(const fs::path& bundle_dir) {
  std::vector<RequiredFile> out;
  for (auto name : {forcefield::kPseudoAtomsFile, forcefield::kMixingRulesFile,
                    forcefield::kOverridesFile}) {
    out.push_back({FileRole::force_field_file, std::string(name), bundle_dir / name});
  }
  return out;
}

bool bundle_has_charges(const forcefield::ForceFieldBundle& bundle) {
  return std::any_of(bundle.pseudo_atoms.begin(), bundle.pseudo_atoms.end(),
                     [](const auto& a) { return a.charge != 0.0; });
}

// Replaces every placeholder token in `s`, recording the tokens consumed.
class Substituter {
 public:
  explicit Substituter(const TemplateBinding& bindings) : bindings_(bindings) {}

  std::string apply(const std::string& s) {
    std::string out;
    std::size_t pos = 0;
    while (pos < s.size()) {
      auto open = s.find('{', pos);
      if (open == std::string::npos) break;
      auto close = s.find('}', open);
      if (close == std::string::npos) break;
      auto token = s.substr(open, close - open + 1);
      if (!is_placeholder_token(token)) {
        out.append(s, pos, open + 1 - pos);
        pos = open + 1;
        continue;
      }
      out.append(s, pos, open - pos);
      out += lookup(token);
      pos = close + 1;
    }
    out.append(s, std::min(pos, s.size()));
    return out;
  }

  const std::string& lookup(const std::string& token) {
    auto it = bindings_.find(token);
    if (it == bindings_.end())
      throw Error(Errc::unbound_placeholder, fmt::format("no binding for placeholder {}", token));
    used_.insert(token);
    return it->second;
  }

  const std::set<std::string>& used() const noexcept { return used_; }

 private:
  const TemplateBinding& bindings_;
  std::set<std::string> used_;
};

[[noreturn]] void bad_binding(const std::string& token, const std::string& value, std::string_view want) {
  throw Error(Errc::format, fmt::format("binding {}='{}' is not {}", token, value, want));
}

std::vector<std::string> binding_tokens(const std::string& value) {
  auto v = value;
  std::replace(v.begin(), v.end(), ',', ' ');
  return text::split_ws(v);
}

}  // namespace

std::string_view to_string(FileRole role) noexcept {
  switch (role) {
    case FileRole::framework_cif: return "framework-cif";
    case FileRole::force_field_file: return "force-field-file";
    case FileRole::molecule_def: return "molecule-def";
  }
  return "";
}

std::map<MoveKind, double> isotherm_moves() {
  return {{MoveKind::translation, 0.5}, {MoveKind::reinsertion, 0.5}, {MoveKind::swap, 1.0}};
}

std::map<MoveKind, double> widom_moves() { return {{MoveKind::widom, 1.0}}; }

std::string plan_folder_name(const std::string& framework, const std::vector<std::string>& molecules,
                             int condition_index) {
  return fmt::format("{}_{}_{}", framework, text::join(molecules, "-"), condition_index);
}

std::vector<SimulationPlan> plan_batch(const TaskRequest& task,
                                       std::span<const StructureSource> structures,
                                       std::span<const std::string> adsorbates,
                                       const forcefield::ForceFieldBundle& bundle,
                                       const fs::path& bundle_dir, double cutoff) {
  if (structures.empty()) throw Error(Errc::precondition, "no structures to plan for");
  if (adsorbates.empty()) throw Error(Errc::precondition, "no adsorbates to plan for");
  if (task.is_isotherm() && task.pressures.empty())
    throw Error(Errc::precondition, "isotherm task has no pressure points");
  for (const auto& a : adsorbates) {
    if (!bundle.molecules.count(a))
      throw Error(Errc::unknown_adsorbate,
                  fmt::format("adsorbate '{}' has no molecule definition in force field '{}'", a,
                              bundle.name));
  }

  const bool mixture = task.kind == TaskKind::mixture_isotherm;
  const auto charges = bundle_has_charges(bundle) ? ChargeMethod::ewald : ChargeMethod::none;
  std::vector<std::vector<std::string>> groups;
  if (mixture) groups.emplace_back(adsorbates.begin(), adsorbates.end());
  else
    for (const auto& a : adsorbates) groups.push_back({a});

  std::vector<SimulationPlan> plans;
  plans.reserve(structures.size() * groups.size());
  std::set<std::string> seen;
  for (const auto& src : structures) {
    auto framework = src.structure.name.empty() ? src.cif.stem().string() : src.structure.name;
    auto cells = chemio::replication_for_cutoff(src.structure.lattice, cutoff);
    for (const auto& group : groups) {
      SimulationPlan plan;
      plan.folder = plan_folder_name(framework, group, 0);
      if (!seen.insert(plan.folder).second)
        throw Error(Errc::duplicate, fmt::format("structure '{}' appears twice in the batch", framework));
      auto& spec = plan.spec;
      spec.cycles = task.cycles;
      spec.init_cycles = task.init_cycles;
      spec.cutoff = cutoff;
      spec.charge_method = charges;
      spec.framework_name = framework;
      spec.unit_cells = UnitCells{cells[0], cells[1], cells[2]};
      spec.temperature = task.temperature;
      if (task.is_isotherm()) spec.pressure = task.pressures;
      for (const auto& molecule : group) {
        ComponentSpec c;
        c.index = static_cast<int>(spec.components.size());
        c.molecule_name = molecule;
        c.moves = task.is_isotherm() ? isotherm_moves() : widom_moves();
        spec.components.push_back(std::move(c));
      }
      plan.files.push_back({FileRole::framework_cif, framework + ".cif", src.cif});
      auto ff = bundle_files(bundle_dir);
      plan.files.insert(plan.files.end(), ff.begin(), ff.end());
      for (const auto& molecule : group)
        plan.files.push_back({FileRole::molecule_def, molecule + ".def", bundle_dir / (molecule + ".def")});
      plans.push_back(std::move(plan));
    }
  }
  return plans;
}

Instantiation instantiate_template(const SimulationTemplate& tmpl, const TemplateBinding& bindings,
                                   int condition_index) {
  Substituter sub(bindings);
  Instantiation result;
  auto& spec = result.plan.spec;
  spec = tmpl.spec;

  // Bind in rendering order so the first missing token reported is the
  // first one a reader would meet in the file.
  for (auto& l : spec.global_extras) l = sub.apply(l);
  if (auto* p = std::get_if<Placeholder>(&spec.framework_name)) spec.framework_name = sub.lookup(p->token);
  if (auto* p = std::get_if<Placeholder>(&spec.unit_cells)) {
    const auto& value = sub.lookup(p->token);
    auto parts = binding_tokens(value);
    if (parts.size() != 3) bad_binding(p->token, value, "three integers");
    UnitCells cells{};
    for (int i = 0; i < 3; ++i) {
      auto n = text::parse_int(parts[i]);
      if (!n || *n < 1) bad_binding(p->token, value, "three positive integers");
      cells[i] = static_cast<int>(*n);
    }
    spec.unit_cells = cells;
  }
  if (spec.temperature) {
    if (auto* p = std::get_if<Placeholder>(&*spec.temperature)) {
      const auto& value = sub.lookup(p->token);
      auto t = text::parse_double(text::trim(value));
      if (!t) bad_binding(p->token, value, "a temperature");
      spec.temperature = *t;
    }
  }
  if (spec.pressure) {
    if (auto* p = std::get_if<Placeholder>(&*spec.pressure)) {
      const auto& value = sub.lookup(p->token);
      std::vector<double> points;
      for (const auto& part : binding_tokens(value)) {
        auto d = text::parse_double(part);
        if (!d) bad_binding(p->token, value, "a list of pressures");
        points.push_back(*d);
      }
      if (points.empty()) bad_binding(p->token, value, "a list of pressures");
      spec.pressure = std::move(points);
    }
  }
  for (auto& l : spec.framework_extras) l = sub.apply(l);
  for (auto& c : spec.components) {
    c.molecule_name = sub.apply(c.molecule_name);
    for (auto& l : c.extras) l = sub.apply(l);
  }
  for (const auto& f : tmpl.files) {
    result.plan.files.push_back(
        {f.role, sub.apply(f.filename), fs::path(sub.apply(f.source.string()))});
  }

  std::vector<std::string> molecules;
  for (const auto& c : spec.components) molecules.push_back(c.molecule_name);
  result.plan.folder =
      plan_folder_name(std::get<std::string>(spec.framework_name), molecules, condition_index);

  for (const auto& [token, value] : bindings) {
    if (!sub.used().count(token))
      result.warnings.push_back(fmt::format("binding {} is not used by the template", token));
  }
  return result;
}

SimulationTemplate load_template(const fs::path& folder, const fs::path& structures_dir) {
  SimulationTemplate tmpl;
  tmpl.spec = parse_simulation_input(io::read_file(folder / kInputFile));

  std::error_code ec;
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(folder, ec)) {
    if (e.is_regular_file()) entries.push_back(e.path());
  }
  if (ec) throw Error(Errc::io, fmt::format("cannot list template folder {}: {}", folder.string(), ec.message()));
  std::sort(entries.begin(), entries.end());

  bool have_cif = false;
  for (const auto& p : entries) {
    auto name = p.filename().string();
    auto ext = text::to_lower(p.extension().string());
    if (ext == ".cif") {
      tmpl.files.push_back({FileRole::framework_cif, name, p});
      have_cif = true;
    } else if (is_force_field_file(name)) {
      tmpl.files.push_back({FileRole::force_field_file, name, p});
    } else if (ext == ".def") {
      tmpl.files.push_back({FileRole::molecule_def, name, p});
    }
  }
  if (!have_cif) {
    std::string stem = std::holds_alternative<Placeholder>(tmpl.spec.framework_name)
                           ? std::get<Placeholder>(tmpl.spec.framework_name).token
                           : std::get<std::string>(tmpl.spec.framework_name);
    tmpl.files.insert(tmpl.files.begin(),
                      {FileRole::framework_cif, stem + ".cif", structures_dir / (stem + ".cif")});
  }
  return tmpl;
}

fs::path materialize_plan(const SimulationPlan& plan, const fs::path& batch_root) {
  if (auto left = placeholders_in(plan.spec); !left.empty())
    throw Error(Errc::unbound_placeholder,
                fmt::format("plan {} still contains placeholder {}", plan.folder, left.front()));
  auto dir = batch_root / plan.folder;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  for (const auto& f : plan.files) {
    fs::copy_file(f.source, dir / f.filename, fs::copy_options::overwrite_existing, ec);
    if (ec)
      throw Error(Errc::io, fmt::format("cannot copy {} ({}) into {}: {}", f.source.string(),
                                        to_string(f.role), dir.string(), ec.message()));
  }
  io::write_file(dir / kInputFile, render_simulation_input(plan.spec));
  return dir;
}

std::vector<ExampleInput> example_inputs_catalog(const fs::path& root) {
  std::error_code ec;
  std::vector<fs::path> files;
  fs::directory_iterator it(root, ec);
  if (ec) throw Error(Errc::io, fmt::format("cannot read examples root {}: {}", root.string(), ec.message()));
  for (const auto& e : it) {
    if (e.is_regular_file() && e.path().filename().string().front() != '.') files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<ExampleInput> out;
  for (const auto& p : files) {
    ExampleInput ex;
    ex.name = p.filename().string();
    ex.text = io::read_file(p);
    for (const auto& line : text::split_lines(ex.text)) {
      auto t = text::trim(line);
      if (!t.empty() && t.front() == '#') {
        t.remove_prefix(1);
        ex.description = std::string(text::trim(t));
        break;
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace simcrew::siminput
