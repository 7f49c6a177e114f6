#include "simcrew/forcefield/library.hpp"

#include "simcrew/error.hpp"
#include "simcrew/forcefield/files.hpp"
#include "simcrew/io.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace simcrew::forcefield {
namespace {

bool is_reserved_file(const std::string& filename) {
  return filename == kPseudoAtomsFile || filename == kMixingRulesFile ||
         filename == kOverridesFile;
}

std::string label_of(const ForceFieldBundle& b, std::size_t index) {
  return b.name.empty() ? fmt::format("bundle#{}", index) : b.name;
}

template <class T, class Key, class Same>
void merge_list(std::vector<T>& into, const std::vector<T>& from, Key key, Same same_key,
                std::string_view kind, const std::string& source,
                std::vector<std::string>& origins, std::vector<Collision>& collisions) {
  for (const auto& item : from) {
    auto it = std::find_if(into.begin(), into.end(), [&](const T& x) { return same_key(x, item); });
    if (it == into.end()) {
      into.push_back(item);
      origins.push_back(source);
    } else if (!(*it == item)) {
      collisions.push_back(Collision{std::string(kind), key(item),
                                     origins[static_cast<std::size_t>(it - into.begin())], source});
    }
  }
}

}  // namespace

CombineResult combine_force_fields(const ForceFieldBundle& primary,
                                   const std::vector<ForceFieldBundle>& extras,
                                   const CombineResolution& resolution) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const auto& e = extras[i];
    if (e.truncation != primary.truncation && !resolution.truncation) {
      throw Error(Errc::incompatible,
                  fmt::format("'{}' is {} but '{}' is {}; choose a truncation rule",
                              label_of(primary, 0), to_string(primary.truncation),
                              label_of(e, i + 1), to_string(e.truncation)));
    }
    if (e.tail_corrections != primary.tail_corrections && !resolution.tail_corrections) {
      throw Error(Errc::incompatible,
                  fmt::format("'{}' and '{}' disagree on tail corrections", label_of(primary, 0),
                              label_of(e, i + 1)));
    }
  }

  CombineResult result;
  ForceFieldBundle& out = result.bundle;
  out.name = primary.name;
  out.description = primary.description;
  out.truncation = resolution.truncation.value_or(primary.truncation);
  out.tail_corrections = resolution.tail_corrections.value_or(primary.tail_corrections);
  out.mixing_rule = primary.mixing_rule;

  std::vector<std::string> atom_origin, self_origin, override_origin;
  std::map<std::string, std::string> molecule_origin;

  auto absorb = [&](const ForceFieldBundle& b, const std::string& source) {
    if (b.mixing_rule != out.mixing_rule) {
      result.collisions.push_back(
          Collision{"mixing-rule", std::string(to_string(b.mixing_rule)), label_of(primary, 0), source});
    }
    merge_list(
        out.pseudo_atoms, b.pseudo_atoms, [](const PseudoAtom& a) { return a.name; },
        [](const PseudoAtom& x, const PseudoAtom& y) { return x.name == y.name; }, "pseudo-atom",
        source, atom_origin, result.collisions);
    merge_list(
        out.self_params, b.self_params, [](const SelfInteraction& s) { return s.type; },
        [](const SelfInteraction& x, const SelfInteraction& y) { return x.type == y.type; },
        "self-params", source, self_origin, result.collisions);
    merge_list(
        out.overrides, b.overrides,
        [](const PairOverride& o) { return o.type_a + "|" + o.type_b; },
        [](const PairOverride& x, const PairOverride& y) { return x.same_pair(y.type_a, y.type_b); },
        "override", source, override_origin, result.collisions);
    for (const auto& [name, molecule] : b.molecules) {
      auto [it, inserted] = out.molecules.emplace(name, molecule);
      if (inserted) {
        molecule_origin[name] = source;
      } else if (!(it->second == molecule)) {
        result.collisions.push_back(Collision{"molecule", name, molecule_origin[name], source});
      }
    }
    for (const auto& r : b.rule_overwrites) {
      if (std::find(out.rule_overwrites.begin(), out.rule_overwrites.end(), r) == out.rule_overwrites.end())
        out.rule_overwrites.push_back(r);
    }
    for (const auto& m : b.mixing_overwrites) {
      if (std::find(out.mixing_overwrites.begin(), out.mixing_overwrites.end(), m) == out.mixing_overwrites.end())
        out.mixing_overwrites.push_back(m);
    }
  };

  absorb(primary, label_of(primary, 0));
  for (std::size_t i = 0; i < extras.size(); ++i) absorb(extras[i], label_of(extras[i], i + 1));
  return result;
}

std::vector<fs::path> render_bundle(const ForceFieldBundle& bundle, const fs::path& destination) {
  validate_bundle(bundle);
  std::vector<fs::path> written;
  auto emit = [&](const fs::path& p, const std::string& content) {
    io::write_file(p, content);
    written.push_back(p);
  };
  emit(destination / kPseudoAtomsFile, render_pseudo_atoms(bundle.pseudo_atoms));
  emit(destination / kMixingRulesFile, render_mixing_rules(bundle));
  emit(destination / kOverridesFile, render_overrides(bundle));
  for (const auto& [name, molecule] : bundle.molecules) {
    emit(destination / (name + ".def"), render_molecule(molecule));
  }
  return written;
}

ForceFieldBundle load_bundle(const fs::path& folder) {
  if (!fs::is_directory(folder)) throw Error(Errc::io, "not a force-field folder: " + folder.string());
  ForceFieldBundle bundle;
  bundle.name = folder.filename().string();
  if (fs::exists(folder / kDescriptorFile)) {
    try {
      auto meta = nlohmann::json::parse(io::read_file(folder / kDescriptorFile));
      bundle.name = meta.value("name", bundle.name);
      bundle.description = meta.value("description", std::string{});
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::format, fmt::format("{}: {}", (folder / kDescriptorFile).string(), e.what()));
    }
  }
  bundle.pseudo_atoms = parse_pseudo_atoms(io::read_file(folder / kPseudoAtomsFile));
  const auto mixing = io::read_file(folder / kMixingRulesFile);
  std::optional<std::string> overrides;
  if (fs::exists(folder / kOverridesFile)) overrides = io::read_file(folder / kOverridesFile);
  auto set = parse_interaction_files(mixing, overrides ? std::optional<std::string_view>(*overrides)
                                                       : std::nullopt);
  bundle.truncation = set.truncation;
  bundle.tail_corrections = set.tail_corrections;
  bundle.self_params = std::move(set.self_params);
  bundle.mixing_rule = set.mixing_rule;
  bundle.overrides = std::move(set.overrides);
  bundle.rule_overwrites = std::move(set.rule_overwrites);
  bundle.mixing_overwrites = std::move(set.mixing_overwrites);

  std::vector<fs::path> molecule_files;
  for (const auto& entry : fs::directory_iterator(folder)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".def" && !is_reserved_file(name)) {
      molecule_files.push_back(entry.path());
    }
  }
  std::sort(molecule_files.begin(), molecule_files.end());
  for (const auto& p : molecule_files) {
    auto stem = p.stem().string();
    bundle.molecules.emplace(stem, parse_molecule(io::read_file(p), stem));
  }
  validate_bundle(bundle);
  return bundle;
}

void write_descriptor(const ForceFieldBundle& bundle, const fs::path& folder) {
  nlohmann::ordered_json meta;
  meta["name"] = bundle.name;
  meta["description"] = bundle.description;
  io::write_file(folder / kDescriptorFile, meta.dump(2) + "\n");
}

namespace {

void scan_library(const fs::path& root, const fs::path& dir, Catalog& catalog) {
  std::vector<fs::path> children;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '_' || name.front() == '.') continue;
    children.push_back(entry.path());
  }
  std::sort(children.begin(), children.end());
  for (const auto& child : children) {
    const auto rel = fs::relative(child, root).generic_string();
    if (!fs::exists(child / kDescriptorFile)) {
      const auto before = catalog.entries.size();
      scan_library(root, child, catalog);
      if (catalog.entries.size() == before) {
        catalog.warnings.push_back(fmt::format("{}: missing {}", rel, kDescriptorFile));
      }
      continue;
    }
    try {
      auto meta = nlohmann::json::parse(io::read_file(child / kDescriptorFile));
      CatalogEntry entry;
      entry.name = rel;
      entry.description = meta.value("description", std::string{});
      entry.folder = child;
      for (const auto& a : parse_pseudo_atoms(io::read_file(child / kPseudoAtomsFile))) {
        entry.atom_types.push_back(a.name);
      }
      catalog.entries.push_back(std::move(entry));
    } catch (const std::exception& e) {
      catalog.warnings.push_back(fmt::format("{}: {}", rel, e.what()));
    }
  }
}

}  // namespace

Catalog library_catalog(const fs::path& library_root) {
  std::error_code ec;
  if (!fs::is_directory(library_root, ec)) {
    throw Error(Errc::io, "force-field library not readable: " + library_root.string());
  }
  Catalog catalog;
  try {
    scan_library(library_root, library_root, catalog);
  } catch (const fs::filesystem_error& e) {
    throw Error(Errc::io, e.what());
  }
  return catalog;
}

std::vector<std::string> atoms_in_ff_file(const fs::path& file) {
  const auto name = file.filename().string();
  const auto content = io::read_file(file);
  std::vector<std::string> types;
  auto add = [&](const std::string& t) {
    if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
  };
  if (name == kPseudoAtomsFile) {
    for (const auto& a : parse_pseudo_atoms(content)) add(a.name);
  } else if (name == kMixingRulesFile) {
    for (const auto& s : parse_interaction_files(content, std::nullopt).self_params) add(s.type);
  } else if (name == kOverridesFile) {
    // Parse with a neutral mixing file so only the pair rows matter.
    const auto set = parse_interaction_files("shifted\nno\n0\nLorentz-Berthelot\n", content);
    for (const auto& o : set.overrides) {
      add(o.type_a);
      add(o.type_b);
    }
  } else if (file.extension() == ".def") {
    for (const auto& a : parse_molecule(content, file.stem().string()).atoms) add(a.type);
  } else {
    throw Error(Errc::format, "not a force-field file: " + name);
  }
  return types;
}

}  // namespace simcrew::forcefield
