#pragma once

#include "simcrew/forcefield/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace simcrew::forcefield {

namespace fs = std::filesystem;

/// Per-force-field descriptor file holding name and description.
inline constexpr std::string_view kDescriptorFile = "metadata.json";

struct Collision {
  std::string kind;  // pseudo-atom, self-params, override, molecule, mixing-rule
  std::string key;
  std::string kept_from;
  std::string dropped_from;
};

/// Explicit choice for settings that differ between combined bundles.
struct CombineResolution {
  std::optional<Truncation> truncation;
  std::optional<bool> tail_corrections;
};

struct CombineResult {
  ForceFieldBundle bundle;
  std::vector<Collision> collisions;
};

/// Union of all bundles; on a name collision with different content the
/// earlier bundle wins and the collision is reported. Throws
/// Error(incompatible) when truncation or tail settings differ and the
/// resolution does not decide them.
CombineResult combine_force_fields(const ForceFieldBundle& primary,
                                   const std::vector<ForceFieldBundle>& extras,
                                   const CombineResolution& resolution = {});

/// Writes pseudo_atoms.def, force_field_mixing_rules.def, force_field.def and
/// one <molecule>.def per molecule. Returns the written paths in that order.
std::vector<fs::path> render_bundle(const ForceFieldBundle& bundle, const fs::path& destination);

/// Inverse of render_bundle. Name and description come from the descriptor
/// when present, otherwise the folder name is used.
ForceFieldBundle load_bundle(const fs::path& folder);

void write_descriptor(const ForceFieldBundle& bundle, const fs::path& folder);

struct CatalogEntry {
  std::string name;  // path relative to the library root, e.g. "extracted/epm2"
  std::string description;
  std::vector<std::string> atom_types;
  fs::path folder;
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  std::vector<std::string> warnings;
};

/// One entry per sub-folder carrying a descriptor; folders whose name starts
/// with '_' or '.' are skipped. Throws Error(io) if the root is unreadable.
Catalog library_catalog(const fs::path& library_root);

/// Types named in any of the three force-field files (the file kind is taken
/// from its name).
std::vector<std::string> atoms_in_ff_file(const fs::path& file);

}  // namespace simcrew::forcefield
