#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::forcefield {

enum class Truncation { truncated, shifted };
enum class MixingRule { lorentz_berthelot, jorgensen };

std::string_view to_string(Truncation t) noexcept;
std::string_view to_string(MixingRule r) noexcept;
std::optional<Truncation> truncation_from_string(std::string_view s) noexcept;
std::optional<MixingRule> mixing_rule_from_string(std::string_view s) noexcept;

/// One row of pseudo_atoms.def. Units: mass g/mol, charge e.
struct PseudoAtom {
  std::string name;
  bool print = true;
  std::string element;
  std::string chem;
  double oxidation = 0.0;
  double mass = 0.0;
  double charge = 0.0;
  double polarization = 0.0;
  double b_factor = 1.0;
  double radius = 1.0;
  int connectivity = 0;
  double anisotropic = 0.0;
  std::string anisotropic_type = "absolute";
  int tinker_type = 0;

  bool operator==(const PseudoAtom&) const = default;
};

/// Lennard-Jones parameters: epsilon in K, sigma in Å.
struct LjParams {
  double epsilon = 0.0;
  double sigma = 1.0;

  bool operator==(const LjParams&) const = default;
};

struct SelfInteraction {
  std::string type;
  LjParams params;

  bool operator==(const SelfInteraction&) const = default;
};

/// Explicit cross interaction; (a, b) and (b, a) name the same pair.
struct PairOverride {
  std::string type_a;
  std::string type_b;
  LjParams params;
  std::string potential = "lennard-jones";

  bool same_pair(std::string_view x, std::string_view y) const noexcept {
    return (type_a == x && type_b == y) || (type_a == y && type_b == x);
  }
  bool operator==(const PairOverride&) const = default;
};

struct MoleculeAtom {
  std::string type;
  std::array<double, 3> position{};  // Å

  bool operator==(const MoleculeAtom&) const = default;
};

struct Bond {
  int first = 0;
  int second = 0;
  std::string kind = "RIGID_BOND";

  bool operator==(const Bond&) const = default;
};

struct MoleculeDefinition {
  std::string name;
  double critical_temperature = 0.0;  // K
  double critical_pressure = 0.0;     // Pa
  double acentric_factor = 0.0;
  std::vector<MoleculeAtom> atoms;
  bool rigid = true;
  std::vector<Bond> bonds;

  bool operator==(const MoleculeDefinition&) const = default;
};

/// Everything needed to write the RASPA definition files for one force field.
struct ForceFieldBundle {
  std::string name;
  std::string description;
  Truncation truncation = Truncation::shifted;
  bool tail_corrections = false;
  MixingRule mixing_rule = MixingRule::lorentz_berthelot;
  std::vector<PseudoAtom> pseudo_atoms;
  std::vector<SelfInteraction> self_params;
  std::vector<PairOverride> overrides;
  std::map<std::string, MoleculeDefinition> molecules;
  // force_field.def sections carried through verbatim
  std::vector<std::string> rule_overwrites;
  std::vector<std::string> mixing_overwrites;

  const PseudoAtom* find_atom(std::string_view type) const noexcept;
  const LjParams* find_self(std::string_view type) const noexcept;
  const PairOverride* find_override(std::string_view a, std::string_view b) const noexcept;

  bool operator==(const ForceFieldBundle&) const = default;
};

/// File-level content: everything except name/description, which live in the
/// library descriptor.
bool same_file_content(const ForceFieldBundle& x, const ForceFieldBundle& y);

/// Throws Error(missing_type / duplicate / dangling_reference) when the bundle
/// invariants do not hold.
void validate_bundle(const ForceFieldBundle& bundle);

}  // namespace simcrew::forcefield
