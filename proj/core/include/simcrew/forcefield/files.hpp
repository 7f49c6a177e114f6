#pragma once

// Readers and writers for the RASPA definition files. Writers emit fixed
// comment lines so output is byte-reproducible.

#include "simcrew/forcefield/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::forcefield {

inline constexpr std::string_view kPseudoAtomsFile = "pseudo_atoms.def";
inline constexpr std::string_view kMixingRulesFile = "force_field_mixing_rules.def";
inline constexpr std::string_view kOverridesFile = "force_field.def";

std::vector<PseudoAtom> parse_pseudo_atoms(std::string_view text);
std::string render_pseudo_atoms(const std::vector<PseudoAtom>& atoms);

struct InteractionSet {
  Truncation truncation = Truncation::shifted;
  bool tail_corrections = false;
  std::vector<SelfInteraction> self_params;
  MixingRule mixing_rule = MixingRule::lorentz_berthelot;
  std::vector<PairOverride> overrides;
  std::vector<std::string> rule_overwrites;
  std::vector<std::string> mixing_overwrites;
};

InteractionSet parse_interaction_files(std::string_view mixing_text,
                                       std::optional<std::string_view> overrides_text);
std::string render_mixing_rules(const ForceFieldBundle& bundle);
std::string render_overrides(const ForceFieldBundle& bundle);

/// Molecule name is not stored in the file; the caller supplies it (file stem).
MoleculeDefinition parse_molecule(std::string_view text, std::string name);
std::string render_molecule(const MoleculeDefinition& molecule);

}  // namespace simcrew::forcefield
