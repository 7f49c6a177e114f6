#include "simcrew/forcefield/types.hpp"

#include "simcrew/error.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <set>

namespace simcrew::forcefield {

std::string_view to_string(Truncation t) noexcept {
  return t == Truncation::shifted ? "shifted" : "truncated";
}

std::string_view to_string(MixingRule r) noexcept {
  return r == MixingRule::jorgensen ? "Jorgensen" : "Lorentz-Berthelot";
}

std::optional<Truncation> truncation_from_string(std::string_view s) noexcept {
  if (text::iequals(s, "shifted")) return Truncation::shifted;
  if (text::iequals(s, "truncated")) return Truncation::truncated;
  return std::nullopt;
}

std::optional<MixingRule> mixing_rule_from_string(std::string_view s) noexcept {
  if (text::iequals(s, "Lorentz-Berthelot")) return MixingRule::lorentz_berthelot;
  if (text::iequals(s, "Jorgensen")) return MixingRule::jorgensen;
  return std::nullopt;
}

const PseudoAtom* ForceFieldBundle::find_atom(std::string_view type) const noexcept {
  for (const auto& a : pseudo_atoms) {
    if (a.name == type) return &a;
  }
  return nullptr;
}

const LjParams* ForceFieldBundle::find_self(std::string_view type) const noexcept {
  for (const auto& s : self_params) {
    if (s.type == type) return &s.params;
  }
  return nullptr;
}

const PairOverride* ForceFieldBundle::find_override(std::string_view a,
                                                    std::string_view b) const noexcept {
  for (const auto& o : overrides) {
    if (o.same_pair(a, b)) return &o;
  }
  return nullptr;
}

bool same_file_content(const ForceFieldBundle& x, const ForceFieldBundle& y) {
  ForceFieldBundle a = x;
  ForceFieldBundle b = y;
  a.name = b.name = "";
  a.description = b.description = "";
  return a == b;
}

void validate_bundle(const ForceFieldBundle& bundle) {
  std::set<std::string> names;
  for (const auto& a : bundle.pseudo_atoms) {
    if (!names.insert(a.name).second) {
      throw Error(Errc::duplicate, fmt::format("pseudo atom '{}' defined twice", a.name));
    }
    if (a.mass < 0.0) {
      throw Error(Errc::format, fmt::format("pseudo atom '{}' has negative mass", a.name));
    }
  }
  auto require = [&](const std::string& type, std::string_view where) {
    if (!names.count(type)) {
      throw Error(Errc::missing_type,
                  fmt::format("type '{}' used in {} is not a pseudo atom", type, where));
    }
  };
  std::set<std::string> self_types;
  for (const auto& s : bundle.self_params) {
    require(s.type, "mixing rules");
    if (!self_types.insert(s.type).second) {
      throw Error(Errc::duplicate, fmt::format("type '{}' has two mixing-rule rows", s.type));
    }
  }
  for (std::size_t i = 0; i < bundle.overrides.size(); ++i) {
    const auto& o = bundle.overrides[i];
    require(o.type_a, "force_field.def");
    require(o.type_b, "force_field.def");
    for (std::size_t j = 0; j < i; ++j) {
      if (bundle.overrides[j].same_pair(o.type_a, o.type_b)) {
        throw Error(Errc::duplicate,
                    fmt::format("pair {}-{} overridden twice", o.type_a, o.type_b));
      }
    }
  }
  for (const auto& [name, molecule] : bundle.molecules) {
    if (molecule.atoms.empty()) {
      throw Error(Errc::format, fmt::format("molecule '{}' has no atoms", name));
    }
    for (const auto& atom : molecule.atoms) {
      if (!names.count(atom.type)) {
        throw Error(Errc::dangling_reference,
                    fmt::format("molecule '{}' uses unknown pseudo atom '{}'", name, atom.type));
      }
    }
  }
}

}  // namespace simcrew::forcefield
