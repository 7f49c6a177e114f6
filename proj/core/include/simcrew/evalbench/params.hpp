#pragma once

#include "simcrew/forcefield/types.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace simcrew::evalbench {

/// One extracted or reference parameter. Keys are canonical: lower-case
/// type names, pair members sorted and joined by '|', geometry keys
/// prefixed "bond:" or "angle:".
struct ParameterSlot {
  std::string key;
  std::string name;  // epsilon, sigma, charge, bond-length, angle, other:<label>
  double value = 0.0;
  std::string units;

  bool operator==(const ParameterSlot&) const = default;
};

std::string canonical_key(std::string_view raw);

/// Conventional units per parameter name ("K", "Å", "e", "deg"); empty for other:*.
std::string_view default_units(std::string_view name) noexcept;

class ParameterSet {
 public:
  using Identity = std::pair<std::string, std::string>;  // (key, name)

  /// Canonicalizes the key; throws Error(duplicate) on a repeated identity and
  /// Error(precondition) when units are empty.
  void add(ParameterSlot slot);
  /// Replaces an existing identity instead of rejecting it.
  void set(ParameterSlot slot);

  const ParameterSlot* find(const std::string& key, const std::string& name) const;
  std::size_t size() const noexcept { return slots_.size(); }
  bool empty() const noexcept { return slots_.empty(); }
  std::vector<ParameterSlot> slots() const;  // identity order

  bool operator==(const ParameterSet&) const = default;

 private:
  std::map<Identity, ParameterSlot> slots_;
};

nlohmann::json parameter_set_to_json(const ParameterSet& set);
/// Accepts an array of {key, name, value, units}; units default per name.
ParameterSet parameter_set_from_json(const nlohmann::json& j);

/// LJ self terms (single-site keys), explicit pair terms, every pseudo-atom
/// charge and every molecule bond length.
ParameterSet parameter_set_from_bundle(const forcefield::ForceFieldBundle& bundle);

struct ScoreReport {
  int matched = 0;
  int missed = 0;
  int wrong = 0;
  int extra = 0;
  double iou = 1.0;
  std::vector<std::string> details;  // one line per wrong slot
};

inline constexpr double kDefaultRelTol = 1e-3;

/// Identity is (key, name); a shared identity matches when
/// |ve - vr| <= rel_tol * max(1, |vr|) and units agree.
ScoreReport score_parameters(const ParameterSet& extracted, const ParameterSet& reference,
                             double rel_tol = kDefaultRelTol);

/// Exact fraction for rates reported over n runs.
struct Ratio {
  long num = 0;
  long den = 1;

  double value() const noexcept { return den == 0 ? 0.0 : static_cast<double>(num) / den; }
  bool operator==(const Ratio&) const = default;
};

}  // namespace simcrew::evalbench
