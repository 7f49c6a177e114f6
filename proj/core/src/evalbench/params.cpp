#include "simcrew/evalbench/params.hpp"

#include "simcrew/error.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>

namespace simcrew::evalbench {
namespace {

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(text::trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace

std::string canonical_key(std::string_view raw) {
  auto key = text::to_lower(text::trim(raw));
  for (std::string_view prefix : {"bond:", "angle:"}) {
    if (key.rfind(prefix, 0) != 0) continue;
    auto members = split_on(std::string_view(key).substr(prefix.size()), '-');
    if (prefix == "bond:") {
      std::sort(members.begin(), members.end());
    } else if (members.size() == 3 && members[2] < members[0]) {
      std::swap(members[0], members[2]);
    }
    return std::string(prefix) + text::join(members, "-");
  }
  if (key.find('|') != std::string::npos) {
    auto members = split_on(key, '|');
    std::sort(members.begin(), members.end());
    return text::join(members, "|");
  }
  return key;
}

std::string_view default_units(std::string_view name) noexcept {
  if (name == "epsilon") return "K";
  if (name == "sigma" || name == "bond-length") return "Å";
  if (name == "charge") return "e";
  if (name == "angle") return "deg";
  return "";
}

void ParameterSet::add(ParameterSlot slot) {
  slot.key = canonical_key(slot.key);
  if (slot.units.empty())
    throw Error(Errc::precondition, fmt::format("parameter {} {} has no units", slot.key, slot.name));
  Identity id{slot.key, slot.name};
  if (slots_.count(id))
    throw Error(Errc::duplicate, fmt::format("parameter {} {} recorded twice", slot.key, slot.name));
  slots_.emplace(std::move(id), std::move(slot));
}

void ParameterSet::set(ParameterSlot slot) {
  slot.key = canonical_key(slot.key);
  if (slot.units.empty())
    throw Error(Errc::precondition, fmt::format("parameter {} {} has no units", slot.key, slot.name));
  Identity id{slot.key, slot.name};
  slots_[std::move(id)] = std::move(slot);
}

const ParameterSlot* ParameterSet::find(const std::string& key, const std::string& name) const {
  auto it = slots_.find({canonical_key(key), name});
  return it == slots_.end() ? nullptr : &it->second;
}

std::vector<ParameterSlot> ParameterSet::slots() const {
  std::vector<ParameterSlot> out;
  out.reserve(slots_.size());
  for (const auto& [id, s] : slots_) out.push_back(s);
  return out;
}

nlohmann::json parameter_set_to_json(const ParameterSet& set) {
  auto arr = nlohmann::json::array();
  for (const auto& s : set.slots())
    arr.push_back({{"key", s.key}, {"name", s.name}, {"value", s.value}, {"units", s.units}});
  return arr;
}

ParameterSet parameter_set_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(Errc::format, "parameter set must be an array of slots");
  ParameterSet set;
  try {
    for (const auto& s : j) {
      auto name = s.at("name").get<std::string>();
      auto units = s.value("units", std::string(default_units(name)));
      set.add({s.at("key").get<std::string>(), name, s.at("value").get<double>(), units});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format, fmt::format("malformed parameter slot: {}", e.what()));
  }
  return set;
}

ParameterSet parameter_set_from_bundle(const forcefield::ForceFieldBundle& bundle) {
  ParameterSet set;
  for (const auto& s : bundle.self_params) {
    set.add({s.type, "epsilon", s.params.epsilon, "K"});
    set.add({s.type, "sigma", s.params.sigma, "Å"});
  }
  for (const auto& o : bundle.overrides) {
    auto key = o.type_a + "|" + o.type_b;
    set.add({key, "epsilon", o.params.epsilon, "K"});
    set.add({key, "sigma", o.params.sigma, "Å"});
  }
  for (const auto& a : bundle.pseudo_atoms) set.add({a.name, "charge", a.charge, "e"});
  for (const auto& [name, mol] : bundle.molecules) {
    for (const auto& b : mol.bonds) {
      if (b.first < 0 || b.second < 0 || static_cast<std::size_t>(std::max(b.first, b.second)) >= mol.atoms.size())
        continue;
      const auto& x = mol.atoms[static_cast<std::size_t>(b.first)];
      const auto& y = mol.atoms[static_cast<std::size_t>(b.second)];
      auto key = "bond:" + x.type + "-" + y.type;
      if (set.find(key, "bond-length")) continue;  // symmetric bonds repeat the same length
      set.add({key, "bond-length", distance(x.position, y.position), "Å"});
    }
  }
  return set;
}

ScoreReport score_parameters(const ParameterSet& extracted, const ParameterSet& reference, double rel_tol) {
  if (!(rel_tol > 0)) throw Error(Errc::precondition, "rel_tol must be positive");
  ScoreReport r;
  for (const auto& ref : reference.slots()) {
    const auto* ext = extracted.find(ref.key, ref.name);
    if (!ext) {
      ++r.missed;
      continue;
    }
    if (ext->units != ref.units) {
      ++r.wrong;
      r.details.push_back(fmt::format("{} {}: units {} differ from reference {}", ref.key, ref.name, ext->units,
                                      ref.units));
    } else if (std::abs(ext->value - ref.value) <= rel_tol * std::max(1.0, std::abs(ref.value))) {
      ++r.matched;
    } else {
      ++r.wrong;
      r.details.push_back(fmt::format("{} {}: {} instead of {}", ref.key, ref.name,
                                      text::format_number(ext->value), text::format_number(ref.value)));
    }
  }
  for (const auto& ext : extracted.slots()) {
    if (!reference.find(ext.key, ext.name)) ++r.extra;
  }
  int union_size = r.matched + r.wrong + r.missed + r.extra;
  r.iou = union_size == 0 ? 1.0 : static_cast<double>(r.matched) / union_size;
  return r;
}

}  // namespace simcrew::evalbench
