#include "simcrew/forcefield/json.hpp"

#include "simcrew/error.hpp"

namespace simcrew::forcefield {

using nlohmann::json;

void to_json(json& j, const PseudoAtom& a) {
  j = json{{"name", a.name},
           {"print", a.print},
           {"element", a.element},
           {"chem", a.chem},
           {"oxidation", a.oxidation},
           {"mass", a.mass},
           {"charge", a.charge},
           {"polarization", a.polarization},
           {"b_factor", a.b_factor},
           {"radius", a.radius},
           {"connectivity", a.connectivity},
           {"anisotropic", a.anisotropic},
           {"anisotropic_type", a.anisotropic_type},
           {"tinker_type", a.tinker_type}};
}

void from_json(const json& j, PseudoAtom& a) {
  const PseudoAtom defaults;
  a.name = j.at("name").get<std::string>();
  a.print = j.value("print", defaults.print);
  a.element = j.value("element", a.name);
  a.chem = j.value("chem", a.element);
  a.oxidation = j.value("oxidation", defaults.oxidation);
  a.mass = j.value("mass", defaults.mass);
  a.charge = j.value("charge", defaults.charge);
  a.polarization = j.value("polarization", defaults.polarization);
  a.b_factor = j.value("b_factor", defaults.b_factor);
  a.radius = j.value("radius", defaults.radius);
  a.connectivity = j.value("connectivity", defaults.connectivity);
  a.anisotropic = j.value("anisotropic", defaults.anisotropic);
  a.anisotropic_type = j.value("anisotropic_type", defaults.anisotropic_type);
  a.tinker_type = j.value("tinker_type", defaults.tinker_type);
}

void to_json(json& j, const LjParams& p) { j = json{{"epsilon", p.epsilon}, {"sigma", p.sigma}}; }

void from_json(const json& j, LjParams& p) {
  p.epsilon = j.at("epsilon").get<double>();
  p.sigma = j.at("sigma").get<double>();
}

void to_json(json& j, const MoleculeDefinition& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms) atoms.push_back({{"type", a.type}, {"position", a.position}});
  json bonds = json::array();
  for (const auto& b : m.bonds) bonds.push_back({{"atoms", {b.first, b.second}}, {"kind", b.kind}});
  j = json{{"name", m.name},
           {"critical_temperature", m.critical_temperature},
           {"critical_pressure", m.critical_pressure},
           {"acentric_factor", m.acentric_factor},
           {"rigid", m.rigid},
           {"atoms", atoms},
           {"bonds", bonds}};
}

void from_json(const json& j, MoleculeDefinition& m) {
  m.name = j.at("name").get<std::string>();
  m.critical_temperature = j.value("critical_temperature", 0.0);
  m.critical_pressure = j.value("critical_pressure", 0.0);
  m.acentric_factor = j.value("acentric_factor", 0.0);
  m.rigid = j.value("rigid", true);
  m.atoms.clear();
  for (const auto& a : j.at("atoms")) {
    MoleculeAtom atom;
    atom.type = a.at("type").get<std::string>();
    if (a.contains("position")) atom.position = a.at("position").get<std::array<double, 3>>();
    m.atoms.push_back(std::move(atom));
  }
  m.bonds.clear();
  if (j.contains("bonds")) {
    for (const auto& b : j.at("bonds")) {
      const auto pair = b.at("atoms").get<std::array<int, 2>>();
      m.bonds.push_back(Bond{pair[0], pair[1], b.value("kind", std::string("RIGID_BOND"))});
    }
  }
}

void to_json(json& j, const ForceFieldBundle& b) {
  json self = json::array();
  for (const auto& s : b.self_params) {
    self.push_back({{"type", s.type}, {"epsilon", s.params.epsilon}, {"sigma", s.params.sigma}});
  }
  json overrides = json::array();
  for (const auto& o : b.overrides) {
    overrides.push_back({{"types", {o.type_a, o.type_b}},
                         {"epsilon", o.params.epsilon},
                         {"sigma", o.params.sigma}});
  }
  json molecules = json::array();
  for (const auto& [name, m] : b.molecules) molecules.push_back(m);
  j = json{{"name", b.name},
           {"description", b.description},
           {"truncation", to_string(b.truncation)},
           {"tail_corrections", b.tail_corrections},
           {"mixing_rule", to_string(b.mixing_rule)},
           {"pseudo_atoms", b.pseudo_atoms},
           {"self_params", self},
           {"overrides", overrides},
           {"molecules", molecules}};
}

ForceFieldBundle bundle_from_json(const json& j) {
  try {
    ForceFieldBundle b;
    b.name = j.value("name", std::string{});
    b.description = j.value("description", std::string{});
    if (j.contains("truncation")) {
      auto t = truncation_from_string(j.at("truncation").get<std::string>());
      if (!t) throw Error(Errc::format, "truncation must be shifted or truncated");
      b.truncation = *t;
    }
    b.tail_corrections = j.value("tail_corrections", false);
    if (j.contains("mixing_rule")) {
      auto r = mixing_rule_from_string(j.at("mixing_rule").get<std::string>());
      if (!r) throw Error(Errc::format, "unknown mixing rule");
      b.mixing_rule = *r;
    }
    b.pseudo_atoms = j.value("pseudo_atoms", json::array()).get<std::vector<PseudoAtom>>();
    for (const auto& s : j.value("self_params", json::array())) {
      b.self_params.push_back(SelfInteraction{s.at("type").get<std::string>(), s.get<LjParams>()});
    }
    for (const auto& o : j.value("overrides", json::array())) {
      const auto types = o.at("types").get<std::array<std::string, 2>>();
      b.overrides.push_back(PairOverride{types[0], types[1], o.get<LjParams>(), "lennard-jones"});
    }
    for (const auto& m : j.value("molecules", json::array())) {
      auto molecule = m.get<MoleculeDefinition>();
      b.molecules[molecule.name] = std::move(molecule);
    }
    return b;
  } catch (const json::exception& e) {
    throw Error(Errc::format, std::string("malformed force-field document: ") + e.what());
  }
}

}  // namespace simcrew::forcefield
