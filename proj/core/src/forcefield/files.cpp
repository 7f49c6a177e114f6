#include "simcrew/forcefield/files.hpp"

#include "simcrew/error.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

namespace simcrew::forcefield {
namespace {

using text::format_number;

struct DataLine {
  std::size_t line = 0;
  std::vector<std::string> tokens;
};

// Non-blank, non-comment lines of a definition file.
class DataLines {
 public:
  explicit DataLines(std::string_view text) {
    auto lines = text::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto t = text::trim(lines[i]);
      if (t.empty() || t.front() == '#') continue;
      lines_.push_back(DataLine{i + 1, text::split_ws(t)});
    }
  }

  bool done() const noexcept { return pos_ >= lines_.size(); }

  const DataLine& next(std::string_view what) {
    if (done()) throw Error(Errc::format, fmt::format("unexpected end of file: expected {}", what));
    return lines_[pos_++];
  }

  std::size_t next_count(std::string_view what) {
    const auto& l = next(what);
    auto v = text::parse_int(l.tokens.front());
    if (!v || *v < 0) throw ParseError(l.line, fmt::format("{} '{}' is not a count", what, l.tokens.front()));
    return static_cast<std::size_t>(*v);
  }

  double next_number(std::string_view what) {
    const auto& l = next(what);
    auto v = text::parse_double(l.tokens.front());
    if (!v) throw ParseError(l.line, fmt::format("{} '{}' is not numeric", what, l.tokens.front()));
    return *v;
  }

 private:
  std::vector<DataLine> lines_;
  std::size_t pos_ = 0;
};

double number_at(const DataLine& l, std::size_t i, std::string_view field) {
  auto v = text::parse_double(l.tokens.at(i));
  if (!v) throw ParseError(l.line, fmt::format("{} '{}' is not numeric", field, l.tokens.at(i)));
  return *v;
}

int int_at(const DataLine& l, std::size_t i, std::string_view field) {
  auto v = text::parse_int(l.tokens.at(i));
  if (!v) throw ParseError(l.line, fmt::format("{} '{}' is not an integer", field, l.tokens.at(i)));
  return static_cast<int>(*v);
}

bool is_lennard_jones(std::string_view keyword) {
  return text::iequals(keyword, "lennard-jones") || text::iequals(keyword, "lennard_jones");
}

LjParams lj_from(const DataLine& l, std::size_t first) {
  LjParams p{number_at(l, first, "epsilon"), number_at(l, first + 1, "sigma")};
  if (p.epsilon < 0.0 || p.sigma <= 0.0) {
    throw ParseError(l.line, "Lennard-Jones parameters need epsilon >= 0 and sigma > 0");
  }
  return p;
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

}  // namespace

std::vector<PseudoAtom> parse_pseudo_atoms(std::string_view text) {
  DataLines data(text);
  const std::size_t declared = data.next_count("pseudo atom count");
  std::vector<PseudoAtom> atoms;
  std::size_t row = 0;
  while (!data.done()) {
    const auto& l = data.next("pseudo atom row");
    ++row;
    if (l.tokens.size() != 14) {
      throw ParseError(l.line, fmt::format("pseudo atom row {} has {} fields, expected 14", row,
                                           l.tokens.size()));
    }
    PseudoAtom a;
    a.name = l.tokens[0];
    if (text::iequals(l.tokens[1], "yes")) {
      a.print = true;
    } else if (text::iequals(l.tokens[1], "no")) {
      a.print = false;
    } else {
      throw ParseError(l.line, fmt::format("row {}: print flag must be yes or no", row));
    }
    a.element = l.tokens[2];
    a.chem = l.tokens[3];
    auto field = [&](std::size_t i, const char* what) {
      auto v = text::parse_double(l.tokens[i]);
      if (!v) throw ParseError(l.line, fmt::format("row {}: {} '{}' is not numeric", row, what, l.tokens[i]));
      return *v;
    };
    a.oxidation = field(4, "oxidation");
    a.mass = field(5, "mass");
    a.charge = field(6, "charge");
    a.polarization = field(7, "polarization");
    a.b_factor = field(8, "B-factor");
    a.radius = field(9, "radius");
    a.connectivity = static_cast<int>(field(10, "connectivity"));
    a.anisotropic = field(11, "anisotropic");
    a.anisotropic_type = l.tokens[12];
    a.tinker_type = static_cast<int>(field(13, "tinker type"));
    if (a.mass < 0.0) throw ParseError(l.line, fmt::format("row {}: negative mass", row));
    atoms.push_back(std::move(a));
  }
  if (atoms.size() != declared) {
    throw Error(Errc::format, fmt::format("pseudo_atoms.def declares {} atoms but lists {}",
                                          declared, atoms.size()));
  }
  return atoms;
}

std::string render_pseudo_atoms(const std::vector<PseudoAtom>& atoms) {
  std::string out = "#number of pseudo atoms\n";
  out += std::to_string(atoms.size()) + "\n";
  out += "#type print as chem oxidation mass charge polarization B-factor radii "
         "connectivity anisotropic anisotropic-type tinker-type\n";
  for (const auto& a : atoms) {
    out += fmt::format("{} {} {} {} {} {} {} {} {} {} {} {} {} {}\n", a.name, yes_no(a.print),
                       a.element, a.chem, format_number(a.oxidation), format_number(a.mass),
                       format_number(a.charge), format_number(a.polarization),
                       format_number(a.b_factor), format_number(a.radius), a.connectivity,
                       format_number(a.anisotropic), a.anisotropic_type, a.tinker_type);
  }
  return out;
}

InteractionSet parse_interaction_files(std::string_view mixing_text,
                                       std::optional<std::string_view> overrides_text) {
  InteractionSet set;
  DataLines mix(mixing_text);

  const auto& trunc = mix.next("truncation rule");
  auto t = truncation_from_string(trunc.tokens.front());
  if (!t) throw ParseError(trunc.line, "truncation rule must be shifted or truncated");
  set.truncation = *t;

  const auto& tail = mix.next("tail-correction flag");
  if (text::iequals(tail.tokens.front(), "yes")) {
    set.tail_corrections = true;
  } else if (!text::iequals(tail.tokens.front(), "no")) {
    throw ParseError(tail.line, "tail-correction flag must be yes or no");
  }

  const std::size_t count = mix.next_count("interaction count");
  for (std::size_t i = 0; i < count; ++i) {
    const auto& l = mix.next("interaction row");
    if (l.tokens.size() < 2) throw ParseError(l.line, "interaction row needs a type and a potential");
    if (!is_lennard_jones(l.tokens[1])) {
      throw Error(Errc::unsupported_potential,
                  fmt::format("line {}: potential '{}' is not supported", l.line, l.tokens[1]));
    }
    if (l.tokens.size() != 4) {
      throw ParseError(l.line, "lennard-jones row needs epsilon and sigma");
    }
    for (const auto& existing : set.self_params) {
      if (existing.type == l.tokens[0]) {
        throw Error(Errc::duplicate,
                    fmt::format("line {}: type '{}' listed twice", l.line, l.tokens[0]));
      }
    }
    set.self_params.push_back(SelfInteraction{l.tokens[0], lj_from(l, 2)});
  }

  const auto& rule = mix.next("mixing rule");
  auto r = mixing_rule_from_string(rule.tokens.front());
  if (!r) {
    throw Error(Errc::format, fmt::format("line {}: unknown mixing rule '{}'", rule.line,
                                          rule.tokens.front()));
  }
  set.mixing_rule = *r;
  if (!mix.done()) {
    throw Error(Errc::format, "force_field_mixing_rules.def: interaction rows exceed declared count");
  }

  if (!overrides_text) return set;

  DataLines ov(*overrides_text);
  const std::size_t rules = ov.next_count("rule-overwrite count");
  for (std::size_t i = 0; i < rules; ++i) {
    set.rule_overwrites.push_back(text::join(ov.next("rule-overwrite row").tokens, " "));
  }
  const std::size_t pairs = ov.done() ? 0 : ov.next_count("pair interaction count");
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto& l = ov.next("pair interaction row");
    if (l.tokens.size() < 3) throw ParseError(l.line, "pair row needs two types and a potential");
    if (!is_lennard_jones(l.tokens[2])) {
      throw Error(Errc::unsupported_potential,
                  fmt::format("line {}: potential '{}' is not supported", l.line, l.tokens[2]));
    }
    if (l.tokens.size() != 5) throw ParseError(l.line, "lennard-jones pair row needs epsilon and sigma");
    for (const auto& existing : set.overrides) {
      if (existing.same_pair(l.tokens[0], l.tokens[1])) {
        throw Error(Errc::duplicate, fmt::format("line {}: pair {}-{} listed twice", l.line,
                                                 l.tokens[0], l.tokens[1]));
      }
    }
    set.overrides.push_back(PairOverride{l.tokens[0], l.tokens[1], lj_from(l, 3), "lennard-jones"});
  }
  const std::size_t mixes = ov.done() ? 0 : ov.next_count("mixing-overwrite count");
  for (std::size_t i = 0; i < mixes; ++i) {
    set.mixing_overwrites.push_back(text::join(ov.next("mixing-overwrite row").tokens, " "));
  }
  if (!ov.done()) throw Error(Errc::format, "force_field.def: rows exceed declared counts");
  return set;
}

std::string render_mixing_rules(const ForceFieldBundle& bundle) {
  std::string out = "# general rule for shifted vs truncated\n";
  out += std::string(to_string(bundle.truncation)) + "\n";
  out += "# general rule tailcorrections\n";
  out += yes_no(bundle.tail_corrections) + "\n";
  out += "# number of defined interactions\n";
  out += std::to_string(bundle.self_params.size()) + "\n";
  out += "# type interaction, parameters: epsilon [K] sigma [A]\n";
  for (const auto& s : bundle.self_params) {
    out += fmt::format("{} lennard-jones {} {}\n", s.type, format_number(s.params.epsilon),
                       format_number(s.params.sigma));
  }
  out += "# general mixing rule for Lennard-Jones\n";
  out += std::string(to_string(bundle.mixing_rule)) + "\n";
  return out;
}

std::string render_overrides(const ForceFieldBundle& bundle) {
  std::string out = "# rules to overwrite\n";
  out += std::to_string(bundle.rule_overwrites.size()) + "\n";
  for (const auto& r : bundle.rule_overwrites) out += r + "\n";
  out += "# number of defined interactions\n";
  out += std::to_string(bundle.overrides.size()) + "\n";
  out += "# type type2 interaction, parameters: epsilon [K] sigma [A]\n";
  for (const auto& o : bundle.overrides) {
    out += fmt::format("{} {} lennard-jones {} {}\n", o.type_a, o.type_b,
                       format_number(o.params.epsilon), format_number(o.params.sigma));
  }
  out += "# mixing rules to overwrite\n";
  out += std::to_string(bundle.mixing_overwrites.size()) + "\n";
  for (const auto& m : bundle.mixing_overwrites) out += m + "\n";
  return out;
}

MoleculeDefinition parse_molecule(std::string_view text, std::string name) {
  DataLines data(text);
  MoleculeDefinition m;
  m.name = std::move(name);
  m.critical_temperature = data.next_number("critical temperature");
  m.critical_pressure = data.next_number("critical pressure");
  m.acentric_factor = data.next_number("acentric factor");
  const std::size_t n_atoms = data.next_count("number of atoms");
  const std::size_t n_groups = data.next_count("number of groups");
  if (n_groups != 1) {
    throw Error(Errc::format, fmt::format("molecule '{}': {} groups, only one group is supported",
                                          m.name, n_groups));
  }
  const auto& kind = data.next("group kind");
  if (text::iequals(kind.tokens.front(), "rigid")) {
    m.rigid = true;
  } else if (text::iequals(kind.tokens.front(), "flexible")) {
    m.rigid = false;
  } else {
    throw ParseError(kind.line, "group kind must be rigid or flexible");
  }
  const std::size_t in_group = data.next_count("number of atoms in group");
  if (in_group != n_atoms) {
    throw Error(Errc::format, fmt::format("molecule '{}': group lists {} atoms, molecule {}",
                                          m.name, in_group, n_atoms));
  }
  for (std::size_t i = 0; i < n_atoms; ++i) {
    const auto& l = data.next("atom position");
    if (l.tokens.size() != 5) throw ParseError(l.line, "atom row needs index, type and x y z");
    if (int_at(l, 0, "atom index") != static_cast<int>(i)) {
      throw ParseError(l.line, "atom indices must be consecutive from 0");
    }
    m.atoms.push_back(MoleculeAtom{
        l.tokens[1], {number_at(l, 2, "x"), number_at(l, 3, "y"), number_at(l, 4, "z")}});
  }
  const auto& counts = data.next("interaction counts");
  if (counts.tokens.size() < 2) throw ParseError(counts.line, "interaction counts line too short");
  std::size_t n_bonds = 0;
  for (std::size_t i = 0; i < counts.tokens.size(); ++i) {
    const int v = int_at(counts, i, "interaction count");
    if (i == 1) {
      n_bonds = static_cast<std::size_t>(v);
    } else if (v != 0) {
      throw Error(Errc::format, fmt::format("molecule '{}': only bond terms are supported", m.name));
    }
  }
  for (std::size_t i = 0; i < n_bonds; ++i) {
    const auto& l = data.next("bond row");
    if (l.tokens.size() < 3) throw ParseError(l.line, "bond row needs two atom indices and a type");
    Bond b{int_at(l, 0, "bond atom"), int_at(l, 1, "bond atom"), text::join({l.tokens.begin() + 2, l.tokens.end()}, " ")};
    if (b.first < 0 || b.second < 0 || b.first >= static_cast<int>(n_atoms) ||
        b.second >= static_cast<int>(n_atoms)) {
      throw ParseError(l.line, "bond references an atom outside the molecule");
    }
    m.bonds.push_back(std::move(b));
  }
  if (!data.done()) {
    const std::size_t moves = data.next_count("number of config moves");
    if (moves != 0) throw Error(Errc::format, "config moves are not supported");
  }
  if (!data.done()) throw Error(Errc::format, fmt::format("molecule '{}': trailing data", m.name));
  if (m.atoms.empty()) throw Error(Errc::format, fmt::format("molecule '{}' has no atoms", m.name));
  return m;
}

std::string render_molecule(const MoleculeDefinition& m) {
  std::string out =
      "# critical constants: Temperature [T], Pressure [Pa], and Acentric factor [-]\n";
  out += format_number(m.critical_temperature) + "\n";
  out += format_number(m.critical_pressure) + "\n";
  out += format_number(m.acentric_factor) + "\n";
  out += "# Number Of Atoms\n" + std::to_string(m.atoms.size()) + "\n";
  out += "# Number of groups\n1\n";
  out += "# group\n";
  out += std::string(m.rigid ? "rigid" : "flexible") + "\n";
  out += "# number of atoms\n" + std::to_string(m.atoms.size()) + "\n";
  out += "# atomic positions\n";
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const auto& a = m.atoms[i];
    out += fmt::format("{} {} {} {} {}\n", i, a.type, format_number(a.position[0]),
                       format_number(a.position[1]), format_number(a.position[2]));
  }
  out += "# Chiral centers Bond BondDipoles Bend UrayBradley InvBend Torsion Imp.Torsion "
         "Bond/Bond Stretch/Bend Bend/Bend Stretch/Torsion Bend/Torsion IntraVDW IntraCoulomb\n";
  out += fmt::format("0 {} 0 0 0 0 0 0 0 0 0 0 0 0 0\n", m.bonds.size());
  if (!m.bonds.empty()) {
    out += "# Bond stretch: atom n1-n2, type, parameters\n";
    for (const auto& b : m.bonds) out += fmt::format("{} {} {}\n", b.first, b.second, b.kind);
  }
  out += "# Number of config moves\n0\n";
  return out;
}

}  // namespace simcrew::forcefield
