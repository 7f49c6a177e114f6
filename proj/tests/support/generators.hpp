#pragma once

// Seeded random instances shared by property tests, benchmarks and the
// acceptance binary, plus the vector-geometry oracles.

#include "simcrew/chemio/geometry.hpp"
#include "simcrew/chemio/structure.hpp"
#include "simcrew/error.hpp"
#include "simcrew/forcefield/types.hpp"
#include "simcrew/siminput/spec.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace simcrew::testing {

using Vec3 = std::array<double, 3>;

inline Vec3 cross3(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}
inline double dot3(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
inline double norm3(const Vec3& u) { return std::sqrt(dot3(u, u)); }

// Oracle: build the cell vectors explicitly and take V / |cross|.
inline std::array<double, 3> oracle_widths(const chemio::LatticeParameters& l) {
  const double r = std::numbers::pi / 180.0;
  Vec3 a{l.a, 0, 0};
  Vec3 b{l.b * std::cos(l.gamma * r), l.b * std::sin(l.gamma * r), 0};
  double cx = l.c * std::cos(l.beta * r);
  double cy = l.c * (std::cos(l.alpha * r) - std::cos(l.beta * r) * std::cos(l.gamma * r)) / std::sin(l.gamma * r);
  Vec3 c{cx, cy, std::sqrt(l.c * l.c - cx * cx - cy * cy)};
  double v = dot3(a, cross3(b, c));
  return {v / norm3(cross3(b, c)), v / norm3(cross3(c, a)), v / norm3(cross3(a, b))};
}

// Oracle: count up until the replicated slab is at least twice the cutoff.
inline std::array<int, 3> oracle_replication(const chemio::LatticeParameters& l, double cutoff) {
  auto h = oracle_widths(l);
  std::array<int, 3> n{};
  for (int i = 0; i < 3; ++i) {
    n[i] = 1;
    while (n[i] * h[i] < 2.0 * cutoff) ++n[i];
  }
  return n;
}

inline bool lattice_ok(const chemio::LatticeParameters& l) {
  try {
    chemio::validate_lattice(l);
    return true;
  } catch (const Error&) {
    return false;
  }
}

template <class Rng>
chemio::LatticeParameters random_lattice(Rng& rng, double len_lo, double len_hi, double ang_lo, double ang_hi) {
  std::uniform_real_distribution<double> len(len_lo, len_hi), ang(ang_lo, ang_hi);
  for (;;) {
    chemio::LatticeParameters l{len(rng), len(rng), len(rng), ang(rng), ang(rng), ang(rng)};
    if (lattice_ok(l)) return l;
  }
}

/// Silica-like framework: alternating Si and O sites, optional charges.
template <class Rng>
chemio::CrystalStructure random_structure(Rng& rng, const std::string& name, int sites, bool charged) {
  std::uniform_real_distribution<double> frac(0.0, 1.0), q(-2.0, 2.0);
  chemio::CrystalStructure s;
  s.name = name;
  s.lattice = random_lattice(rng, 3.0, 40.0, 60.0, 120.0);
  for (int i = 0; i < sites; ++i) {
    chemio::AtomSite site{(i % 2 ? "Si" : "O") + std::to_string(i), i % 2 ? "Si" : "O",
                          {frac(rng), frac(rng), frac(rng)}, {}};
    if (charged) site.charge = q(rng);
    s.sites.push_back(site);
  }
  return s;
}

inline forcefield::PseudoAtom make_atom(const std::string& name, double charge = 0.0) {
  forcefield::PseudoAtom a;
  a.name = name;
  a.element = name.substr(0, 1);
  a.chem = a.element;
  a.mass = 12.0;
  a.charge = charge;
  return a;
}

inline forcefield::ForceFieldBundle random_bundle(std::mt19937_64& rng, int index) {
  using namespace forcefield;
  std::uniform_real_distribution<double> eps(0.0, 300.0), sig(1.0, 5.0), q(-1.5, 1.5), mass(1.0, 200.0),
      pos(-3.0, 3.0);
  std::uniform_int_distribution<int> count(1, 6);
  ForceFieldBundle b;
  b.name = "ff" + std::to_string(index);
  b.truncation = index % 2 ? Truncation::truncated : Truncation::shifted;
  b.tail_corrections = index % 3 == 0;
  b.mixing_rule = index % 4 == 0 ? MixingRule::jorgensen : MixingRule::lorentz_berthelot;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    auto a = make_atom("T" + std::to_string(i) + "_x", q(rng));
    a.mass = mass(rng);
    a.print = i % 2 == 0;
    a.polarization = sig(rng);
    b.pseudo_atoms.push_back(a);
    if (i % 3 != 2) b.self_params.push_back({a.name, {eps(rng), sig(rng)}});
  }
  for (int i = 0; i + 1 < n; i += 2) {
    b.overrides.push_back({b.pseudo_atoms[i].name, b.pseudo_atoms[i + 1].name, {eps(rng), sig(rng)}});
  }
  if (index % 2 == 0) {
    MoleculeDefinition m;
    m.name = "mol" + std::to_string(index);
    m.critical_temperature = 100 + eps(rng);
    m.critical_pressure = 1e6 * sig(rng);
    m.acentric_factor = q(rng);
    for (int i = 0; i < n; ++i) {
      m.atoms.push_back({b.pseudo_atoms[i].name, {pos(rng), pos(rng), pos(rng)}});
    }
    for (int i = 0; i + 1 < n; ++i) m.bonds.push_back({i, i + 1, "RIGID_BOND"});
    m.rigid = index % 4 != 2;
    b.molecules[m.name] = m;
  }
  return b;
}

template <class Rng>
siminput::SimulationSpec random_spec(Rng& rng, int trial) {
  using namespace siminput;
  std::uniform_int_distribution<int> small(0, 4), cells(1, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SimulationSpec s;
  s.cycles = small(rng) * 5000;
  s.init_cycles = small(rng) * 1000;
  s.print_every = 1 + small(rng) * 250;
  s.cutoff = 8.0 + unit(rng) * 16.0;
  s.charge_method = small(rng) % 2 ? ChargeMethod::ewald : ChargeMethod::none;
  if (small(rng) == 0) s.global_extras.push_back("RestartFile no");
  if (small(rng) % 2) s.framework_name = std::string("FW") + std::to_string(trial);
  if (small(rng) % 2) s.unit_cells = UnitCells{cells(rng), cells(rng), cells(rng)};
  switch (small(rng) % 3) {
    case 0: break;
    case 1: s.temperature = 200.0 + unit(rng) * 200.0; break;
    default: s.temperature = Placeholder{"{TEMPERATURE}"};
  }
  switch (small(rng) % 3) {
    case 0: break;
    case 1: s.pressure = std::vector<double>{unit(rng) * 1e6, 1e5 + unit(rng)}; break;
    default: s.pressure = Placeholder{"{PRESSURE}"};
  }
  int components = small(rng) % 3;
  for (int i = 0; i < components; ++i) {
    ComponentSpec c;
    c.index = i;
    c.molecule_name = "mol" + std::to_string(i);
    for (auto m : kAllMoves) {
      if (small(rng) % 2) c.moves[m] = unit(rng);
    }
    c.create_count = small(rng);
    if (small(rng) == 0) c.extras.push_back("MolFraction 0.5");
    s.components.push_back(c);
  }
  return s;
}

}  // namespace simcrew::testing
