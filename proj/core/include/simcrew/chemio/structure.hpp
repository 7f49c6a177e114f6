#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::chemio {

/// Cell edge lengths in Å and inter-axial angles in degrees.
struct LatticeParameters {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 90.0;
  double beta = 90.0;
  double gamma = 90.0;

  bool operator==(const LatticeParameters&) const = default;
};

using Fractional = std::array<double, 3>;

struct AtomSite {
  std::string label;
  std::string type_symbol;
  Fractional fract{};
  std::optional<double> charge;  // absent is distinct from zero

  bool operator==(const AtomSite&) const = default;
};

/// One P1 framework as read from a single-block CIF.
struct CrystalStructure {
  std::string name;
  LatticeParameters lattice;
  std::vector<AtomSite> sites;
};

/// Throws Error(malformed_structure) for missing cell tags or an invalid cell,
/// ParseError (with line) for loop problems.
CrystalStructure parse_cif(std::string_view text);
CrystalStructure read_cif_file(const std::string& path);

/// Canonical writer: fixed tag order, shortest round-trip number format.
std::string write_cif(const CrystalStructure& structure);

inline const LatticeParameters& lattice_parameters(const CrystalStructure& s) noexcept {
  return s.lattice;
}

std::map<std::string, std::size_t> atom_type_census(const CrystalStructure& structure);
std::size_t count_atom_type(const CrystalStructure& structure, std::string_view type_symbol);

/// Wraps a fractional coordinate into [0, 1).
double wrap_fractional(double x) noexcept;

}  // namespace simcrew::chemio
