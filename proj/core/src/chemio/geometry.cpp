#include "simcrew/chemio/geometry.hpp"

#include "simcrew/error.hpp"

#include <fmt/core.h>

#include <cmath>
#include <numbers>

namespace simcrew::chemio {
namespace {

// Right angles map to exact 0/1 so orthogonal cells stay exact.
double cos_deg(double deg) {
  if (deg == 90.0) return 0.0;
  return std::cos(deg * std::numbers::pi / 180.0);
}

double sin_deg(double deg) {
  if (deg == 90.0) return 1.0;
  return std::sin(deg * std::numbers::pi / 180.0);
}

// 1 - cos²α - cos²β - cos²γ + 2 cosα cosβ cosγ; the squared volume factor.
double volume_factor(const LatticeParameters& l) {
  const double ca = cos_deg(l.alpha);
  const double cb = cos_deg(l.beta);
  const double cg = cos_deg(l.gamma);
  return 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg;
}

}  // namespace

void validate_lattice(const LatticeParameters& l) {
  for (double len : {l.a, l.b, l.c}) {
    if (!std::isfinite(len) || len <= 0.0) {
      throw Error(Errc::geometry, fmt::format("cell length {} is not positive", len));
    }
  }
  for (double ang : {l.alpha, l.beta, l.gamma}) {
    if (!std::isfinite(ang) || ang <= 0.0 || ang >= 180.0) {
      throw Error(Errc::geometry, fmt::format("cell angle {} outside (0, 180)", ang));
    }
  }
  const double factor = volume_factor(l);
  if (factor <= 0.0 || l.a * l.b * l.c * std::sqrt(factor) < kDegenerateVolume) {
    throw Error(Errc::geometry, "degenerate cell: volume below tolerance");
  }
}

double cell_volume(const LatticeParameters& l) {
  validate_lattice(l);
  return l.a * l.b * l.c * std::sqrt(volume_factor(l));
}

Widths perpendicular_widths(const LatticeParameters& l) {
  validate_lattice(l);
  const double root = std::sqrt(volume_factor(l));
  return {l.a * root / sin_deg(l.alpha), l.b * root / sin_deg(l.beta),
          l.c * root / sin_deg(l.gamma)};
}

Replication replication_for_cutoff(const LatticeParameters& lattice, double cutoff) {
  if (!std::isfinite(cutoff) || cutoff <= 0.0) {
    throw Error(Errc::precondition, fmt::format("cutoff {} must be positive", cutoff));
  }
  const Widths widths = perpendicular_widths(lattice);
  const double needed = 2.0 * cutoff;
  Replication n{};
  for (std::size_t i = 0; i < 3; ++i) {
    int count = std::max(1, static_cast<int>(std::ceil(needed / widths[i])));
    // ceil of a rounded quotient can be off by one near integers
    while (count * widths[i] < needed) ++count;
    while (count > 1 && (count - 1) * widths[i] >= needed) --count;
    n[i] = count;
  }
  return n;
}

}  // namespace simcrew::chemio
