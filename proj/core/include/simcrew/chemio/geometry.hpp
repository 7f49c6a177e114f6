#pragma once

#include "simcrew/chemio/structure.hpp"

#include <array>

namespace simcrew::chemio {

inline constexpr double kDegenerateVolume = 1e-9;  // Å³

using Widths = std::array<double, 3>;
using Replication = std::array<int, 3>;

/// Throws Error(geometry) unless every length is positive and every angle lies
/// in (0, 180) with a non-degenerate volume.
void validate_lattice(const LatticeParameters& lattice);

double cell_volume(const LatticeParameters& lattice);

/// Distance between opposite faces along each lattice direction:
/// h_a = V / |b x c| and cyclic. Orthogonal cells return (a, b, c) exactly.
Widths perpendicular_widths(const LatticeParameters& lattice);

/// Smallest (n_a, n_b, n_c) with n_i * h_i >= 2 * cutoff.
Replication replication_for_cutoff(const LatticeParameters& lattice, double cutoff);

}  // namespace simcrew::chemio
