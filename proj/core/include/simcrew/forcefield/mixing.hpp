#pragma once

#include "simcrew/forcefield/types.hpp"

#include <string_view>

namespace simcrew::forcefield {

/// Geometric-mean epsilon, arithmetic-mean sigma.
LjParams mix_lorentz_berthelot(const LjParams& i, const LjParams& j) noexcept;

/// Geometric-mean epsilon and sigma.
LjParams mix_jorgensen(const LjParams& i, const LjParams& j) noexcept;

LjParams mix(MixingRule rule, const LjParams& i, const LjParams& j) noexcept;

/// The override for the unordered pair when one exists, otherwise the bundle's
/// mixing rule applied to the self parameters. Throws Error(missing_type).
LjParams effective_pair_params(const ForceFieldBundle& bundle, std::string_view type_a,
                               std::string_view type_b);

}  // namespace simcrew::forcefield
