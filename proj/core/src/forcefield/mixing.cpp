#include "simcrew/forcefield/mixing.hpp"

#include "simcrew/error.hpp"

#include <fmt/core.h>

#include <cmath>

namespace simcrew::forcefield {

LjParams mix_lorentz_berthelot(const LjParams& i, const LjParams& j) noexcept {
  return {std::sqrt(i.epsilon * j.epsilon), 0.5 * (i.sigma + j.sigma)};
}

LjParams mix_jorgensen(const LjParams& i, const LjParams& j) noexcept {
  return {std::sqrt(i.epsilon * j.epsilon), std::sqrt(i.sigma * j.sigma)};
}

LjParams mix(MixingRule rule, const LjParams& i, const LjParams& j) noexcept {
  return rule == MixingRule::jorgensen ? mix_jorgensen(i, j) : mix_lorentz_berthelot(i, j);
}

LjParams effective_pair_params(const ForceFieldBundle& bundle, std::string_view type_a,
                               std::string_view type_b) {
  for (auto type : {type_a, type_b}) {
    if (bundle.find_atom(type) == nullptr) {
      throw Error(Errc::missing_type,
                  fmt::format("type '{}' is not defined in force field '{}'", type, bundle.name));
    }
  }
  if (const auto* o = bundle.find_override(type_a, type_b)) return o->params;
  const auto* a = bundle.find_self(type_a);
  const auto* b = bundle.find_self(type_b);
  if (a == nullptr || b == nullptr) {
    throw Error(Errc::missing_type,
                fmt::format("type '{}' has no Lennard-Jones parameters in '{}'",
                            a == nullptr ? type_a : type_b, bundle.name));
  }
  return mix(bundle.mixing_rule, *a, *b);
}

}  // namespace simcrew::forcefield
