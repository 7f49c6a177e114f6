#include "simcrew/error.hpp"

namespace simcrew {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::parse: return "parse";
    case Errc::malformed_structure: return "malformed-structure";
    case Errc::geometry: return "geometry";
    case Errc::format: return "format";
    case Errc::duplicate: return "duplicate";
    case Errc::unsupported_potential: return "unsupported-potential";
    case Errc::missing_type: return "missing-type";
    case Errc::incompatible: return "incompatible";
    case Errc::dangling_reference: return "dangling-reference";
    case Errc::structural: return "structural";
    case Errc::unknown_adsorbate: return "unknown-adsorbate";
    case Errc::unknown_task: return "unknown-task";
    case Errc::unbound_placeholder: return "unbound-placeholder";
    case Errc::precondition: return "precondition";
    case Errc::not_found: return "not-found";
    case Errc::io: return "io";
    case Errc::config: return "config";
    case Errc::provider: return "provider";
    case Errc::divergence: return "divergence";
  }
  return "unknown";
}

}  // namespace simcrew
