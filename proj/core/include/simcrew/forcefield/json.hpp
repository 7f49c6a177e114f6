#pragma once

// JSON form of force-field bundles, used by agent tools to pass bundles
// through tool-call arguments.

#include "simcrew/forcefield/types.hpp"

#include <nlohmann/json.hpp>

namespace simcrew::forcefield {

void to_json(nlohmann::json& j, const PseudoAtom& a);
void from_json(const nlohmann::json& j, PseudoAtom& a);
void to_json(nlohmann::json& j, const LjParams& p);
void from_json(const nlohmann::json& j, LjParams& p);
void to_json(nlohmann::json& j, const MoleculeDefinition& m);
void from_json(const nlohmann::json& j, MoleculeDefinition& m);
void to_json(nlohmann::json& j, const ForceFieldBundle& b);

/// Missing optional fields take the PseudoAtom / bundle defaults. Throws
/// Error(format) on malformed documents.
ForceFieldBundle bundle_from_json(const nlohmann::json& j);

}  // namespace simcrew::forcefield
