#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <string>

namespace simcrew::crews {

namespace fs = std::filesystem;

/// Agent names used in transcripts, memory and replay scripts.
namespace agents {
inline constexpr const char* supervisor = "supervisor";
inline constexpr const char* structure_expert = "structure_expert";
inline constexpr const char* forcefield_expert = "forcefield_expert";
inline constexpr const char* input_expert = "input_expert";
inline constexpr const char* coding_expert = "coding_expert";
inline constexpr const char* evaluator = "evaluator";
inline constexpr const char* paper_search = "paper_search";
inline constexpr const char* extraction = "extraction";
inline constexpr const char* forcefield_writer = "forcefield_writer";
inline constexpr const char* top_supervisor = "top_supervisor";
}  // namespace agents

struct TeamConfig {
  std::string endpoint;  // chat-completions base URL
  std::string api_key;
  std::map<std::string, std::string> models;  // agent -> model label

  fs::path library_root;
  fs::path structures_root;
  fs::path examples_root;
  fs::path corpus_root;

  std::string literature_endpoint = "https://api.semanticscholar.org";
  std::string literature_api_key;
  bool live_literature = false;

  int revision_rounds = 1;
  int search_rounds = 3;
  int max_steps = 16;
  double cutoff = 12.0;  // Å

  std::string model_for(const std::string& agent) const;
};

/// Model labels per agent as assigned in the published role table.
std::map<std::string, std::string> default_models();

/// Relative roots are resolved against `base` (normally the config file's
/// directory). Unknown keys are rejected. Throws Error(config).
TeamConfig team_config_from_json(const nlohmann::json& j, const fs::path& base = {});
nlohmann::json team_config_to_json(const TeamConfig& config);
TeamConfig load_team_config(const fs::path& file);

/// SIMCREW_ENDPOINT, SIMCREW_API_KEY, SIMCREW_LIBRARY, SIMCREW_STRUCTURES,
/// SIMCREW_EXAMPLES, SIMCREW_CORPUS, SIMCREW_S2_API_KEY, SIMCREW_REVISIONS,
/// SIMCREW_SEARCH_ROUNDS. `getenv` is injectable for tests.
using EnvLookup = const char* (*)(const char*);
void apply_env_overrides(TeamConfig& config, EnvLookup getenv_fn = nullptr);

/// Throws Error(precondition) naming the first missing root.
void require_roots(const TeamConfig& config, bool need_corpus);

}  // namespace simcrew::crews
