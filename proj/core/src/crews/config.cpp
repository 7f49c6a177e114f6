#include "simcrew/crews/config.hpp"

#include "simcrew/error.hpp"
#include "simcrew/io.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <cstdlib>
#include <set>

namespace simcrew::crews {
namespace {

using nlohmann::json;

fs::path rooted(const json& v, const fs::path& base) {
  fs::path p = v.get<std::string>();
  return p.is_relative() && !base.empty() ? base / p : p;
}

int parse_cap(const char* name, const char* value, int minimum) {
  auto n = text::parse_int(value);
  if (!n || *n < minimum) throw Error(Errc::config, fmt::format("{} must be an integer >= {}", name, minimum));
  return static_cast<int>(*n);
}

}  // namespace

std::map<std::string, std::string> default_models() {
  return {
      {agents::supervisor, "gpt-5"},         {agents::structure_expert, "gpt-5-mini"},
      {agents::forcefield_expert, "gpt-5"},  {agents::input_expert, "gpt-5"},
      {agents::coding_expert, "gpt-5"},      {agents::evaluator, "gpt-5"},
      {agents::paper_search, "gpt-5-mini"},  {agents::extraction, "gpt-5-mini"},
      {agents::forcefield_writer, "gpt-5"},  {agents::top_supervisor, "gpt-5"},
  };
}

std::string TeamConfig::model_for(const std::string& agent) const {
  if (auto it = models.find(agent); it != models.end()) return it->second;
  auto d = default_models();
  auto it = d.find(agent);
  return it == d.end() ? "gpt-5" : it->second;
}

TeamConfig team_config_from_json(const json& j, const fs::path& base) {
  if (!j.is_object()) throw Error(Errc::config, "team configuration must be a JSON object");
  static const std::set<std::string> known = {
      "endpoint",        "api_key",         "models",           "library",          "structures",
      "examples",        "corpus",          "literature_endpoint", "literature_api_key", "live_literature",
      "revision_rounds", "search_rounds",   "max_steps",        "cutoff"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw Error(Errc::config, fmt::format("unknown configuration key '{}'", k));
  }
  TeamConfig c;
  c.models = default_models();
  try {
    c.endpoint = j.value("endpoint", c.endpoint);
    c.api_key = j.value("api_key", c.api_key);
    if (j.contains("models")) {
      for (const auto& [agent, model] : j.at("models").items()) c.models[agent] = model.get<std::string>();
    }
    if (j.contains("library")) c.library_root = rooted(j.at("library"), base);
    if (j.contains("structures")) c.structures_root = rooted(j.at("structures"), base);
    if (j.contains("examples")) c.examples_root = rooted(j.at("examples"), base);
    if (j.contains("corpus")) c.corpus_root = rooted(j.at("corpus"), base);
    c.literature_endpoint = j.value("literature_endpoint", c.literature_endpoint);
    c.literature_api_key = j.value("literature_api_key", c.literature_api_key);
    c.live_literature = j.value("live_literature", c.live_literature);
    c.revision_rounds = j.value("revision_rounds", c.revision_rounds);
    c.search_rounds = j.value("search_rounds", c.search_rounds);
    c.max_steps = j.value("max_steps", c.max_steps);
    c.cutoff = j.value("cutoff", c.cutoff);
  } catch (const json::exception& e) {
    throw Error(Errc::config, fmt::format("malformed team configuration: {}", e.what()));
  }
  if (c.revision_rounds < 0) throw Error(Errc::config, "revision_rounds must be >= 0");
  if (c.search_rounds < 1) throw Error(Errc::config, "search_rounds must be >= 1");
  if (c.max_steps < 1) throw Error(Errc::config, "max_steps must be >= 1");
  if (!(c.cutoff > 0)) throw Error(Errc::config, "cutoff must be positive");
  return c;
}

json team_config_to_json(const TeamConfig& c) {
  return {{"endpoint", c.endpoint},
          {"api_key", c.api_key},
          {"models", c.models},
          {"library", c.library_root.string()},
          {"structures", c.structures_root.string()},
          {"examples", c.examples_root.string()},
          {"corpus", c.corpus_root.string()},
          {"literature_endpoint", c.literature_endpoint},
          {"literature_api_key", c.literature_api_key},
          {"live_literature", c.live_literature},
          {"revision_rounds", c.revision_rounds},
          {"search_rounds", c.search_rounds},
          {"max_steps", c.max_steps},
          {"cutoff", c.cutoff}};
}

TeamConfig load_team_config(const fs::path& file) {
  auto j = json::parse(io::read_file(file), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::config, fmt::format("{} is not valid JSON", file.string()));
  return team_config_from_json(j, file.parent_path());
}

void apply_env_overrides(TeamConfig& c, EnvLookup getenv_fn) {
  auto env = getenv_fn ? getenv_fn : +[](const char* n) -> const char* { return std::getenv(n); };
  auto str = [&](const char* name, std::string& out) {
    if (const char* v = env(name); v && *v) out = v;
  };
  auto path = [&](const char* name, fs::path& out) {
    if (const char* v = env(name); v && *v) out = v;
  };
  str("SIMCREW_ENDPOINT", c.endpoint);
  str("SIMCREW_API_KEY", c.api_key);
  path("SIMCREW_LIBRARY", c.library_root);
  path("SIMCREW_STRUCTURES", c.structures_root);
  path("SIMCREW_EXAMPLES", c.examples_root);
  path("SIMCREW_CORPUS", c.corpus_root);
  str("SIMCREW_S2_API_KEY", c.literature_api_key);
  if (const char* v = env("SIMCREW_REVISIONS"); v && *v) c.revision_rounds = parse_cap("SIMCREW_REVISIONS", v, 0);
  if (const char* v = env("SIMCREW_SEARCH_ROUNDS"); v && *v)
    c.search_rounds = parse_cap("SIMCREW_SEARCH_ROUNDS", v, 1);
}

void require_roots(const TeamConfig& c, bool need_corpus) {
  std::vector<std::pair<const char*, const fs::path*>> roots = {
      {"library", &c.library_root}, {"structures", &c.structures_root}, {"examples", &c.examples_root}};
  if (need_corpus && !c.live_literature) roots.emplace_back("corpus", &c.corpus_root);
  for (const auto& [name, p] : roots) {
    std::error_code ec;
    if (p->empty() || !fs::is_directory(*p, ec))
      throw Error(Errc::precondition, fmt::format("{} root '{}' does not exist", name, p->string()));
  }
}

}  // namespace simcrew::crews
