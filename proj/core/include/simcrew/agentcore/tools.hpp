#pragma once

#include "simcrew/agentcore/message.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace simcrew::agentcore {

struct Artifact {
  std::string role;   // e.g. "simulation-folder", "force-field"
  std::string value;  // path or literal

  bool operator==(const Artifact&) const = default;
};

struct ToolResult {
  std::string content;
  bool is_error = false;
  std::vector<Artifact> artifacts;

  static ToolResult ok(std::string text, std::vector<Artifact> artifacts = {}) {
    return {std::move(text), false, std::move(artifacts)};
  }
  static ToolResult error(std::string text) { return {std::move(text), true, {}}; }
};

using ToolHandler = std::function<ToolResult(const nlohmann::json& args)>;

class ToolRegistry {
 public:
  /// Throws Error(config) on a duplicate name.
  void add(ToolSchema schema, ToolHandler handler);

  bool contains(std::string_view name) const;
  const ToolSchema* schema(std::string_view name) const;
  std::vector<std::string> names() const;
  std::vector<ToolSchema> schemas(const std::vector<std::string>& names) const;

  /// Never throws for bad input: unknown tools, malformed or missing
  /// arguments and handler exceptions all come back as error results. Replay
  /// divergence raised by nested agent runs is rethrown.
  ToolResult invoke(std::string_view name, std::string_view arguments) const;

 private:
  static bool text_is_blank(std::string_view s);

  struct Entry {
    ToolSchema schema;
    ToolHandler handler;
  };
  std::map<std::string, Entry, std::less<>> tools_;
};

/// Argument accessors for handlers; throw Error(precondition) naming the key.
std::string arg_string(const nlohmann::json& args, const std::string& key);
std::string arg_string(const nlohmann::json& args, const std::string& key, const std::string& fallback);
double arg_number(const nlohmann::json& args, const std::string& key);
double arg_number(const nlohmann::json& args, const std::string& key, double fallback);

}  // namespace simcrew::agentcore
