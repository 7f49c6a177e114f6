#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::agentcore {

enum class Role { system, user, assistant, tool };

std::string_view to_string(Role role) noexcept;
std::optional<Role> role_from_string(std::string_view s) noexcept;

struct ToolCall {
  std::string id;
  std::string name;
  std::string arguments;  // JSON text as sent by the model; may be malformed

  bool operator==(const ToolCall&) const = default;
};

struct ChatMessage {
  Role role = Role::user;
  std::string content;
  std::vector<ToolCall> tool_calls;
  std::string tool_call_id;  // tool-role messages only

  static ChatMessage system(std::string text) { return {Role::system, std::move(text), {}, {}}; }
  static ChatMessage user(std::string text) { return {Role::user, std::move(text), {}, {}}; }
  static ChatMessage assistant(std::string text, std::vector<ToolCall> calls = {}) {
    return {Role::assistant, std::move(text), std::move(calls), {}};
  }
  static ChatMessage tool(std::string call_id, std::string text) {
    return {Role::tool, std::move(text), {}, std::move(call_id)};
  }

  bool operator==(const ChatMessage&) const = default;
};

struct ToolParam {
  std::string name;
  std::string type = "string";  // JSON-schema primitive: string, number, integer, boolean, object, array
  std::string description;
  bool required = true;
};

struct ToolSchema {
  std::string name;
  std::string description;
  std::vector<ToolParam> params;
};

/// Chat-completions wire form.
nlohmann::json message_to_json(const ChatMessage& m);
ChatMessage message_from_json(const nlohmann::json& j);
nlohmann::json schema_to_json(const ToolSchema& s);

/// One JSON record per line.
std::string transcript_jsonl(const std::vector<ChatMessage>& transcript);

/// Every tool message answers exactly one earlier assistant tool call.
bool transcript_well_formed(const std::vector<ChatMessage>& transcript);

}  // namespace simcrew::agentcore
