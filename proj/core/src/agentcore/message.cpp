#include "simcrew/agentcore/message.hpp"

#include "simcrew/error.hpp"

#include <fmt/core.h>

#include <set>

namespace simcrew::agentcore {

using nlohmann::json;

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
    case Role::tool: return "tool";
  }
  return "";
}

std::optional<Role> role_from_string(std::string_view s) noexcept {
  for (auto r : {Role::system, Role::user, Role::assistant, Role::tool}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

json message_to_json(const ChatMessage& m) {
  json j = {{"role", to_string(m.role)}};
  if (m.content.empty() && !m.tool_calls.empty()) j["content"] = nullptr;
  else j["content"] = m.content;
  if (!m.tool_calls.empty()) {
    auto calls = json::array();
    for (const auto& c : m.tool_calls) {
      calls.push_back({{"id", c.id},
                       {"type", "function"},
                       {"function", {{"name", c.name}, {"arguments", c.arguments}}}});
    }
    j["tool_calls"] = std::move(calls);
  }
  if (m.role == Role::tool) j["tool_call_id"] = m.tool_call_id;
  return j;
}

ChatMessage message_from_json(const json& j) {
  try {
    ChatMessage m;
    auto role = role_from_string(j.at("role").get<std::string>());
    if (!role) throw Error(Errc::format, fmt::format("unknown message role {}", j.at("role").dump()));
    m.role = *role;
    if (auto it = j.find("content"); it != j.end() && it->is_string()) m.content = it->get<std::string>();
    if (auto it = j.find("tool_calls"); it != j.end() && it->is_array()) {
      for (const auto& c : *it) {
        const auto& fn = c.at("function");
        const auto& args = fn.at("arguments");
        m.tool_calls.push_back({c.value("id", ""), fn.at("name").get<std::string>(),
                                args.is_string() ? args.get<std::string>() : args.dump()});
      }
    }
    m.tool_call_id = j.value("tool_call_id", "");
    return m;
  } catch (const json::exception& e) {
    throw Error(Errc::format, fmt::format("malformed chat message: {}", e.what()));
  }
}

json schema_to_json(const ToolSchema& s) {
  json props = json::object();
  auto required = json::array();
  for (const auto& p : s.params) {
    props[p.name] = {{"type", p.type}, {"description", p.description}};
    if (p.type == "array") props[p.name]["items"] = json::object();  // strict validators insist on items
    if (p.required) required.push_back(p.name);
  }
  return {{"type", "function"},
          {"function",
           {{"name", s.name},
            {"description", s.description},
            {"parameters", {{"type", "object"}, {"properties", props}, {"required", required}}}}}};
}

std::string transcript_jsonl(const std::vector<ChatMessage>& transcript) {
  std::string out;
  for (const auto& m : transcript) {
    out += message_to_json(m).dump();
    out += '\n';
  }
  return out;
}

bool transcript_well_formed(const std::vector<ChatMessage>& transcript) {
  std::set<std::string> open, answered;
  for (const auto& m : transcript) {
    if (m.role == Role::assistant) {
      for (const auto& c : m.tool_calls) {
        if (c.id.empty() || open.count(c.id) || answered.count(c.id)) return false;
        open.insert(c.id);
      }
    } else if (m.role == Role::tool) {
      if (!open.erase(m.tool_call_id)) return false;
      answered.insert(m.tool_call_id);
    }
  }
  return true;
}

}  // namespace simcrew::agentcore
