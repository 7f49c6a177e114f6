#include "simcrew/agentcore/tools.hpp"

#include "simcrew/error.hpp"

#include <fmt/core.h>

namespace simcrew::agentcore {
namespace {

using nlohmann::json;

bool type_matches(const std::string& type, const json& v) {
  if (type == "string") return v.is_string();
  if (type == "number") return v.is_number();
  if (type == "integer") return v.is_number_integer();
  if (type == "boolean") return v.is_boolean();
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  return true;
}

}  // namespace

void ToolRegistry::add(ToolSchema schema, ToolHandler handler) {
  auto name = schema.name;
  if (tools_.count(name))
    throw Error(Errc::config, fmt::format("tool '{}' is registered twice", name));
  tools_.emplace(std::move(name), Entry{std::move(schema), std::move(handler)});
}

bool ToolRegistry::contains(std::string_view name) const { return tools_.find(name) != tools_.end(); }

const ToolSchema* ToolRegistry::schema(std::string_view name) const {
  auto it = tools_.find(name);
  return it == tools_.end() ? nullptr : &it->second.schema;
}

std::vector<std::string> ToolRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, e] : tools_) out.push_back(name);
  return out;
}

std::vector<ToolSchema> ToolRegistry::schemas(const std::vector<std::string>& names) const {
  std::vector<ToolSchema> out;
  for (const auto& n : names) {
    if (const auto* s = schema(n)) out.push_back(*s);
  }
  return out;
}

ToolResult ToolRegistry::invoke(std::string_view name, std::string_view arguments) const {
  auto it = tools_.find(name);
  if (it == tools_.end()) return ToolResult::error(fmt::format("error: unknown tool '{}'", name));
  const auto& [schema, handler] = it->second;

  json args;
  if (text_is_blank(arguments)) {
    args = json::object();
  } else {
    args = json::parse(arguments, nullptr, false);
    if (args.is_discarded() || !args.is_object())
      return ToolResult::error(
          fmt::format("error: arguments for '{}' are not a JSON object: {}", name, arguments));
  }
  for (const auto& p : schema.params) {
    auto a = args.find(p.name);
    if (a == args.end() || a->is_null()) {
      if (p.required)
        return ToolResult::error(fmt::format("error: '{}' requires argument '{}'", name, p.name));
      continue;
    }
    if (!type_matches(p.type, *a))
      return ToolResult::error(
          fmt::format("error: argument '{}' of '{}' must be of type {}", p.name, name, p.type));
  }
  try {
    return handler(args);
  } catch (const Error& e) {
    if (e.code() == Errc::divergence) throw;  // a replay mismatch inside a nested run is not a tool failure
    return ToolResult::error(fmt::format("error ({}): {}", to_string(e.code()), e.what()));
  } catch (const std::exception& e) {
    return ToolResult::error(fmt::format("error: {}", e.what()));
  }
}

bool ToolRegistry::text_is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string arg_string(const nlohmann::json& args, const std::string& key) {
  auto it = args.find(key);
  if (it == args.end() || !it->is_string())
    throw Error(Errc::precondition, fmt::format("missing string argument '{}'", key));
  return it->get<std::string>();
}

std::string arg_string(const nlohmann::json& args, const std::string& key, const std::string& fallback) {
  auto it = args.find(key);
  if (it == args.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw Error(Errc::precondition, fmt::format("argument '{}' must be a string", key));
  return it->get<std::string>();
}

double arg_number(const nlohmann::json& args, const std::string& key) {
  auto it = args.find(key);
  if (it == args.end() || !it->is_number())
    throw Error(Errc::precondition, fmt::format("missing numeric argument '{}'", key));
  return it->get<double>();
}

double arg_number(const nlohmann::json& args, const std::string& key, double fallback) {
  auto it = args.find(key);
  if (it == args.end() || it->is_null()) return fallback;
  if (!it->is_number()) throw Error(Errc::precondition, fmt::format("argument '{}' must be a number", key));
  return it->get<double>();
}

}  // namespace simcrew::agentcore
