#pragma once

// Builds replay scripts for the provider stub without hand-writing JSONL.

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace simcrew::testing {

class ScriptBuilder {
 public:
  using json = nlohmann::json;

  /// One assistant turn with one or more tool calls.
  ScriptBuilder& calls(const std::string& agent, std::vector<std::pair<std::string, json>> tool_calls,
                       json expect = nullptr) {
    auto arr = json::array();
    for (auto& [name, args] : tool_calls) arr.push_back({{"name", name}, {"arguments", args}});
    return push(agent, {{"content", ""}, {"tool_calls", arr}}, std::move(expect));
  }

  ScriptBuilder& call(const std::string& agent, const std::string& tool, json args = json::object(),
                      json expect = nullptr) {
    return calls(agent, {{tool, std::move(args)}}, std::move(expect));
  }

  ScriptBuilder& answer(const std::string& agent, const std::string& text, json expect = nullptr) {
    return push(agent, {{"content", text}}, std::move(expect));
  }

  /// Raw argument text, for malformed-argument cases.
  ScriptBuilder& raw_call(const std::string& agent, const std::string& tool, const std::string& raw) {
    return push(agent, {{"content", ""}, {"tool_calls", {{{"name", tool}, {"arguments", raw}}}}}, nullptr);
  }

  ScriptBuilder& append(const ScriptBuilder& other) {
    lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
    return *this;
  }

  std::string str() const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    return out;
  }

  std::size_t size() const noexcept { return lines_.size(); }

 private:
  ScriptBuilder& push(const std::string& agent, json assistant, json expect) {
    json turn = {{"agent", agent}, {"assistant", std::move(assistant)}};
    if (!expect.is_null()) turn["expect"] = std::move(expect);
    lines_.push_back(turn.dump());
    return *this;
  }

  std::vector<std::string> lines_;
};

}  // namespace simcrew::testing
