#include "simcrew/agentcore/provider.hpp"

#include "simcrew/error.hpp"
#include "simcrew/io.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>
#include <httplib.h>

#include <regex>

namespace simcrew::agentcore {
namespace {

using nlohmann::json;

std::string excerpt(std::string_view s, std::size_t n = 160) {
  std::string out(s.substr(0, n));
  if (s.size() > n) out += "...";
  for (auto& c : out)
    if (c == '\n') c = ' ';
  return out;
}

}  // namespace

ReplayProvider::ReplayProvider(std::string_view script) {
  auto lines = text::split_lines(script);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto t = text::trim(lines[i]);
    if (t.empty() || t.front() == '#') continue;
    auto j = json::parse(t, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError(i + 1, "replay turn is not a JSON object");
    Turn turn;
    turn.line = i + 1;
    try {
      turn.agent = j.value("agent", "");
      if (auto e = j.find("expect"); e != j.end()) {
        turn.expect_role = e->value("last_role", "");
        turn.expect_contains = e->value("contains", "");
      }
      const auto& a = j.at("assistant");
      turn.reply.role = Role::assistant;
      turn.reply.content = a.value("content", "");
      if (auto calls = a.find("tool_calls"); calls != a.end()) {
        std::size_t k = 0;
        for (const auto& c : *calls) {
          const auto& args = c.contains("arguments") ? c.at("arguments") : json::object();
          turn.reply.tool_calls.push_back(
              {c.value("id", fmt::format("call_{}_{}", turns_.size(), k)), c.at("name").get<std::string>(),
               args.is_string() ? args.get<std::string>() : args.dump()});
          ++k;
        }
      }
    } catch (const json::exception& e) {
      throw ParseError(i + 1, fmt::format("malformed replay turn: {}", e.what()));
    }
    turns_.push_back(std::move(turn));
  }
}

ReplayProvider ReplayProvider::from_file(const std::string& path) { return ReplayProvider(io::read_file(path)); }

ChatMessage ReplayProvider::complete(const CompletionRequest& request) {
  if (next_ >= turns_.size())
    throw ProviderError(fmt::format("replay script exhausted after {} turn(s); agent '{}' asked for more",
                                    turns_.size(), request.agent));
  const auto& turn = turns_[next_];
  const ChatMessage* last = request.messages.empty() ? nullptr : &request.messages.back();
  std::string actual_role = last ? std::string(to_string(last->role)) : "none";
  std::string actual_content = last ? last->content : "";
  bool agent_ok = turn.agent.empty() || turn.agent == request.agent;
  bool role_ok = turn.expect_role.empty() || turn.expect_role == actual_role;
  bool text_ok = turn.expect_contains.empty() || actual_content.find(turn.expect_contains) != std::string::npos;
  if (!agent_ok || !role_ok || !text_ok) {
    throw Error(Errc::divergence,
                fmt::format("replay diverged at script line {}: expected agent '{}'{}{}; got agent '{}', "
                            "last message {} \"{}\"",
                            turn.line, turn.agent.empty() ? "*" : turn.agent,
                            turn.expect_role.empty() ? "" : fmt::format(", last role {}", turn.expect_role),
                            turn.expect_contains.empty() ? ""
                                                         : fmt::format(", containing \"{}\"", turn.expect_contains),
                            request.agent, actual_role, excerpt(actual_content)));
  }
  ++next_;
  return turn.reply;
}

UrlParts split_url(std::string_view url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::cmatch m;
  if (!std::regex_match(url.begin(), url.end(), m, re))
    throw Error(Errc::config, fmt::format("'{}' is not an http(s) URL", url));
  std::string path = m[2].matched ? m[2].str() : "";
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {m[1].str(), path};
}

HttpChatProvider::HttpChatProvider(HttpProviderConfig config) : config_(std::move(config)) {
  split_url(config_.endpoint);
}

json HttpChatProvider::request_document(const CompletionRequest& request) {
  json doc = {{"model", request.model}};
  auto msgs = json::array();
  for (const auto& m : request.messages) msgs.push_back(message_to_json(m));
  doc["messages"] = std::move(msgs);
  if (!request.tools.empty()) {
    auto tools = json::array();
    for (const auto& t : request.tools) tools.push_back(schema_to_json(t));
    doc["tools"] = std::move(tools);
  }
  return doc;
}

ChatMessage HttpChatProvider::complete(const CompletionRequest& request) {
  auto url = split_url(config_.endpoint);
  httplib::Client client(url.scheme_host_port);
  if (!client.is_valid())
    throw Error(Errc::config, fmt::format("cannot create an HTTP client for {}", url.scheme_host_port));
  auto timeout = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  auto res = client.Post(url.path + "/chat/completions", headers, request_document(request).dump(),
                         "application/json");
  if (!res)
    throw ProviderError(fmt::format("chat request to {} failed: {}", config_.endpoint, httplib::to_string(res.error())),
                        RetryInfo{true, 0, std::nullopt});
  if (res->status != 200) {
    RetryInfo retry{res->status == 429 || res->status >= 500, res->status, std::nullopt};
    if (res->has_header("Retry-After")) {
      if (auto s = text::parse_int(res->get_header_value("Retry-After"))) retry.retry_after_seconds = static_cast<int>(*s);
    }
    throw ProviderError(fmt::format("chat endpoint returned HTTP {}: {}", res->status, excerpt(res->body)), retry);
  }
  auto body = json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.contains("choices") || body["choices"].empty())
    throw ProviderError(fmt::format("chat endpoint returned an unexpected document: {}", excerpt(res->body)));
  try {
    auto msg = message_from_json(body["choices"][0].at("message"));
    msg.role = Role::assistant;
    return msg;
  } catch (const Error& e) {
    throw ProviderError(e.what());
  }
}

}  // namespace simcrew::agentcore
