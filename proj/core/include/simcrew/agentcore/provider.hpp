#pragma once

#include "simcrew/agentcore/message.hpp"

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::agentcore {

struct CompletionRequest {
  std::string agent;
  std::string model;
  const std::vector<ChatMessage>& messages;
  const std::vector<ToolSchema>& tools;
};

class Provider {
 public:
  virtual ~Provider() = default;

  /// Returns an assistant message. Throws ProviderError on transport failure.
  virtual ChatMessage complete(const CompletionRequest& request) = 0;
};

/// Serves assistant turns from a script, one JSON object per line:
///   {"agent": "...", "expect": {"last_role": "tool", "contains": "..."},
///    "assistant": {"content": "...", "tool_calls": [{"name": "...", "arguments": {...}}]}}
/// "agent" and "expect" are optional. A turn whose agent or expectation does
/// not match the request throws Error(divergence); running out of turns
/// throws ProviderError.
class ReplayProvider : public Provider {
 public:
  explicit ReplayProvider(std::string_view script);
  static ReplayProvider from_file(const std::string& path);

  ChatMessage complete(const CompletionRequest& request) override;

  std::size_t calls() const noexcept { return next_; }
  std::size_t remaining() const noexcept { return turns_.size() - next_; }

 private:
  struct Turn {
    std::size_t line = 0;
    std::string agent;
    std::string expect_role;
    std::string expect_contains;
    ChatMessage reply;
  };
  std::vector<Turn> turns_;
  std::size_t next_ = 0;
};

struct HttpProviderConfig {
  std::string endpoint;  // base URL, e.g. https://api.openai.com/v1
  std::string api_key;
  std::chrono::seconds timeout{120};
};

/// OpenAI-compatible POST {endpoint}/chat/completions with function tools.
class HttpChatProvider : public Provider {
 public:
  explicit HttpChatProvider(HttpProviderConfig config);

  ChatMessage complete(const CompletionRequest& request) override;

  /// Request document for a completion; exposed for inspection.
  static nlohmann::json request_document(const CompletionRequest& request);

 private:
  HttpProviderConfig config_;
};

struct UrlParts {
  std::string scheme_host_port;  // "http://127.0.0.1:8080"
  std::string path;              // "/v1" (no trailing slash)
};

/// Throws Error(config) unless the URL is http(s)://host[:port][/path].
UrlParts split_url(std::string_view url);

}  // namespace simcrew::agentcore
