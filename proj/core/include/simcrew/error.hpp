#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace simcrew {

/// Category of a failure raised anywhere in the toolchain. Tests and the CLI
/// dispatch on this rather than on message text.
enum class Errc {
  parse,
  malformed_structure,
  geometry,
  format,
  duplicate,
  unsupported_potential,
  missing_type,
  incompatible,
  dangling_reference,
  structural,
  unknown_adsorbate,
  unknown_task,
  unbound_placeholder,
  precondition,
  not_found,
  io,
  config,
  provider,
  divergence,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Parse failure tied to a 1-based source line (0 when no line applies).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(Errc::parse, line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct RetryInfo {
  bool retryable = false;
  int http_status = 0;  // 0 when no response was received
  std::optional<int> retry_after_seconds;
};

/// Transport or protocol failure from a model provider or literature service.
class ProviderError : public Error {
 public:
  using Retry = RetryInfo;

  explicit ProviderError(const std::string& message, Retry retry = Retry{})
      : Error(Errc::provider, message), retry_(retry) {}

  const Retry& retry() const noexcept { return retry_; }

 private:
  Retry retry_;
};

}  // namespace simcrew
