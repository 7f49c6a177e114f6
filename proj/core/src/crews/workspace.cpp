#include "simcrew/crews/workspace.hpp"

#include "simcrew/error.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <array>
#include <optional>
#include <utility>

namespace simcrew::crews {
namespace {

fs::path normalized(const fs::path& p) { return fs::weakly_canonical(p).lexically_normal(); }

// Relative path of `p` below `root`, or nullopt.
std::optional<std::string> below(const fs::path& p, const fs::path& root) {
  if (root.empty()) return std::nullopt;
  auto rel = normalized(p).lexically_relative(normalized(root));
  if (rel.empty()) return std::nullopt;
  auto s = rel.generic_string();
  if (s == ".") return std::string{};
  if (s.rfind("..", 0) == 0) return std::nullopt;
  return s;
}

}  // namespace

Workspace::Workspace(Roots roots, fs::path work) : roots_(std::move(roots)), work_(std::move(work)) {}

fs::path Workspace::resolve(std::string_view virtual_path) const {
  auto v = text::trim(virtual_path);
  const fs::path* base = &work_;
  std::string_view prefix = "work";
  const std::array<std::pair<std::string_view, const fs::path*>, 4> named = {
      {{"library", &roots_.library}, {"structures", &roots_.structures}, {"examples", &roots_.examples},
       {"corpus", &roots_.corpus}}};
  if (auto colon = v.find(':'); colon != std::string_view::npos) {
    auto name = v.substr(0, colon);
    base = nullptr;
    for (const auto& [n, p] : named) {
      if (n == name) {
        base = p;
        prefix = n;
      }
    }
    if (!base) throw Error(Errc::precondition, fmt::format("unknown path prefix '{}:'", name));
    v = v.substr(colon + 1);
  }
  if (base->empty()) throw Error(Errc::precondition, fmt::format("the {} root is not configured", prefix));
  fs::path rel{std::string(v)};
  if (rel.is_absolute() || (!v.empty() && v.front() == '/'))
    throw Error(Errc::precondition, fmt::format("absolute path '{}' is outside the workspace", v));
  for (const auto& part : rel) {
    if (part == "..") throw Error(Errc::precondition, fmt::format("path '{}' leaves the workspace", v));
  }
  return rel.empty() || v == "." ? *base : *base / rel;
}

fs::path Workspace::resolve_writable(std::string_view virtual_path) const {
  if (virtual_path.find(':') != std::string_view::npos)
    throw Error(Errc::precondition, fmt::format("'{}' is read-only; write inside the work folder", virtual_path));
  return resolve(virtual_path);
}

std::string Workspace::display(const fs::path& path) const {
  if (auto r = below(path, work_)) return r->empty() ? "." : *r;
  const std::array<std::pair<std::string_view, const fs::path*>, 4> named = {
      {{"library", &roots_.library}, {"structures", &roots_.structures}, {"examples", &roots_.examples},
       {"corpus", &roots_.corpus}}};
  for (const auto& [n, p] : named) {
    if (auto r = below(path, *p)) return fmt::format("{}:{}", n, *r);
  }
  return path.string();
}

}  // namespace simcrew::crews
