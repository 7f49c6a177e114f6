#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace simcrew::crews {

namespace fs = std::filesystem;

/// Path namespace seen by agents. "library:", "structures:", "examples:" and
/// "corpus:" prefixes name read-only roots; anything else is relative to the
/// team's work directory. Absolute paths and ".." are refused, and tool
/// output only ever shows these virtual names so transcripts do not depend
/// on where the work directory lives.
class Workspace {
 public:
  struct Roots {
    fs::path library;
    fs::path structures;
    fs::path examples;
    fs::path corpus;
  };

  Workspace(Roots roots, fs::path work);

  /// Throws Error(precondition) for absolute paths, "..", or an unknown or
  /// unconfigured prefix.
  fs::path resolve(std::string_view virtual_path) const;
  /// As resolve, and additionally refuses read-only roots.
  fs::path resolve_writable(std::string_view virtual_path) const;

  /// Inverse of resolve for paths under one of the roots; other paths are
  /// returned unchanged.
  std::string display(const fs::path& path) const;

  const Roots& roots() const noexcept { return roots_; }
  const fs::path& work() const noexcept { return work_; }

 private:
  Roots roots_;
  fs::path work_;
};

}  // namespace simcrew::crews
