#pragma once

#include <filesystem>
#include <random>
#include <string>

namespace simcrew::testing {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return fs::path(SIMCREW_FIXTURE_DIR); }
inline fs::path fixture(const std::string& rel) { return fixture_dir() / rel; }

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "simcrew") {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = fs::temp_directory_path() / (tag + "-" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

/// Copies a fixture tree into a fresh location so tests may mutate it.
inline void copy_tree(const fs::path& from, const fs::path& to) {
  fs::create_directories(to);
  fs::copy(from, to, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
}

}  // namespace simcrew::testing
