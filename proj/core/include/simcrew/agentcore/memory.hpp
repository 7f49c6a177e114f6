#pragma once

#include "simcrew/agentcore/tools.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::agentcore {

enum class ReportStatus { done, failed, needs_input };

std::string_view to_string(ReportStatus s) noexcept;

struct MemoryReport {
  std::string author;
  std::uint64_t timestamp = 0;  // logical sequence number, set on append
  std::string summary;
  std::vector<Artifact> outputs;
  ReportStatus status = ReportStatus::done;
};

nlohmann::json report_to_json(const MemoryReport& r);

inline constexpr std::size_t kDefaultMemoryBudget = 6000;  // characters
inline constexpr std::string_view kEmptyMemoryText = "No prior reports.";

/// Shared append-only log. Timestamps are logical so replayed runs render
/// identically.
class GlobalMemory {
 public:
  /// Returns the assigned timestamp.
  std::uint64_t append(MemoryReport report);

  std::size_t size() const;
  std::vector<MemoryReport> snapshot() const;

  /// Chronological digest; when over budget the oldest reports are dropped
  /// and counted.
  std::string render(std::string_view for_agent, std::size_t budget = kDefaultMemoryBudget) const;

 private:
  mutable std::mutex mu_;
  std::vector<MemoryReport> reports_;
};

}  // namespace simcrew::agentcore
