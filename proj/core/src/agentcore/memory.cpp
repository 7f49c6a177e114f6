#include "simcrew/agentcore/memory.hpp"

#include <fmt/core.h>

namespace simcrew::agentcore {

std::string_view to_string(ReportStatus s) noexcept {
  switch (s) {
    case ReportStatus::done: return "done";
    case ReportStatus::failed: return "failed";
    case ReportStatus::needs_input: return "needs-input";
  }
  return "";
}

nlohmann::json report_to_json(const MemoryReport& r) {
  auto outputs = nlohmann::json::array();
  for (const auto& a : r.outputs) outputs.push_back({{"role", a.role}, {"value", a.value}});
  return {{"author", r.author},     {"timestamp", r.timestamp}, {"summary", r.summary},
          {"outputs", outputs}, {"status", to_string(r.status)}};
}

std::uint64_t GlobalMemory::append(MemoryReport report) {
  std::lock_guard lock(mu_);
  report.timestamp = reports_.size() + 1;
  reports_.push_back(std::move(report));
  return reports_.back().timestamp;
}

std::size_t GlobalMemory::size() const {
  std::lock_guard lock(mu_);
  return reports_.size();
}

std::vector<MemoryReport> GlobalMemory::snapshot() const {
  std::lock_guard lock(mu_);
  return reports_;
}

std::string GlobalMemory::render(std::string_view for_agent, std::size_t budget) const {
  auto reports = snapshot();
  if (reports.empty()) return std::string(kEmptyMemoryText);

  std::vector<std::string> entries;
  entries.reserve(reports.size());
  for (const auto& r : reports) {
    auto e = fmt::format("[{}] {}{} ({}): {}\n", r.timestamp, r.author, r.author == for_agent ? " (you)" : "",
                         to_string(r.status), r.summary);
    for (const auto& a : r.outputs) e += fmt::format("    - {}: {}\n", a.role, a.value);
    entries.push_back(std::move(e));
  }

  // Walk back from the newest report; the newest is always kept whole.
  std::size_t first = entries.size() - 1, used = entries.back().size();
  while (first > 0 && used + entries[first - 1].size() <= budget) {
    --first;
    used += entries[first].size();
  }
  std::string out;
  if (first > 0) out += fmt::format("({} older report(s) omitted)\n", first);
  for (std::size_t i = first; i < entries.size(); ++i) out += entries[i];
  return out;
}

}  // namespace simcrew::agentcore
