#include "simcrew/siminput/task.hpp"

#include "simcrew/error.hpp"

#include <fmt/core.h>

#include <cmath>

namespace simcrew::siminput {
namespace {

using nlohmann::json;

TaskKind kind_from_string(const std::string& s) {
  if (s == "isotherm") return TaskKind::isotherm;
  if (s == "heat-of-adsorption" || s == "hoa") return TaskKind::heat_of_adsorption;
  if (s == "mixture-isotherm") return TaskKind::mixture_isotherm;
  throw Error(Errc::unknown_task, fmt::format("unknown task kind '{}'", s));
}

}  // namespace

std::string_view to_string(TaskKind kind) noexcept {
  switch (kind) {
    case TaskKind::isotherm: return "isotherm";
    case TaskKind::heat_of_adsorption: return "heat-of-adsorption";
    case TaskKind::mixture_isotherm: return "mixture-isotherm";
  }
  return "";
}

void validate_task(const TaskRequest& task) {
  if (task.adsorbates.empty()) throw Error(Errc::precondition, "task names no adsorbates");
  if (task.is_isotherm() && task.pressures.empty())
    throw Error(Errc::precondition, "isotherm task has no pressure points");
  if (!(task.cutoff > 0)) throw Error(Errc::precondition, "cutoff must be positive");
  if (!(task.temperature > 0)) throw Error(Errc::precondition, "temperature must be positive");
}

std::vector<double> log_pressure_grid(double low, double high, int points) {
  if (!(low > 0) || !(high >= low) || points < 1)
    throw Error(Errc::precondition,
                fmt::format("invalid pressure range [{}, {}] with {} points", low, high, points));
  if (points == 1) return {low};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  double a = std::log10(low), b = std::log10(high);
  for (int i = 0; i < points; ++i) {
    double x = a + (b - a) * i / (points - 1);
    out.push_back(i == 0 ? low : i == points - 1 ? high : std::pow(10.0, x));
  }
  return out;
}

TaskRequest task_from_json(const json& j) {
  try {
    TaskRequest t;
    t.kind = kind_from_string(j.at("kind").get<std::string>());
    t.adsorbates = j.at("adsorbates").get<std::vector<std::string>>();
    if (auto it = j.find("structures"); it != j.end()) {
      if (it->is_array()) t.structures = it->get<std::vector<std::string>>();
      else t.structure_glob = it->at("glob").get<std::string>();
    } else {
      t.structure_glob = "*";
    }
    t.temperature = j.value("temperature", t.temperature);
    if (auto it = j.find("pressures"); it != j.end()) {
      t.pressures = it->get<std::vector<double>>();
    } else if (auto r = j.find("pressure_range"); r != j.end()) {
      t.pressures = log_pressure_grid(r->at("min").get<double>(), r->at("max").get<double>(),
                                      r->at("points").get<int>());
    }
    if (auto it = j.find("forcefield"); it != j.end()) {
      if (it->is_string()) {
        t.forcefield.kind = ForceFieldDirective::Kind::library;
        t.forcefield.value = it->get<std::string>();
      } else if (it->contains("library")) {
        t.forcefield.kind = ForceFieldDirective::Kind::library;
        t.forcefield.value = it->at("library").get<std::string>();
      } else if (it->contains("research")) {
        t.forcefield.kind = ForceFieldDirective::Kind::research;
        t.forcefield.value = it->at("research").get<std::string>();
      }
    }
    t.cutoff = j.value("cutoff", t.cutoff);
    t.cycles = j.value("cycles", t.cycles);
    t.init_cycles = j.value("initialization_cycles", t.init_cycles);
    return t;
  } catch (const json::exception& e) {
    throw Error(Errc::config, fmt::format("malformed task request: {}", e.what()));
  }
}

json task_to_json(const TaskRequest& task) {
  json j;
  j["kind"] = to_string(task.kind);
  j["adsorbates"] = task.adsorbates;
  if (!task.structures.empty()) j["structures"] = task.structures;
  else j["structures"] = {{"glob", task.structure_glob.empty() ? "*" : task.structure_glob}};
  j["temperature"] = task.temperature;
  if (!task.pressures.empty()) j["pressures"] = task.pressures;
  switch (task.forcefield.kind) {
    case ForceFieldDirective::Kind::library: j["forcefield"] = {{"library", task.forcefield.value}}; break;
    case ForceFieldDirective::Kind::research: j["forcefield"] = {{"research", task.forcefield.value}}; break;
    case ForceFieldDirective::Kind::automatic: break;
  }
  j["cutoff"] = task.cutoff;
  j["cycles"] = task.cycles;
  j["initialization_cycles"] = task.init_cycles;
  return j;
}

bool glob_match(std::string_view pattern, std::string_view name) noexcept {
  std::size_t p = 0, n = 0, star = std::string_view::npos, mark = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++p;
      ++n;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = n;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace simcrew::siminput
