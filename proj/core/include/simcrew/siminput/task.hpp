#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace simcrew::siminput {

inline constexpr double kDefaultCutoff = 12.0;  // Å

enum class TaskKind { isotherm, heat_of_adsorption, mixture_isotherm };

std::string_view to_string(TaskKind kind) noexcept;

struct ForceFieldDirective {
  enum class Kind { automatic, library, research };
  Kind kind = Kind::automatic;
  std::string value;  // library entry name or literature query / DOI
};

/// A characterization request as handed to the setup team.
struct TaskRequest {
  TaskKind kind = TaskKind::isotherm;
  std::vector<std::string> adsorbates;
  std::vector<std::string> structures;  // explicit names; empty means use the glob
  std::string structure_glob;
  double temperature = 298.0;           // K
  std::vector<double> pressures;        // Pa
  ForceFieldDirective forcefield;
  double cutoff = kDefaultCutoff;
  long cycles = 10000;
  long init_cycles = 2000;

  bool is_isotherm() const noexcept { return kind != TaskKind::heat_of_adsorption; }
};

/// Throws Error(precondition) when adsorbates are empty or an isotherm has no
/// pressure points.
void validate_task(const TaskRequest& task);

/// `points` values log-spaced over [low, high].
std::vector<double> log_pressure_grid(double low, double high, int points);

/// Accepts "pressures": [...] or "pressure_range": {"min", "max", "points"};
/// "structures" is a name list or {"glob": pattern}. Throws Error(config).
TaskRequest task_from_json(const nlohmann::json& j);
nlohmann::json task_to_json(const TaskRequest& task);

bool glob_match(std::string_view pattern, std::string_view name) noexcept;

}  // namespace simcrew::siminput
