#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace simcrew::siminput {

/// Brace-delimited upper-case token such as {FRAMEWORK}, left in a template
/// until bound.
struct Placeholder {
  std::string token;

  bool operator==(const Placeholder&) const = default;
};

template <class T>
using Bindable = std::variant<T, Placeholder>;

inline constexpr std::string_view kFrameworkToken = "{FRAMEWORK}";
inline constexpr std::string_view kUnitCellsToken = "{UNITCELLS}";
inline constexpr std::string_view kPressureToken = "{PRESSURE}";
inline constexpr std::string_view kTemperatureToken = "{TEMPERATURE}";

bool is_placeholder_token(std::string_view token) noexcept;

enum class MoveKind { translation, rotation, reinsertion, swap, widom, identity_change };
inline constexpr std::array<MoveKind, 6> kAllMoves = {
    MoveKind::translation, MoveKind::rotation, MoveKind::reinsertion,
    MoveKind::swap,        MoveKind::widom,    MoveKind::identity_change};

/// RASPA keyword, e.g. "SwapProbability".
std::string_view move_keyword(MoveKind kind) noexcept;
std::string_view move_name(MoveKind kind) noexcept;  // e.g. "swap"
std::optional<MoveKind> move_from_name(std::string_view name) noexcept;

enum class ChargeMethod { none, ewald };

using UnitCells = std::array<int, 3>;

struct ComponentSpec {
  int index = 0;
  std::string molecule_name;
  std::string molecule_definition = "Local";
  std::map<MoveKind, double> moves;  // zero entries are kept but never rendered
  int create_count = 0;
  std::vector<std::string> extras;

  double probability(MoveKind kind) const noexcept;
  bool has_positive_move() const noexcept;

  /// Compares moves by their positive entries only.
  bool operator==(const ComponentSpec& other) const;
};

struct SimulationSpec {
  std::string simulation_type = "MonteCarlo";
  long cycles = 10000;
  long init_cycles = 2000;
  long print_every = 1000;
  std::string forcefield = "Local";
  double cutoff = 12.0;  // Å
  ChargeMethod charge_method = ChargeMethod::none;
  std::vector<std::string> global_extras;

  Bindable<std::string> framework_name = Placeholder{std::string(kFrameworkToken)};
  Bindable<UnitCells> unit_cells = Placeholder{std::string(kUnitCellsToken)};
  std::optional<Bindable<double>> temperature;                // K
  std::optional<Bindable<std::vector<double>>> pressure;      // Pa
  std::vector<std::string> framework_extras;

  std::vector<ComponentSpec> components;

  bool operator==(const SimulationSpec&) const = default;
};

/// Tokens still unbound anywhere in the spec, in first-seen order.
std::vector<std::string> placeholders_in(const SimulationSpec& spec);

/// Canonical keyword order; placeholders render as their tokens.
std::string render_simulation_input(const SimulationSpec& spec);

/// Throws ParseError (with line) for non-numeric values and Error(structural)
/// for component index gaps or a missing framework.
SimulationSpec parse_simulation_input(std::string_view text);

}  // namespace simcrew::siminput
