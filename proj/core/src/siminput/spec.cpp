#include "simcrew/siminput/spec.hpp"

#include "simcrew/error.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>

namespace simcrew::siminput {
namespace {

using text::format_number;
using text::iequals;

constexpr int kKeyWidth = 30;
constexpr std::string_view kComponentIndent = "            ";

// Probabilities keep a decimal point so "1.0" reads as a probability.
std::string format_probability(double p) {
  auto s = format_number(p);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void key_line(std::string& out, std::string_view key, std::string_view value,
              std::string_view indent = {}) {
  out += fmt::format("{}{:<{}}{}\n", indent, key, kKeyWidth, value);
}

template <class T, class F>
std::string bindable_text(const Bindable<T>& v, F&& format) {
  if (const auto* p = std::get_if<Placeholder>(&v)) return p->token;
  return format(std::get<T>(v));
}

std::string join_numbers(const std::vector<double>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (double v : values) parts.push_back(format_number(v));
  return text::join(parts, " ");
}

void note_placeholder(std::vector<std::string>& out, const std::string& token) {
  if (std::find(out.begin(), out.end(), token) == out.end()) out.push_back(token);
}

void scan_tokens(std::vector<std::string>& out, std::string_view line) {
  for (const auto& tok : text::split_ws(line)) {
    if (is_placeholder_token(tok)) note_placeholder(out, tok);
  }
}

template <class T>
void scan_bindable(std::vector<std::string>& out, const Bindable<T>& v) {
  if (const auto* p = std::get_if<Placeholder>(&v)) note_placeholder(out, p->token);
}

std::optional<MoveKind> move_from_keyword(std::string_view key) {
  for (auto m : kAllMoves) {
    if (iequals(key, move_keyword(m))) return m;
  }
  return std::nullopt;
}

enum class Section { global, framework, component };

class Parser {
 public:
  SimulationSpec run(std::string_view input) {
    auto lines = text::split_lines(input);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      line_ = i + 1;
      std::string_view raw = lines[i];
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      auto body = text::trim(raw);
      if (body.empty()) continue;
      auto tokens = text::split_ws(body);
      handle(std::string(body), tokens);
    }
    if (!have_framework_) throw Error(Errc::structural, "simulation input names no FrameworkName");
    return std::move(spec_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, message); }

  const std::string& value(const std::vector<std::string>& tokens) const {
    if (tokens.size() < 2) fail(fmt::format("keyword {} has no value", tokens[0]));
    return tokens[1];
  }

  double number(const std::vector<std::string>& tokens) const {
    const auto& v = value(tokens);
    auto d = text::parse_double(v);
    if (!d) fail(fmt::format("{} expects a number, got '{}'", tokens[0], v));
    return *d;
  }

  long integer(const std::vector<std::string>& tokens) const {
    const auto& v = value(tokens);
    auto n = text::parse_int(v);
    if (!n) fail(fmt::format("{} expects an integer, got '{}'", tokens[0], v));
    return static_cast<long>(*n);
  }

  ComponentSpec& component() { return spec_.components.back(); }

  void handle(std::string body, const std::vector<std::string>& tokens) {
    const auto& key = tokens[0];
    if (iequals(key, "Component")) return open_component(tokens);
    if (iequals(key, "Framework")) {
      section_ = Section::framework;
      return;
    }
    if (iequals(key, "SimulationType")) return void(spec_.simulation_type = value(tokens));
    if (iequals(key, "NumberOfCycles")) return void(spec_.cycles = integer(tokens));
    if (iequals(key, "NumberOfInitializationCycles")) return void(spec_.init_cycles = integer(tokens));
    if (iequals(key, "PrintEvery")) return void(spec_.print_every = integer(tokens));
    if (iequals(key, "Forcefield")) return void(spec_.forcefield = value(tokens));
    if (iequals(key, "CutOff")) return void(spec_.cutoff = number(tokens));
    if (iequals(key, "ChargeMethod")) return charge_method(tokens);
    if (iequals(key, "FrameworkName")) {
      const auto& v = value(tokens);
      if (is_placeholder_token(v)) spec_.framework_name = Placeholder{v};
      else spec_.framework_name = v;
      have_framework_ = true;
      return;
    }
    if (iequals(key, "UnitCells")) return unit_cells(tokens);
    if (iequals(key, "ExternalTemperature")) {
      if (is_placeholder_token(value(tokens))) spec_.temperature = Placeholder{tokens[1]};
      else spec_.temperature = number(tokens);
      return;
    }
    if (iequals(key, "ExternalPressure")) return pressure(tokens);
    if (section_ == Section::component) {
      if (iequals(key, "MoleculeDefinition")) return void(component().molecule_definition = value(tokens));
      if (iequals(key, "CreateNumberOfMolecules")) {
        auto n = integer(tokens);
        if (n < 0) fail("CreateNumberOfMolecules must not be negative");
        component().create_count = static_cast<int>(n);
        return;
      }
      if (auto move = move_from_keyword(key)) {
        double p = number(tokens);
        if (p < 0) fail(fmt::format("{} must not be negative", key));
        component().moves[*move] = p;
        return;
      }
    }
    switch (section_) {
      case Section::global: spec_.global_extras.push_back(std::move(body)); break;
      case Section::framework: spec_.framework_extras.push_back(std::move(body)); break;
      case Section::component: component().extras.push_back(std::move(body)); break;
    }
  }

  void open_component(const std::vector<std::string>& tokens) {
    if (tokens.size() < 4 || !iequals(tokens[2], "MoleculeName"))
      fail("expected 'Component <index> MoleculeName <name>'");
    auto idx = text::parse_int(tokens[1]);
    if (!idx || *idx < 0) fail(fmt::format("component index '{}' is not a non-negative integer", tokens[1]));
    if (static_cast<std::size_t>(*idx) != spec_.components.size())
      throw Error(Errc::structural,
                  fmt::format("line {}: component index {} follows {} component(s); indices must be "
                              "consecutive from 0",
                              line_, *idx, spec_.components.size()));
    ComponentSpec c;
    c.index = static_cast<int>(*idx);
    c.molecule_name = tokens[3];
    spec_.components.push_back(std::move(c));
    section_ = Section::component;
  }

  void charge_method(const std::vector<std::string>& tokens) {
    const auto& v = value(tokens);
    if (iequals(v, "None")) spec_.charge_method = ChargeMethod::none;
    else if (iequals(v, "Ewald")) spec_.charge_method = ChargeMethod::ewald;
    else fail(fmt::format("unsupported ChargeMethod '{}'", v));
  }

  void unit_cells(const std::vector<std::string>& tokens) {
    if (tokens.size() == 2 && is_placeholder_token(tokens[1])) {
      spec_.unit_cells = Placeholder{tokens[1]};
      return;
    }
    if (tokens.size() != 4) fail("UnitCells expects three integers");
    UnitCells cells{};
    for (int i = 0; i < 3; ++i) {
      auto n = text::parse_int(tokens[i + 1]);
      if (!n) fail(fmt::format("UnitCells expects integers, got '{}'", tokens[i + 1]));
      cells[i] = static_cast<int>(*n);
    }
    spec_.unit_cells = cells;
  }

  void pressure(const std::vector<std::string>& tokens) {
    if (tokens.size() == 2 && is_placeholder_token(tokens[1])) {
      spec_.pressure = Placeholder{tokens[1]};
      return;
    }
    if (tokens.size() < 2) fail("ExternalPressure has no value");
    std::vector<double> values;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      auto d = text::parse_double(tokens[i]);
      if (!d) fail(fmt::format("ExternalPressure expects numbers, got '{}'", tokens[i]));
      values.push_back(*d);
    }
    spec_.pressure = std::move(values);
  }

  SimulationSpec spec_;
  Section section_ = Section::global;
  bool have_framework_ = false;
  std::size_t line_ = 0;
};

}  // namespace

bool is_placeholder_token(std::string_view token) noexcept {
  if (token.size() < 3 || token.front() != '{' || token.back() != '}') return false;
  return std::all_of(token.begin() + 1, token.end() - 1, [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::string_view move_keyword(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::translation: return "TranslationProbability";
    case MoveKind::rotation: return "RotationProbability";
    case MoveKind::reinsertion: return "ReinsertionProbability";
    case MoveKind::swap: return "SwapProbability";
    case MoveKind::widom: return "WidomProbability";
    case MoveKind::identity_change: return "IdentityChangeProbability";
  }
  return "";
}

std::string_view move_name(MoveKind kind) noexcept {
  switch (kind) {
    case MoveKind::translation: return "translation";
    case MoveKind::rotation: return "rotation";
    case MoveKind::reinsertion: return "reinsertion";
    case MoveKind::swap: return "swap";
    case MoveKind::widom: return "widom";
    case MoveKind::identity_change: return "identity-change";
  }
  return "";
}

std::optional<MoveKind> move_from_name(std::string_view name) noexcept {
  for (auto m : kAllMoves) {
    if (iequals(name, move_name(m))) return m;
  }
  return std::nullopt;
}

double ComponentSpec::probability(MoveKind kind) const noexcept {
  auto it = moves.find(kind);
  return it == moves.end() ? 0.0 : it->second;
}

bool ComponentSpec::has_positive_move() const noexcept {
  return std::any_of(moves.begin(), moves.end(), [](const auto& m) { return m.second > 0; });
}

bool ComponentSpec::operator==(const ComponentSpec& other) const {
  if (index != other.index || molecule_name != other.molecule_name ||
      molecule_definition != other.molecule_definition || create_count != other.create_count ||
      extras != other.extras)
    return false;
  return std::all_of(kAllMoves.begin(), kAllMoves.end(), [&](MoveKind m) {
    auto a = probability(m), b = other.probability(m);
    return (a > 0 || b > 0) ? a == b : true;
  });
}

std::vector<std::string> placeholders_in(const SimulationSpec& spec) {
  std::vector<std::string> out;
  for (const auto& l : spec.global_extras) scan_tokens(out, l);
  scan_bindable(out, spec.framework_name);
  scan_bindable(out, spec.unit_cells);
  if (spec.temperature) scan_bindable(out, *spec.temperature);
  if (spec.pressure) scan_bindable(out, *spec.pressure);
  for (const auto& l : spec.framework_extras) scan_tokens(out, l);
  for (const auto& c : spec.components) {
    scan_tokens(out, c.molecule_name);
    for (const auto& l : c.extras) scan_tokens(out, l);
  }
  return out;
}

std::string render_simulation_input(const SimulationSpec& spec) {
  std::string out;
  key_line(out, "SimulationType", spec.simulation_type);
  key_line(out, "NumberOfCycles", std::to_string(spec.cycles));
  key_line(out, "NumberOfInitializationCycles", std::to_string(spec.init_cycles));
  key_line(out, "PrintEvery", std::to_string(spec.print_every));
  key_line(out, "Forcefield", spec.forcefield);
  key_line(out, "CutOff", format_number(spec.cutoff));
  key_line(out, "ChargeMethod", spec.charge_method == ChargeMethod::ewald ? "Ewald" : "None");
  for (const auto& l : spec.global_extras) out += l + '\n';

  out += '\n';
  key_line(out, "Framework", "0");
  key_line(out, "FrameworkName", bindable_text(spec.framework_name, [](const std::string& s) { return s; }));
  key_line(out, "UnitCells", bindable_text(spec.unit_cells, [](const UnitCells& u) {
             return fmt::format("{} {} {}", u[0], u[1], u[2]);
           }));
  if (spec.temperature)
    key_line(out, "ExternalTemperature",
             bindable_text(*spec.temperature, [](double t) { return format_number(t); }));
  if (spec.pressure) key_line(out, "ExternalPressure", bindable_text(*spec.pressure, join_numbers));
  for (const auto& l : spec.framework_extras) out += l + '\n';

  for (const auto& c : spec.components) {
    out += '\n';
    out += fmt::format("Component {} MoleculeName {}\n", c.index, c.molecule_name);
    key_line(out, "MoleculeDefinition", c.molecule_definition, kComponentIndent);
    for (auto m : kAllMoves) {
      double p = c.probability(m);
      if (p > 0) key_line(out, move_keyword(m), format_probability(p), kComponentIndent);
    }
    for (const auto& l : c.extras) out += fmt::format("{}{}\n", kComponentIndent, l);
    key_line(out, "CreateNumberOfMolecules", std::to_string(c.create_count), kComponentIndent);
  }
  return out;
}

SimulationSpec parse_simulation_input(std::string_view text) { return Parser{}.run(text); }

}  // namespace simcrew::siminput
