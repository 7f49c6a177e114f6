#include "simcrew/chemio/geometry.hpp"
#include "simcrew/chemio/structure.hpp"
#include "simcrew/error.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace simcrew::chemio {
namespace {

struct Loop {
  std::size_t line = 0;
  std::vector<std::string> tags;  // lower-cased
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

struct Value {
  std::string text;
  std::size_t line = 0;
};

// Drops a trailing comment; '#' only starts a comment at a token boundary
// outside quotes.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
      continue;
    }
    if ((c == '\'' || c == '"') && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
      quote = c;
    } else if (c == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
      return line.substr(0, i);
    }
  }
  return line;
}

// CIF numbers may carry a standard uncertainty: 20.022(3).
std::optional<double> cif_number(std::string_view token) {
  auto paren = token.find('(');
  if (paren != std::string_view::npos) token = token.substr(0, paren);
  return text::parse_double(token);
}

bool is_null(std::string_view token) { return token == "?" || token == "."; }

long find_column(const Loop& loop, std::string_view tag) {
  auto it = std::find(loop.tags.begin(), loop.tags.end(), tag);
  return it == loop.tags.end() ? -1 : static_cast<long>(it - loop.tags.begin());
}

}  // namespace

double wrap_fractional(double x) noexcept {
  double w = x - std::floor(x);
  if (w >= 1.0) w = 0.0;  // -1e-17 - floor(...) rounds up to 1
  return w;
}

CrystalStructure parse_cif(std::string_view input) {
  const auto lines = text::split_lines(input);

  std::optional<std::string> block_name;
  std::unordered_map<std::string, Value> items;
  std::vector<Loop> loops;
  Loop* open_loop = nullptr;
  bool loop_in_header = false;
  std::optional<std::string> pending_tag;  // tag whose value is on a later line

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::size_t lineno = idx + 1;
    const std::string& raw = lines[idx];

    if (!raw.empty() && raw.front() == ';') {
      // Text field; runs until a line starting with ';'.
      std::string body = raw.substr(1);
      ++idx;
      while (idx < lines.size() && (lines[idx].empty() || lines[idx].front() != ';')) {
        body += '\n' + lines[idx];
        ++idx;
      }
      if (pending_tag) {
        items[*pending_tag] = Value{body, lineno};
        pending_tag.reset();
      }
      continue;
    }

    auto tokens = text::split_ws(strip_comment(raw));
    if (tokens.empty()) continue;
    const std::string head = text::to_lower(tokens.front());
    const bool is_tag = !head.empty() && head.front() == '_';

    if (head.rfind("data_", 0) == 0) {
      if (block_name) {
        throw Error(Errc::malformed_structure,
                    fmt::format("line {}: multiple data blocks are not supported", lineno));
      }
      block_name = tokens.front().substr(5);
      open_loop = nullptr;
      continue;
    }
    if (head == "loop_") {
      loops.push_back(Loop{lineno, {}, {}});
      open_loop = &loops.back();
      loop_in_header = true;
      pending_tag.reset();
      continue;
    }

    if (open_loop != nullptr) {
      if (loop_in_header && is_tag) {
        open_loop->tags.push_back(head);
        continue;
      }
      if (!is_tag) {
        loop_in_header = false;
        open_loop->rows.emplace_back(lineno, std::move(tokens));
        continue;
      }
      open_loop = nullptr;  // a new item tag ends the loop
    }

    if (is_tag) {
      if (tokens.size() >= 2) {
        items[head] = Value{tokens[1], lineno};
        pending_tag.reset();
      } else {
        pending_tag = head;
      }
      continue;
    }
    if (pending_tag) {
      items[*pending_tag] = Value{tokens.front(), lineno};
      pending_tag.reset();
    }
  }

  if (!block_name) throw Error(Errc::malformed_structure, "missing data_ block header");

  CrystalStructure structure;
  structure.name = *block_name;

  auto cell_value = [&](const char* tag) {
    auto it = items.find(tag);
    if (it == items.end()) {
      throw Error(Errc::malformed_structure, fmt::format("missing cell tag {}", tag));
    }
    auto v = cif_number(it->second.text);
    if (!v) {
      throw ParseError(it->second.line,
                       fmt::format("{} value '{}' is not numeric", tag, it->second.text));
    }
    return *v;
  };
  structure.lattice.a = cell_value("_cell_length_a");
  structure.lattice.b = cell_value("_cell_length_b");
  structure.lattice.c = cell_value("_cell_length_c");
  structure.lattice.alpha = cell_value("_cell_angle_alpha");
  structure.lattice.beta = cell_value("_cell_angle_beta");
  structure.lattice.gamma = cell_value("_cell_angle_gamma");
  validate_lattice(structure.lattice);

  const Loop* sites = nullptr;
  for (const auto& loop : loops) {
    if (find_column(loop, "_atom_site_fract_x") >= 0) {
      sites = &loop;
      break;
    }
  }
  if (sites == nullptr) throw ParseError(lines.size(), "atom-site loop with fractional coordinates is absent");

  const long col_label = find_column(*sites, "_atom_site_label");
  const long col_type = find_column(*sites, "_atom_site_type_symbol");
  const long col_x = find_column(*sites, "_atom_site_fract_x");
  const long col_y = find_column(*sites, "_atom_site_fract_y");
  const long col_z = find_column(*sites, "_atom_site_fract_z");
  const long col_q = find_column(*sites, "_atom_site_charge");
  for (auto [tag, col] : {std::pair{"_atom_site_label", col_label},
                          std::pair{"_atom_site_type_symbol", col_type},
                          std::pair{"_atom_site_fract_y", col_y},
                          std::pair{"_atom_site_fract_z", col_z}}) {
    if (col < 0) throw ParseError(sites->line, fmt::format("atom-site loop lacks {}", tag));
  }

  for (const auto& [lineno, row] : sites->rows) {
    if (row.size() != sites->tags.size()) {
      throw ParseError(lineno, fmt::format("atom-site row has {} values, loop declares {}",
                                           row.size(), sites->tags.size()));
    }
    AtomSite site;
    site.label = row[col_label];
    site.type_symbol = row[col_type];
    if (site.type_symbol.empty() || is_null(site.type_symbol)) {
      throw ParseError(lineno, "empty atom type symbol");
    }
    const long coord_cols[3] = {col_x, col_y, col_z};
    for (std::size_t k = 0; k < 3; ++k) {
      auto v = cif_number(row[coord_cols[k]]);
      if (!v) {
        throw ParseError(lineno, fmt::format("fractional coordinate '{}' is not numeric",
                                             row[coord_cols[k]]));
      }
      site.fract[k] = wrap_fractional(*v);
    }
    if (col_q >= 0 && !is_null(row[col_q])) {
      auto q = cif_number(row[col_q]);
      if (!q) throw ParseError(lineno, fmt::format("charge '{}' is not numeric", row[col_q]));
      site.charge = *q;
    }
    structure.sites.push_back(std::move(site));
  }
  if (structure.sites.empty()) {
    throw Error(Errc::malformed_structure, "structure has no atom sites");
  }
  return structure;
}

CrystalStructure read_cif_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cif(ss.str());
}

std::string write_cif(const CrystalStructure& s) {
  using text::format_number;
  std::string out;
  out += "data_" + s.name + "\n";
  out += "_cell_length_a " + format_number(s.lattice.a) + "\n";
  out += "_cell_length_b " + format_number(s.lattice.b) + "\n";
  out += "_cell_length_c " + format_number(s.lattice.c) + "\n";
  out += "_cell_angle_alpha " + format_number(s.lattice.alpha) + "\n";
  out += "_cell_angle_beta " + format_number(s.lattice.beta) + "\n";
  out += "_cell_angle_gamma " + format_number(s.lattice.gamma) + "\n";
  const bool charges = std::any_of(s.sites.begin(), s.sites.end(),
                                   [](const AtomSite& a) { return a.charge.has_value(); });
  out += "loop_\n_atom_site_label\n_atom_site_type_symbol\n"
         "_atom_site_fract_x\n_atom_site_fract_y\n_atom_site_fract_z\n";
  if (charges) out += "_atom_site_charge\n";
  for (const auto& a : s.sites) {
    out += a.label + " " + a.type_symbol + " " + format_number(a.fract[0]) + " " +
           format_number(a.fract[1]) + " " + format_number(a.fract[2]);
    if (charges) out += " " + (a.charge ? format_number(*a.charge) : std::string("?"));
    out += "\n";
  }
  return out;
}

std::map<std::string, std::size_t> atom_type_census(const CrystalStructure& structure) {
  std::map<std::string, std::size_t> census;
  for (const auto& site : structure.sites) ++census[site.type_symbol];
  return census;
}

std::size_t count_atom_type(const CrystalStructure& structure, std::string_view type_symbol) {
  return static_cast<std::size_t>(std::count_if(
      structure.sites.begin(), structure.sites.end(),
      [&](const AtomSite& a) { return a.type_symbol == type_symbol; }));
}

}  // namespace simcrew::chemio
