#include "simcrew/crews/toolbox.hpp"

#include "simcrew/chemio/geometry.hpp"
#include "simcrew/chemio/structure.hpp"
#include "simcrew/error.hpp"
#include "simcrew/forcefield/files.hpp"
#include "simcrew/forcefield/json.hpp"
#include "simcrew/forcefield/library.hpp"
#include "simcrew/io.hpp"
#include "simcrew/simlint/lint.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <memory>
#include <set>

namespace simcrew::crews {
namespace {

using agentcore::arg_number;
using agentcore::arg_string;
using agentcore::Artifact;
using agentcore::ToolParam;
using agentcore::ToolResult;
using agentcore::ToolSchema;
using nlohmann::json;

std::vector<std::string> string_list(const json& args, const std::string& key) {
  std::vector<std::string> out;
  auto it = args.find(key);
  if (it == args.end() || it->is_null()) return out;
  if (!it->is_array()) throw Error(Errc::precondition, fmt::format("'{}' must be a list of strings", key));
  for (const auto& v : *it) {
    if (!v.is_string()) throw Error(Errc::precondition, fmt::format("'{}' must be a list of strings", key));
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<fs::path> cif_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& p : sorted_entries(dir)) {
    if (fs::is_regular_file(p) && text::iequals(p.extension().string(), ".cif")) out.push_back(p);
  }
  return out;
}

bool is_ff_file(const std::string& name) {
  return name == forcefield::kPseudoAtomsFile || name == forcefield::kMixingRulesFile ||
         name == forcefield::kOverridesFile;
}

std::string cells_text(const chemio::Replication& r) { return fmt::format("{} {} {}", r[0], r[1], r[2]); }

template <class T>
siminput::Bindable<T> bindable(const json& v, T (*convert)(const json&)) {
  if (v.is_string() && siminput::is_placeholder_token(v.get<std::string>()))
    return siminput::Placeholder{v.get<std::string>()};
  return convert(v);
}

double as_double(const json& v) {
  if (!v.is_number()) throw Error(Errc::format, fmt::format("expected a number, got {}", v.dump()));
  return v.get<double>();
}

std::vector<double> as_doubles(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw Error(Errc::format, fmt::format("expected a list of numbers, got {}", v.dump()));
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_double(x));
  return out;
}

siminput::UnitCells as_cells(const json& v) {
  if (!v.is_array() || v.size() != 3) throw Error(Errc::format, "unit_cells must be three integers");
  siminput::UnitCells c{};
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number_integer() || v[i].get<int>() < 1)
      throw Error(Errc::format, "unit_cells must be three positive integers");
    c[i] = v[i].get<int>();
  }
  return c;
}

std::string as_string(const json& v) {
  if (!v.is_string()) throw Error(Errc::format, fmt::format("expected a string, got {}", v.dump()));
  return v.get<std::string>();
}

std::string describe_findings(const std::vector<simlint::Finding>& findings) {
  if (findings.empty()) return "No findings.";
  return simlint::render_report(findings);
}

class Tools {
 public:
  Tools(agentcore::ToolRegistry& registry, ToolContext& ctx) : reg_(registry), ctx_(ctx) {}

  // Handlers capture `this`; each one also holds `self` so the object
  // lives as long as the registry.
  static void register_all(const std::shared_ptr<Tools>& self) {
    self->keep_ = self;
    self->catalog();
    self->files();
    self->setup();
    self->research();
    self->keep_.reset();
  }

 private:
  const Workspace& ws() const { return ctx_.workspace; }
  std::string show(const fs::path& p) const { return ws().display(p); }

  void add(std::string name, std::string description, std::vector<ToolParam> params, agentcore::ToolHandler h) {
    reg_.add({std::move(name), std::move(description), std::move(params)},
             [keep = keep_, h = std::move(h)](const json& a) { return h(a); });
  }

  LiteratureStore& literature() const {
    if (!ctx_.literature) throw Error(Errc::config, "no literature store is configured");
    return *ctx_.literature;
  }

  const PaperRecord& paper(const std::string& id) const {
    const auto* p = ctx_.session.find(id);
    if (!p) throw Error(Errc::not_found, fmt::format("paper '{}' has not been downloaded; call download_paper first", id));
    return *p;
  }

  void catalog() {
    add("list_all_example_simulation_inputs", "List the example simulation.input files with a one-line description.",
        {}, [this](const json&) {
          auto examples = siminput::example_inputs_catalog(ws().roots().examples);
          std::string out;
          for (const auto& e : examples) out += fmt::format("examples:{}: {}\n", e.name, e.description);
          return ToolResult::ok(out.empty() ? "No example inputs." : out);
        });

    add("read_atoms_in_file", "Atom types in a CIF (with counts), force-field file or molecule definition.",
        {{"path", "string", "file to inspect"}}, [this](const json& a) {
          auto path = ws().resolve(arg_string(a, "path"));
          auto name = path.filename().string();
          std::string out;
          if (text::iequals(path.extension().string(), ".cif")) {
            for (const auto& [type, n] : chemio::atom_type_census(chemio::read_cif_file(path.string())))
              out += fmt::format("{}: {}\n", type, n);
          } else if (is_ff_file(name)) {
            out = text::join(forcefield::atoms_in_ff_file(path), "\n") + "\n";
          } else {
            auto mol = forcefield::parse_molecule(io::read_file(path), path.stem().string());
            std::vector<std::string> types;
            for (const auto& at : mol.atoms) types.push_back(at.type);
            out = text::join(types, "\n") + "\n";
          }
          return ToolResult::ok(out);
        });

    add("count_atom_type_in_cif", "Number of sites of one atom type in a CIF.",
        {{"path", "string", "CIF file"}, {"atom_type", "string", "type symbol, e.g. Si"}}, [this](const json& a) {
          auto s = chemio::read_cif_file(ws().resolve(arg_string(a, "path")).string());
          return ToolResult::ok(std::to_string(chemio::count_atom_type(s, arg_string(a, "atom_type"))));
        });

    add("get_unit_cell_size", "Cell lengths (Å), angles (degrees) and perpendicular widths of a CIF.",
        {{"path", "string", "CIF file"}}, [this](const json& a) {
          auto s = chemio::read_cif_file(ws().resolve(arg_string(a, "path")).string());
          const auto& l = s.lattice;
          auto w = chemio::perpendicular_widths(l);
          return ToolResult::ok(fmt::format(
              "a {} b {} c {}\nalpha {} beta {} gamma {}\nperpendicular widths {} {} {}\n", text::format_number(l.a),
              text::format_number(l.b), text::format_number(l.c), text::format_number(l.alpha),
              text::format_number(l.beta), text::format_number(l.gamma), text::format_number(w[0]),
              text::format_number(w[1]), text::format_number(w[2])));
        });

    add("get_all_force_field_descriptions", "Force fields available in the library with their descriptions.", {},
        [this](const json&) {
          auto cat = forcefield::library_catalog(ws().roots().library);
          std::string out;
          for (const auto& e : cat.entries)
            out += fmt::format("{}: {}\n  types: {}\n", e.name, e.description, text::join(e.atom_types, ", "));
          for (const auto& w : cat.warnings) out += fmt::format("warning: {}\n", w);
          return ToolResult::ok(out.empty() ? "The library is empty." : out);
        });

    add("get_atoms_in_ff_file", "Atom types named in a pseudo_atoms, mixing-rules or force_field file.",
        {{"path", "string", "force-field file"}}, [this](const json& a) {
          auto types = forcefield::atoms_in_ff_file(ws().resolve(arg_string(a, "path")));
          return ToolResult::ok(text::join(types, "\n") + "\n");
        });

    add("semantic_scholar_search", "Search the literature; returns identifiers, titles and abstracts.",
        {{"query", "string", "search text"}, {"limit", "integer", "maximum number of results", false}},
        [this](const json& a) {
          auto limit = static_cast<int>(arg_number(a, "limit", 5));
          auto hits = literature().search(arg_string(a, "query"), limit);
          if (hits.empty()) return ToolResult::ok("No papers found.");
          std::string out;
          for (const auto& h : hits) out += fmt::format("{} | {}\n  {}\n", h.id, h.title, h.abstract);
          return ToolResult::ok(out);
        });

    add("download_paper", "Fetch a paper by identifier or DOI so its sections can be read.",
        {{"paper_id", "string", "identifier from a search result"}}, [this](const json& a) {
          auto id = arg_string(a, "paper_id");
          if (const auto* p = ctx_.session.find(id))
            return ToolResult::ok(fmt::format("{} is already available ({} sections)", p->id, p->sections.size()));
          auto record = literature().download(id);
          auto msg = fmt::format("downloaded {}: {} ({} sections)", record.id, record.title, record.sections.size());
          Artifact art{"paper", record.id};
          ctx_.session.papers.push_back(std::move(record));
          return ToolResult::ok(msg, {art});
        });

    add("read_paper_headers", "Section headers of a downloaded paper, in order.",
        {{"paper_id", "string", "downloaded paper"}}, [this](const json& a) {
          auto headers = read_headers(paper(arg_string(a, "paper_id")));
          std::string out;
          for (std::size_t i = 0; i < headers.size(); ++i) out += fmt::format("{}. {}\n", i + 1, headers[i]);
          return ToolResult::ok(out);
        });

    add("read_paper_section", "Full text of one section of a downloaded paper.",
        {{"paper_id", "string", "downloaded paper"}, {"header", "string", "section header"}},
        [this](const json& a) {
          return ToolResult::ok(read_section(paper(arg_string(a, "paper_id")), arg_string(a, "header")));
        });
  }

  void files() {
    add("read_file", "Read a text file.", {{"path", "string", "file to read"}},
        [this](const json& a) { return ToolResult::ok(io::read_file(ws().resolve(arg_string(a, "path")))); });

    add("write_file", "Write a text file inside the work folder, replacing any existing file.",
        {{"path", "string", "destination"}, {"content", "string", "file content"}}, [this](const json& a) {
          auto p = ws().resolve_writable(arg_string(a, "path"));
          io::write_file(p, arg_string(a, "content"));
          return ToolResult::ok(fmt::format("wrote {}", show(p)), {{"file", show(p)}});
        });

    add("copy_file", "Copy a file; a destination ending in '/' or naming a folder keeps the file name.",
        {{"source", "string", "file to copy"}, {"destination", "string", "target file or folder"}},
        [this](const json& a) {
          auto src = ws().resolve(arg_string(a, "source"));
          auto dest_arg = arg_string(a, "destination");
          auto dest = ws().resolve_writable(dest_arg);
          if (!fs::is_regular_file(src)) throw Error(Errc::io, fmt::format("{} is not a file", show(src)));
          if ((!dest_arg.empty() && dest_arg.back() == '/') || fs::is_directory(dest)) dest /= src.filename();
          fs::create_directories(dest.parent_path());
          fs::copy_file(src, dest, fs::copy_options::overwrite_existing);
          return ToolResult::ok(fmt::format("copied {} to {}", show(src), show(dest)), {{"file", show(dest)}});
        });

    add("list_directory", "List a folder; sub-folders end with '/'.",
        {{"path", "string", "folder (default: the work folder)", false}}, [this](const json& a) {
          auto dir = ws().resolve(arg_string(a, "path", "."));
          if (!fs::is_directory(dir)) throw Error(Errc::not_found, fmt::format("{} is not a folder", show(dir)));
          std::string out;
          for (const auto& p : sorted_entries(dir))
            out += p.filename().string() + (fs::is_directory(p) ? "/" : "") + "\n";
          return ToolResult::ok(out.empty() ? "(empty)" : out);
        });
  }

  void setup() {
    add("list_structures", "Framework names (CIF stems) in the structure library matching a glob.",
        {{"pattern", "string", "glob such as M*; default *", false}}, [this](const json& a) {
          auto pattern = arg_string(a, "pattern", "*");
          std::string out;
          for (const auto& p : cif_files(ws().roots().structures)) {
            if (siminput::glob_match(pattern, p.stem().string())) out += p.stem().string() + "\n";
          }
          return ToolResult::ok(out.empty() ? "No structures match." : out);
        });

    add("copy_structures", "Copy framework CIFs from the structure library into a work folder.",
        {{"names", "array", "framework names", false},
         {"pattern", "string", "glob over framework names", false},
         {"destination", "string", "work folder; default structures", false}},
        [this](const json& a) {
          auto names = string_list(a, "names");
          auto pattern = arg_string(a, "pattern", "");
          if (names.empty() && pattern.empty()) throw Error(Errc::precondition, "give names or a pattern");
          auto dest = ws().resolve_writable(arg_string(a, "destination", "structures"));
          auto available = cif_files(ws().roots().structures);
          std::vector<fs::path> chosen;
          for (const auto& n : names) {
            auto it = std::find_if(available.begin(), available.end(),
                                   [&](const fs::path& p) { return p.stem() == n || p.filename() == n; });
            if (it == available.end()) throw Error(Errc::not_found, fmt::format("unknown structure '{}'", n));
            chosen.push_back(*it);
          }
          if (!pattern.empty()) {
            for (const auto& p : available) {
              if (siminput::glob_match(pattern, p.stem().string())) chosen.push_back(p);
            }
          }
          std::sort(chosen.begin(), chosen.end());
          chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
          if (chosen.empty()) throw Error(Errc::not_found, fmt::format("no structure matches '{}'", pattern));
          fs::create_directories(dest);
          std::vector<Artifact> arts;
          for (const auto& p : chosen) {
            chemio::read_cif_file(p.string());  // refuse to stage an unreadable file
            fs::copy_file(p, dest / p.filename(), fs::copy_options::overwrite_existing);
            arts.push_back({"structure", show(dest / p.filename())});
          }
          return ToolResult::ok(fmt::format("copied {} structure(s) to {}", chosen.size(), show(dest)),
                                std::move(arts));
        });

    add("combine_force_fields", "Merge library force fields (first wins on conflicts) and write the files.",
        {{"names", "array", "library entries, e.g. [\"Dubbeldam-CH4\"]"},
         {"destination", "string", "work folder; default forcefield", false}},
        [this](const json& a) {
          auto names = string_list(a, "names");
          if (names.empty()) throw Error(Errc::precondition, "names must list at least one force field");
          std::vector<forcefield::ForceFieldBundle> bundles;
          for (const auto& n : names) bundles.push_back(forcefield::load_bundle(ws().resolve("library:" + n)));
          auto first = bundles.front();
          bundles.erase(bundles.begin());
          auto result = forcefield::combine_force_fields(first, bundles);
          result.bundle.name = text::join(names, "+");
          auto dest = ws().resolve_writable(arg_string(a, "destination", "forcefield"));
          auto written = forcefield::render_bundle(result.bundle, dest);
          std::string out = fmt::format("wrote {} file(s) to {}\n", written.size(), show(dest));
          for (const auto& c : result.collisions)
            out += fmt::format("conflict {} {}: kept {}, dropped {}\n", c.kind, c.key, c.kept_from, c.dropped_from);
          return ToolResult::ok(out, {{"force-field", show(dest)}});
        });

    add("write_force_field_files", "Write force-field files from a bundle document.",
        {{"bundle", "object", "pseudo_atoms, self_params, overrides, molecules, ..."},
         {"destination", "string", "work folder; default forcefield", false}},
        [this](const json& a) {
          auto bundle = forcefield::bundle_from_json(a.at("bundle"));
          forcefield::validate_bundle(bundle);
          auto dest = ws().resolve_writable(arg_string(a, "destination", "forcefield"));
          auto written = forcefield::render_bundle(bundle, dest);
          std::vector<std::string> names;
          for (const auto& p : written) names.push_back(p.filename().string());
          return ToolResult::ok(fmt::format("wrote {} to {}", text::join(names, ", "), show(dest)),
                                {{"force-field", show(dest)}});
        });

    add("render_simulation_input", "Write <destination>/simulation.input from a structured description.",
        {{"spec", "object", "components, cycles, temperature, pressure, cutoff, ..."},
         {"destination", "string", "work folder, e.g. template/methane"}},
        [this](const json& a) {
          auto spec = spec_from_json(a.at("spec"));
          auto dest = ws().resolve_writable(arg_string(a, "destination"));
          io::write_file(dest / siminput::kInputFile, siminput::render_simulation_input(spec));
          auto tokens = siminput::placeholders_in(spec);
          return ToolResult::ok(fmt::format("wrote {}; placeholders: {}", show(dest / siminput::kInputFile),
                                            tokens.empty() ? "none" : text::join(tokens, " ")),
                                {{"simulation-template", show(dest)}});
        });

    add("get_minimum_unit_cells", "Smallest replication of a CIF's cell for a cutoff (minimum image).",
        {{"path", "string", "CIF file"}, {"cutoff", "number", "cutoff in Å", false}}, [this](const json& a) {
          auto s = chemio::read_cif_file(ws().resolve(arg_string(a, "path")).string());
          return ToolResult::ok(cells_text(chemio::replication_for_cutoff(s.lattice, arg_number(a, "cutoff", ctx_.cutoff))));
        });

    add("replicate_template",
        "Create one simulation folder per staged structure from a template, binding FRAMEWORK and UNITCELLS.",
        {{"template", "string", "template folder"},
         {"structures", "string", "folder of CIFs; default structures", false},
         {"forcefield", "string", "force-field folder; default forcefield", false},
         {"destination", "string", "output folder; default runs", false},
         {"cutoff", "number", "cutoff for the unit cells, Å", false},
         {"bindings", "object", "extra placeholder values, e.g. {\"{PRESSURE}\": \"1e4 1e5\"}", false},
         {"condition_index", "integer", "suffix for the folder names; default 0", false}},
        [this](const json& a) {
          auto tdir = ws().resolve(arg_string(a, "template"));
          auto sdir = ws().resolve(arg_string(a, "structures", "structures"));
          auto fdir = ws().resolve(arg_string(a, "forcefield", "forcefield"));
          auto dest = ws().resolve_writable(arg_string(a, "destination", "runs"));
          auto cutoff = arg_number(a, "cutoff", ctx_.cutoff);
          auto index = static_cast<int>(arg_number(a, "condition_index", 0));
          siminput::TemplateBinding extra;
          if (auto b = a.find("bindings"); b != a.end() && b->is_object()) {
            for (const auto& [k, v] : b->items()) extra[k] = v.is_string() ? v.get<std::string>() : v.dump();
          }
          auto tmpl = complete_template(tdir, sdir, fdir);
          auto cifs = cif_files(sdir);
          if (cifs.empty()) throw Error(Errc::not_found, fmt::format("no CIF files in {}", show(sdir)));
          std::string out;
          std::vector<Artifact> arts;
          std::set<std::string> warnings;
          for (const auto& cif : cifs) {
            auto s = chemio::read_cif_file(cif.string());
            auto b = extra;
            b[std::string(siminput::kFrameworkToken)] = cif.stem().string();
            b[std::string(siminput::kUnitCellsToken)] = cells_text(chemio::replication_for_cutoff(s.lattice, cutoff));
            auto inst = siminput::instantiate_template(tmpl, b, index);
            warnings.insert(inst.warnings.begin(), inst.warnings.end());
            auto folder = siminput::materialize_plan(inst.plan, dest);
            out += fmt::format("{} (unit cells {})\n", show(folder), b[std::string(siminput::kUnitCellsToken)]);
            arts.push_back({"simulation-folder", show(folder)});
          }
          for (const auto& w : warnings) out += fmt::format("warning: {}\n", w);
          return ToolResult::ok(out, std::move(arts));
        });

    add("validate_simulation_folder", "Static checks on a simulation folder (or a template folder).",
        {{"path", "string", "folder with simulation.input"},
         {"template_mode", "boolean", "skip checks that need bound placeholders", false}},
        [this](const json& a) {
          auto dir = ws().resolve(arg_string(a, "path"));
          simlint::LintOptions opts;
          opts.template_mode = a.value("template_mode", false);
          auto findings = simlint::validate_folder(dir, ctx_.task, opts);
          for (auto& f : findings) f.folder = show(dir);
          return ToolResult::ok(describe_findings(findings));
        });
  }

  void research() {
    add("record_parameters", "Record force-field parameters extracted from a paper.",
        {{"paper_id", "string", "paper the values come from"},
         {"summary", "string", "what the paper's force field covers"},
         {"parameters", "array", "[{key, name, value, units}]; name is epsilon, sigma, charge, bond-length, angle"},
         {"molecule_notes", "array", "geometry notes", false},
         {"unresolved", "array", "cited works that hold missing values", false}},
        [this](const json& a) {
          ExtractionFindings f;
          f.paper_id = arg_string(a, "paper_id");
          paper(f.paper_id);
          f.summary = arg_string(a, "summary");
          f.parameters = evalbench::parameter_set_from_json(a.at("parameters"));
          f.molecule_notes = string_list(a, "molecule_notes");
          f.unresolved = string_list(a, "unresolved");
          auto msg = fmt::format("recorded {} parameter(s) from {}", f.parameters.size(), f.paper_id);
          if (!f.unresolved.empty()) msg += fmt::format("; unresolved: {}", text::join(f.unresolved, "; "));
          ctx_.session.findings.push_back(std::move(f));
          return ToolResult::ok(msg);
        });

    add("read_extraction_findings", "All parameters and notes recorded so far.", {}, [this](const json&) {
      auto arr = json::array();
      for (const auto& f : ctx_.session.findings) arr.push_back(findings_to_json(f));
      return ToolResult::ok(arr.dump(2));
    });
  }

  agentcore::ToolRegistry& reg_;
  ToolContext& ctx_;
  std::shared_ptr<Tools> keep_;
};

}  // namespace

json findings_to_json(const ExtractionFindings& f) {
  return {{"paper_id", f.paper_id},
          {"summary", f.summary},
          {"parameters", evalbench::parameter_set_to_json(f.parameters)},
          {"molecule_notes", f.molecule_notes},
          {"unresolved", f.unresolved}};
}

const PaperRecord* ResearchSession::find(std::string_view id) const noexcept {
  for (const auto& p : papers) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

evalbench::ParameterSet ResearchSession::merged_parameters() const {
  evalbench::ParameterSet out;
  for (const auto& f : findings) {
    for (const auto& s : f.parameters.slots()) out.set(s);
  }
  return out;
}

const std::vector<std::string>& catalog_tool_names() {
  static const std::vector<std::string> names = {
      "list_all_example_simulation_inputs", "read_atoms_in_file",      "count_atom_type_in_cif",
      "get_unit_cell_size",                 "get_all_force_field_descriptions", "get_atoms_in_ff_file",
      "semantic_scholar_search",            "download_paper",          "read_paper_headers",
      "read_paper_section"};
  return names;
}

void register_domain_tools(agentcore::ToolRegistry& registry, ToolContext& context) {
  Tools::register_all(std::make_shared<Tools>(registry, context));
}

agentcore::ToolRegistry make_tool_registry(ToolContext& context) {
  agentcore::ToolRegistry r;
  register_domain_tools(r, context);
  return r;
}

siminput::SimulationTemplate complete_template(const fs::path& template_dir, const fs::path& structures_dir,
                                               const fs::path& forcefield_dir) {
  auto tmpl = siminput::load_template(template_dir, structures_dir);
  auto has = [&](const std::string& name) {
    return std::any_of(tmpl.files.begin(), tmpl.files.end(), [&](const auto& f) { return f.filename == name; });
  };
  if (tmpl.spec.forcefield == "Local") {
    for (auto name : {forcefield::kPseudoAtomsFile, forcefield::kMixingRulesFile, forcefield::kOverridesFile}) {
      std::string n(name);
      if (!has(n) && fs::exists(forcefield_dir / n))
        tmpl.files.push_back({siminput::FileRole::force_field_file, n, forcefield_dir / n});
    }
  }
  for (const auto& c : tmpl.spec.components) {
    auto n = c.molecule_name + ".def";
    if (c.molecule_definition == "Local" && !has(n) && fs::exists(forcefield_dir / n))
      tmpl.files.push_back({siminput::FileRole::molecule_def, n, forcefield_dir / n});
  }
  return tmpl;
}

siminput::SimulationSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::format, "spec must be a JSON object");
  siminput::SimulationSpec s;
  try {
    s.simulation_type = j.value("simulation_type", s.simulation_type);
    s.cycles = j.value("cycles", s.cycles);
    s.init_cycles = j.value("init_cycles", s.init_cycles);
    s.print_every = j.value("print_every", s.print_every);
    s.forcefield = j.value("forcefield", s.forcefield);
    s.cutoff = j.value("cutoff", s.cutoff);
    auto charge = j.value("charge_method", std::string("none"));
    if (text::iequals(charge, "ewald")) s.charge_method = siminput::ChargeMethod::ewald;
    else if (text::iequals(charge, "none")) s.charge_method = siminput::ChargeMethod::none;
    else throw Error(Errc::format, fmt::format("unknown charge_method '{}'", charge));
    if (j.contains("framework")) s.framework_name = bindable<std::string>(j.at("framework"), as_string);
    if (j.contains("unit_cells")) s.unit_cells = bindable<siminput::UnitCells>(j.at("unit_cells"), as_cells);
    if (j.contains("temperature")) s.temperature = bindable<double>(j.at("temperature"), as_double);
    if (j.contains("pressure")) s.pressure = bindable<std::vector<double>>(j.at("pressure"), as_doubles);
    s.global_extras = j.value("global_extras", std::vector<std::string>{});
    s.framework_extras = j.value("framework_extras", std::vector<std::string>{});
    int index = 0;
    const auto comps = j.value("components", json::array());
    for (const auto& c : comps) {
      siminput::ComponentSpec comp;
      comp.index = index++;
      comp.molecule_name = c.at("molecule").get<std::string>();
      comp.molecule_definition = c.value("definition", comp.molecule_definition);
      comp.create_count = c.value("create", 0);
      comp.extras = c.value("extras", std::vector<std::string>{});
      const auto moves = c.value("moves", json::object());
      for (const auto& [name, p] : moves.items()) {
        auto kind = siminput::move_from_name(name);
        if (!kind) throw Error(Errc::format, fmt::format("unknown move '{}'", name));
        comp.moves[*kind] = p.get<double>();
      }
      s.components.push_back(std::move(comp));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::format, fmt::format("malformed spec: {}", e.what()));
  }
  if (s.components.empty()) throw Error(Errc::format, "spec needs at least one component");
  return s;
}

}  // namespace simcrew::crews
