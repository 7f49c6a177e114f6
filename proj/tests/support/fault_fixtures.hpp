#pragma once

// Builds simulation folders that reproduce each documented setup mistake on
// top of a clean plan_batch folder.

#include "simcrew/chemio/structure.hpp"
#include "simcrew/forcefield/library.hpp"
#include "simcrew/io.hpp"
#include "simcrew/siminput/plan.hpp"

#include "test_support.hpp"

#include <stdexcept>
#include <string>

namespace simcrew::testing {

struct FaultCase {
  siminput::TaskRequest task;
  fs::path folder;
};

class FaultBench {
 public:
  explicit FaultBench(const fs::path& root) : root_(root) {
    auto ch4 = forcefield::load_bundle(fixture("library/Dubbeldam-CH4"));
    auto co2 = forcefield::load_bundle(fixture("library/Garcia-Sanchez-CO2"));
    bundle_ = forcefield::combine_force_fields(ch4, {co2}).bundle;
    bundle_dir_ = root_ / "ff";
    forcefield::render_bundle(bundle_, bundle_dir_);
    auto cif = fixture("structures/MFI.cif");
    mfi_ = {chemio::read_cif_file(cif.string()), cif};
  }

  const fs::path& bundle_dir() const noexcept { return bundle_dir_; }

  static siminput::TaskRequest isotherm() {
    siminput::TaskRequest t;
    t.adsorbates = {"methane"};
    t.pressures = {1e4, 1e5};
    return t;
  }

  static siminput::TaskRequest hoa() {
    auto t = isotherm();
    t.kind = siminput::TaskKind::heat_of_adsorption;
    t.pressures.clear();
    return t;
  }

  siminput::SimulationPlan plan(const siminput::TaskRequest& task, double cutoff = 12.0) const {
    std::vector<siminput::StructureSource> s = {mfi_};
    return siminput::plan_batch(task, s, task.adsorbates, bundle_, bundle_dir_, cutoff).front();
  }

  FaultCase clean(const std::string& tag, const siminput::TaskRequest& task) const {
    return {task, siminput::materialize_plan(plan(task), root_ / tag)};
  }

  FaultCase make(const std::string& note) const {
    using siminput::MoveKind;
    auto rewrite = [](const fs::path& folder, siminput::SimulationSpec spec) {
      io::write_file(folder / siminput::kInputFile, siminput::render_simulation_input(spec));
    };
    if (note == "adsorbate-files-copied") {
      auto c = clean(note, isotherm());
      fs::copy_file(bundle_dir_ / "CO2.def", c.folder / "CO2.def");
      return c;
    }
    if (note == "zero-probability-moves" || note == "no-moves" || note == "widom-misconfigured") {
      auto c = clean(note, hoa());
      auto p = plan(hoa());
      auto& moves = p.spec.components[0].moves;
      if (note == "zero-probability-moves") {
        for (auto m : siminput::kAllMoves) moves[m] = m == MoveKind::widom ? 1.0 : 0.0;
      } else if (note == "no-moves") {
        moves.clear();
      } else {
        moves = {{MoveKind::translation, 1.0}};
      }
      rewrite(c.folder, p.spec);
      return c;
    }
    if (note == "cif-not-copied") {
      auto c = clean(note, hoa());
      fs::remove(c.folder / "MFI.cif");
      return c;
    }
    if (note == "redundant-ff-files") {
      auto c = clean(note, hoa());
      fs::copy_file(fixture("library/TraPPE-zeo/pseudo_atoms.def"), c.folder / "pseudo_atoms_trappe.def");
      fs::copy_file(fixture("library/TraPPE-zeo/force_field_mixing_rules.def"),
                    c.folder / "force_field_mixing_rules_old.def");
      return c;
    }
    if (note == "minimum-unit-cells") {
      auto c = clean(note, isotherm());
      auto p = plan(isotherm());
      p.spec.unit_cells = siminput::UnitCells{3, 3, 3};
      rewrite(c.folder, p.spec);
      return c;
    }
    if (note == "mixture-instead-of-single") {
      auto task = isotherm();
      task.adsorbates = {"methane", "CO2"};
      auto mixed = task;
      mixed.kind = siminput::TaskKind::mixture_isotherm;
      std::vector<siminput::StructureSource> s = {mfi_};
      auto p = siminput::plan_batch(mixed, s, mixed.adsorbates, bundle_, bundle_dir_).front();
      return {task, siminput::materialize_plan(p, root_ / note)};
    }
    if (note == "wide-cutoff") {
      return {isotherm(), siminput::materialize_plan(plan(isotherm(), 24.0), root_ / note)};
    }
    throw std::invalid_argument("no seeded fault for note " + note);
  }

 private:
  fs::path root_;
  forcefield::ForceFieldBundle bundle_;
  fs::path bundle_dir_;
  siminput::StructureSource mfi_;
};

}  // namespace simcrew::testing
