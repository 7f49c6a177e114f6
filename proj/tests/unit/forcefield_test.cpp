#include "simcrew/error.hpp"
#include "simcrew/forcefield/files.hpp"
#include "simcrew/forcefield/json.hpp"
#include "simcrew/forcefield/library.hpp"
#include "simcrew/forcefield/mixing.hpp"
#include "simcrew/io.hpp"

#include "generators.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace simcrew;
using namespace simcrew::forcefield;
using simcrew::testing::random_bundle;
using simcrew::testing::fixture;
using simcrew::testing::TempDir;

namespace {

constexpr const char* kTwoAtoms = R"(#number of pseudo atoms
2
#type print as chem oxidation mass charge polarization B-factor radii connectivity anisotropic anisotropic-type tinker-type
CH4_sp3 yes C C 0 16.04246 0 0 1 1 0 0 absolute 0
He      yes He He 0 4.002602 0 0 1 1 0 0 absolute 0
)";

constexpr const char* kMixing = R"(# general rule for shifted vs truncated
shifted
# general rule tailcorrections
no
# number of defined interactions
2
# type interaction
CH4_sp3 lennard-jones 158.5 3.72
He      lennard-jones 10.9  2.64
# general mixing rule for Lennard-Jones
Lorentz-Berthelot
)";

constexpr const char* kOneOverride = R"(# rules to overwrite
0
# number of defined interactions
1
# type type2 interaction
C_co2 O lennard-jones 37.595 3.511
# mixing rules to overwrite
0
)";

PseudoAtom atom(const std::string& name, double charge = 0.0) {
  PseudoAtom a;
  a.name = name;
  a.element = name.substr(0, 1);
  a.chem = a.element;
  a.mass = 12.0;
  a.charge = charge;
  return a;
}

ForceFieldBundle small_bundle(const std::string& name, std::vector<std::string> types,
                              double eps = 100.0) {
  ForceFieldBundle b;
  b.name = name;
  for (const auto& t : types) {
    b.pseudo_atoms.push_back(atom(t));
    b.self_params.push_back({t, {eps, 3.0}});
  }
  return b;
}

}  // namespace

TEST(PseudoAtoms, ParsesDeclaredRows) {
  auto atoms = parse_pseudo_atoms(kTwoAtoms);
  ASSERT_EQ(atoms.size(), 2u);
  EXPECT_EQ(atoms[0].name, "CH4_sp3");
  EXPECT_DOUBLE_EQ(atoms[0].mass, 16.04246);
  EXPECT_EQ(atoms[1].name, "He");
  EXPECT_DOUBLE_EQ(atoms[1].mass, 4.002602);
  EXPECT_DOUBLE_EQ(atoms[1].charge, 0.0);
}

TEST(PseudoAtoms, CountMismatchIsFormatError) {
  std::string text = kTwoAtoms;
  text.replace(text.find("\n2\n"), 3, "\n3\n");
  try {
    parse_pseudo_atoms(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::format);
  }
}

TEST(PseudoAtoms, NonNumericChargeNamesRow) {
  std::string text = kTwoAtoms;
  text.replace(text.find("4.002602 0"), 10, "4.002602 q");
  try {
    parse_pseudo_atoms(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
}

TEST(PseudoAtoms, FixtureChargeIsCrossRead) {
  auto text = io::read_file(fixture("library/Dubbeldam-CH4/pseudo_atoms.def"));
  // The planted value sits on the O row; read it straight from the text.
  auto row = text.substr(text.find("\nO "));
  ASSERT_NE(row.find("-1.025"), std::string::npos);
  auto atoms = parse_pseudo_atoms(text);
  ASSERT_EQ(atoms[1].name, "O");
  EXPECT_DOUBLE_EQ(atoms[1].charge, -1.025);
}

TEST(InteractionFiles, MixingFileWithTwoTypes) {
  auto set = parse_interaction_files(kMixing, std::nullopt);
  EXPECT_EQ(set.truncation, Truncation::shifted);
  EXPECT_FALSE(set.tail_corrections);
  ASSERT_EQ(set.self_params.size(), 2u);
  EXPECT_EQ(set.self_params[1].type, "He");
  EXPECT_EQ(set.self_params[1].params, (LjParams{10.9, 2.64}));
  EXPECT_EQ(set.mixing_rule, MixingRule::lorentz_berthelot);
  EXPECT_TRUE(set.overrides.empty());
}

TEST(InteractionFiles, OverridesFileWithOnePair) {
  auto set = parse_interaction_files(kMixing, std::string_view(kOneOverride));
  ASSERT_EQ(set.overrides.size(), 1u);
  EXPECT_TRUE(set.overrides[0].same_pair("O", "C_co2"));
  EXPECT_EQ(set.overrides[0].params, (LjParams{37.595, 3.511}));
}

TEST(InteractionFiles, DuplicateTypeRowIsRejected) {
  std::string text = kMixing;
  text.replace(text.find("CH4_sp3"), 7, "He");
  try {
    parse_interaction_files(text, std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::duplicate);
  }
}

TEST(InteractionFiles, UnknownPotentialIsUnsupported) {
  std::string text = kMixing;
  text.replace(text.find("lennard-jones 10.9"), 13, "buckingham");
  try {
    parse_interaction_files(text, std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_potential);
  }
}

TEST(Mixing, LorentzBerthelotExamples) {
  EXPECT_EQ(mix_lorentz_berthelot({100, 3.0}, {100, 3.0}), (LjParams{100, 3.0}));
  // Hand oracle: sqrt(148 * 79) = 108.1295519..., (3.73 + 3.05) / 2 = 3.39.
  auto m = mix_lorentz_berthelot({148.0, 3.73}, {79.0, 3.05});
  EXPECT_NEAR(m.epsilon, 108.12955192730617, 1e-12);
  EXPECT_NEAR(m.sigma, 3.39, 1e-12);
  auto z = mix_lorentz_berthelot({0, 3.0}, {200, 3.4});
  EXPECT_EQ(z.epsilon, 0.0);
  EXPECT_NEAR(z.sigma, 3.2, 1e-15);
}

TEST(Mixing, SymmetricAndMatchesOracle) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> eps(0.0, 1000.0), sig(0.5, 6.0);
  for (int i = 0; i < 1000; ++i) {
    LjParams p{eps(rng), sig(rng)}, q{eps(rng), sig(rng)};
    auto pq = mix_lorentz_berthelot(p, q);
    EXPECT_EQ(pq, mix_lorentz_berthelot(q, p));
    const double oracle = std::sqrt(p.epsilon) * std::sqrt(q.epsilon);
    EXPECT_NEAR(pq.epsilon, oracle, 4 * std::numeric_limits<double>::epsilon() * oracle);
    EXPECT_EQ(mix_jorgensen(p, q), mix_jorgensen(q, p));
  }
  EXPECT_NEAR(mix_jorgensen({100, 4.0}, {100, 1.0}).sigma, 2.0, 1e-15);
}

TEST(EffectivePairParams, OverrideWinsOverMixing) {
  auto b = small_bundle("ff", {"A", "B", "C"});
  b.self_params[1].params = {50.0, 4.0};
  b.overrides.push_back({"B", "A", {1.0, 9.0}});  // deliberately far from the mixed value
  EXPECT_EQ(effective_pair_params(b, "A", "B"), (LjParams{1.0, 9.0}));
  EXPECT_EQ(effective_pair_params(b, "B", "A"), (LjParams{1.0, 9.0}));
  EXPECT_EQ(effective_pair_params(b, "A", "C"), mix_lorentz_berthelot({100, 3.0}, {100, 3.0}));
  EXPECT_EQ(effective_pair_params(b, "C", "B"), effective_pair_params(b, "B", "C"));
  b.mixing_rule = MixingRule::jorgensen;
  EXPECT_EQ(effective_pair_params(b, "B", "C"), mix_jorgensen({50, 4.0}, {100, 3.0}));
}

TEST(EffectivePairParams, UnknownTypeIsNamed) {
  auto b = small_bundle("ff", {"A"});
  try {
    effective_pair_params(b, "A", "Zn");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::missing_type);
    EXPECT_NE(std::string(e.what()).find("Zn"), std::string::npos);
  }
}

TEST(Combine, DisjointUnion) {
  auto framework = load_bundle(fixture("library/TraPPE-zeo"));
  auto methane = small_bundle("CH4", {"CH4_sp3"}, 158.5);
  auto r = combine_force_fields(framework, {methane});
  EXPECT_TRUE(r.collisions.empty());
  EXPECT_EQ(r.bundle.pseudo_atoms.size(), 3u);
  EXPECT_NE(r.bundle.find_self("CH4_sp3"), nullptr);
  EXPECT_NE(r.bundle.find_self("Si"), nullptr);
}

TEST(Combine, FirstBundleWinsAndCollisionIsReported) {
  auto first = small_bundle("first", {"O"}, 50.0);
  auto second = small_bundle("second", {"O"}, 80.0);
  auto r = combine_force_fields(first, {second});
  EXPECT_EQ(r.bundle.find_self("O")->epsilon, 50.0);
  ASSERT_EQ(r.collisions.size(), 1u);
  EXPECT_EQ(r.collisions[0].kind, "self-params");
  EXPECT_EQ(r.collisions[0].kept_from, "first");
  EXPECT_EQ(r.collisions[0].dropped_from, "second");
}

TEST(Combine, IncompatibleTruncationNeedsResolution) {
  auto a = small_bundle("a", {"A"});
  auto b = small_bundle("b", {"B"});
  b.truncation = Truncation::truncated;
  try {
    combine_force_fields(a, {b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::incompatible);
  }
  auto r = combine_force_fields(a, {b}, {Truncation::truncated, std::nullopt});
  EXPECT_EQ(r.bundle.truncation, Truncation::truncated);
}

TEST(Combine, AssociativeOverDisjointBundles) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    auto a = random_bundle(rng, 0);
    auto b = random_bundle(rng, 6);
    auto c = random_bundle(rng, 12);
    // Make type names disjoint across the three bundles.
    auto rename = [](ForceFieldBundle& x, const std::string& suffix) {
      for (auto& p : x.pseudo_atoms) p.name += suffix;
      for (auto& s : x.self_params) s.type += suffix;
      for (auto& o : x.overrides) {
        o.type_a += suffix;
        o.type_b += suffix;
      }
      std::map<std::string, MoleculeDefinition> mols;
      for (auto [n, m] : x.molecules) {
        for (auto& at : m.atoms) at.type += suffix;
        m.name += suffix;
        mols[m.name] = m;
      }
      x.molecules = mols;
    };
    rename(b, "b");
    rename(c, "c");
    auto left = combine_force_fields(combine_force_fields(a, {b}).bundle, {c}).bundle;
    auto right = combine_force_fields(a, {combine_force_fields(b, {c}).bundle}).bundle;
    EXPECT_EQ(left, right);
  }
}

TEST(RenderBundle, WritesAllFilesAndEmptyOverrides) {
  TempDir dir;
  auto b = small_bundle("ff", {"A", "B"});
  MoleculeDefinition m;
  m.name = "AB";
  m.atoms = {{"A", {0, 0, 0}}, {"B", {0, 0, 1.1}}};
  m.bonds = {{0, 1, "RIGID_BOND"}};
  b.molecules["AB"] = m;
  auto files = render_bundle(b, dir.path());
  ASSERT_EQ(files.size(), 4u);
  EXPECT_EQ(files[2].filename(), "force_field.def");
  EXPECT_EQ(files[3].filename(), "AB.def");
  auto ff = io::read_file(files[2]);
  EXPECT_NE(ff.find("# number of defined interactions\n0\n"), std::string::npos);
}

TEST(RenderBundle, OneOverrideGivesOneInteractionRow) {
  TempDir dir;
  auto b = small_bundle("ff", {"A", "B"});
  b.overrides.push_back({"A", "B", {5.0, 3.3}});
  render_bundle(b, dir.path());
  auto set = parse_interaction_files(io::read_file(dir / "force_field_mixing_rules.def"),
                                     io::read_file(dir / "force_field.def"));
  ASSERT_EQ(set.overrides.size(), 1u);
  EXPECT_NE(io::read_file(dir / "force_field.def").find("A B lennard-jones 5 3.3\n"),
            std::string::npos);
}

TEST(RenderBundle, DanglingMoleculeAtomIsRejected) {
  TempDir dir;
  auto b = small_bundle("ff", {"A"});
  MoleculeDefinition m;
  m.name = "ghost";
  m.atoms = {{"Q", {0, 0, 0}}};
  b.molecules["ghost"] = m;
  try {
    render_bundle(b, dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dangling_reference);
  }
}

TEST(RenderBundle, RoundTripIsIdentityOnRandomBundles) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    TempDir dir;
    auto b = random_bundle(rng, i);
    auto first = render_bundle(b, dir / "one");
    auto back = load_bundle(dir / "one");
    EXPECT_TRUE(same_file_content(back, b)) << "bundle " << i;
    auto second = render_bundle(back, dir / "two");
    ASSERT_EQ(first.size(), second.size());
    for (std::size_t k = 0; k < first.size(); ++k) {
      EXPECT_EQ(io::read_file(first[k]), io::read_file(second[k]));
    }
  }
}

TEST(RenderBundle, FixtureLibraryRendersByteIdentically) {
  TempDir dir;
  for (auto name : {"Dubbeldam-CH4", "Garcia-Sanchez-CO2", "Martin-Calero-CO", "TraPPE-zeo"}) {
    auto b = load_bundle(fixture(std::string("library/") + name));
    auto files = render_bundle(b, dir / name);
    for (const auto& f : files) {
      EXPECT_EQ(io::read_file(f), io::read_file(fixture(std::string("library/") + name) / f.filename()))
          << f;
    }
  }
}

TEST(MoleculeFile, ParsesRigidCo2) {
  auto m = parse_molecule(io::read_file(fixture("library/Garcia-Sanchez-CO2/CO2.def")), "CO2");
  EXPECT_EQ(m.atoms.size(), 3u);
  EXPECT_EQ(m.bonds.size(), 2u);
  EXPECT_TRUE(m.rigid);
  EXPECT_DOUBLE_EQ(m.critical_temperature, 304.1282);
  EXPECT_DOUBLE_EQ(m.atoms[2].position[2], -1.149);
}

TEST(LibraryCatalog, ListsFixtureLibrary) {
  auto catalog = library_catalog(fixture("library"));
  ASSERT_EQ(catalog.entries.size(), 4u);
  EXPECT_EQ(catalog.entries[0].name, "Dubbeldam-CH4");
  EXPECT_EQ(catalog.entries[3].name, "TraPPE-zeo");
  EXPECT_TRUE(catalog.warnings.empty());
  for (const auto& e : catalog.entries) {
    auto atoms = parse_pseudo_atoms(io::read_file(e.folder / "pseudo_atoms.def"));
    ASSERT_EQ(atoms.size(), e.atom_types.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) EXPECT_EQ(atoms[i].name, e.atom_types[i]);
    EXPECT_FALSE(e.description.empty());
  }
}

TEST(LibraryCatalog, FolderWithoutDescriptorIsWarnedNotFatal) {
  TempDir dir;
  simcrew::testing::copy_tree(fixture("library"), dir.path());
  std::filesystem::remove(dir / "TraPPE-zeo/metadata.json");
  auto b = load_bundle(dir / "Garcia-Sanchez-CO2");
  b.name = "paper-1";
  render_bundle(b, dir / "extracted/paper-1");
  write_descriptor(b, dir / "extracted/paper-1");
  auto catalog = library_catalog(dir.path());
  ASSERT_EQ(catalog.entries.size(), 4u);
  EXPECT_EQ(catalog.entries[3].name, "extracted/paper-1");
  ASSERT_EQ(catalog.warnings.size(), 1u);
  EXPECT_NE(catalog.warnings[0].find("TraPPE-zeo"), std::string::npos);
}

TEST(LibraryCatalog, UnreadableRootIsIoError) {
  try {
    library_catalog("/nonexistent/library");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::io);
  }
}

TEST(AtomsInFfFile, EachFileKind) {
  const auto dir = fixture("library/Garcia-Sanchez-CO2");
  EXPECT_EQ(atoms_in_ff_file(dir / "pseudo_atoms.def"),
            (std::vector<std::string>{"Si", "O", "C_co2", "O_co2"}));
  EXPECT_EQ(atoms_in_ff_file(dir / "force_field_mixing_rules.def"),
            (std::vector<std::string>{"C_co2", "O_co2"}));
  EXPECT_EQ(atoms_in_ff_file(dir / "force_field.def"),
            (std::vector<std::string>{"O", "C_co2", "O_co2"}));
  EXPECT_EQ(atoms_in_ff_file(dir / "CO2.def"), (std::vector<std::string>{"O_co2", "C_co2"}));
}

TEST(BundleJson, RoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    auto b = random_bundle(rng, i);
    nlohmann::json j = b;
    EXPECT_EQ(bundle_from_json(j), b);
  }
}
