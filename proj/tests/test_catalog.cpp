#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "rdk/catalog.hpp"
#include "rdk/constructions.hpp"
#include "rdk/errors.hpp"
#include "rdk/json_io.hpp"
#include "rdk/verifier.hpp"

using namespace rdk;
namespace fs = std::filesystem;

namespace {

// r = lambda (points) |V| / (2|E|), computed here rather than by the library.
long long ratio(GraphShape s, long long points, long long lambda) {
  const long long num = lambda * points * s.vertex_count(), den = 2LL * s.edge_count();
  REQUIRE(num % den == 0);
  return num / den;
}

struct Expect {
  const char* key;
  long long full;
  long long partial = 0;
};

fs::path temp_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("rdk_catalog_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::size_t full_classes(const AnyDesign& d) { return base_design(d).full_class_count(); }
std::size_t partial_classes(const AnyDesign& d) { return base_design(d).classes.size() - full_classes(d); }

}  // namespace

TEST_CASE("ingredient keys round-trip through their file names") {
  for (const char* n : {"design_K13_20_6", "rgdd_K13_4^2_6", "frame_K4E_20^9_1", "ird_K4E_28h8_5", "onefactor_K2_2^4_1",
                        "packing_K4E_44_5", "covering_K4E_68_5", "rgdd_K4_4^5.8^1_1"}) {
    CHECK(IngredientKey::parse(n).name() == n);
    CHECK(IngredientKey::parse(std::string(n) + ".json").file_name() == std::string(n) + ".json");
  }
  CHECK(IngredientKey::parse("rgdd_K2_2^4_1") == IngredientKey::one_factorization(2, 4));
  CHECK(IngredientKey::parse("rgdd_KITE_4^3_1") == IngredientKey::rgdd(ShapeId::Kite, 4, 3, 1));
  CHECK(IngredientKey::parse("rgdd_K4_12^5_1").point_count() == 60);
  CHECK(IngredientKey::parse("ird_K4E_28h8_5").hole == 8);
  CHECK(IngredientKey::rgdd(ShapeId::K4, 12, 3, 1) != IngredientKey::rgdd(ShapeId::K4, 12, 4, 1));
  CHECK(IngredientKey::design(ShapeId::K4E, 36, 1) != IngredientKey::design(ShapeId::K4E, 36, 5));
  for (const char* bad : {"design_K13_20", "blob_K13_20_6", "design_K9_20_6", "rgdd_K13_4_6", "design_K13_x_6", "ird_K4E_28_5",
                          "design_K13_20_0"}) {
    CHECK_THROWS_AS(IngredientKey::parse(bad), ParseError);
  }
}

TEST_CASE("every builtin verifies with the exact class counts") {
  Catalog cat(std::nullopt);
  const GraphShape C4 = ShapeId::C4, Kite = ShapeId::Kite, K13 = ShapeId::K13, K4E = ShapeId::K4E;
  const Expect table[] = {
      {"design_C4_4_2", ratio(C4, 3, 2)},
      {"design_KITE_4_2", ratio(Kite, 3, 2)},
      {"design_KITE_8_2", ratio(Kite, 7, 2)},
      {"design_K13_4_2", ratio(K13, 3, 2)},
      {"design_K13_4_6", ratio(K13, 3, 6)},
      {"design_K13_8_6", ratio(K13, 7, 6)},
      {"design_K13_12_6", ratio(K13, 11, 6)},
      {"design_K13_20_6", ratio(K13, 19, 6)},
      {"design_K13_24_6", ratio(K13, 23, 6)},
      {"design_K13_36_6", ratio(K13, 35, 6)},
      {"design_K4E_4_5", ratio(K4E, 3, 5)},
      {"design_K4E_8_5", ratio(K4E, 7, 5)},
      {"design_K4E_12_5", ratio(K4E, 11, 5)},
      {"design_K4E_20_5", ratio(K4E, 19, 5)},
      {"rgdd_K13_4^2_6", ratio(K13, 4, 6)},
      {"rgdd_K13_4^3_3", ratio(K13, 8, 3)},
      {"rgdd_K13_4^3_6", ratio(K13, 8, 6)},
      {"rgdd_K4E_4^3_5", ratio(K4E, 8, 5)},
      {"rgdd_KITE_4^4_1", ratio(Kite, 12, 1)},
      {"rgdd_KITE_4^5_1", ratio(Kite, 16, 1)},
      {"rgdd_KITE_4^6_1", ratio(Kite, 20, 1)},
      {"ird_K4E_28h8_5", ratio(K4E, 27, 5) - ratio(K4E, 7, 5), ratio(K4E, 7, 5)},
      {"ird_K13_12h4_6", ratio(K13, 11, 6) - ratio(K13, 3, 6), ratio(K13, 3, 6)},
      {"design_K4_4_1", 1},
      {"design_K4_16_1", 5},
      {"design_K3_9_1", 4},
      {"rgdd_C4_2^2_1", 1},
      {"onefactor_K2_1^6_1", 5},
      {"onefactor_K2_2^2_1", 2},
      {"onefactor_K2_2^3_1", 4},
      {"onefactor_K2_2^4_1", 6},
      {"design_K2_6_1", 5},
      {"frame_K2_2^5_1", 0, 10},
  };
  CHECK(table[0].full == 3);
  CHECK(table[2].full == 7);
  CHECK(table[7].full == 76);
  CHECK(table[13].full == 38);
  CHECK(table[14].full == 16);
  CHECK(table[21].full == 40);
  CHECK(table[21].partial == 14);

  std::set<std::string> listed;
  for (const auto& k : cat.builtin_keys()) listed.insert(k.name());
  for (const auto& e : table) {
    INFO(e.key);
    const auto key = IngredientKey::parse(e.key);
    CHECK(listed.count(e.key) == 1);
    CHECK(cat.source(key).kind == SourceKind::Builtin);
    const AnyDesign d = cat.fetch(key);
    const auto r = verify(d);
    INFO(r.summary());
    CHECK(r.valid);
    CHECK(full_classes(d) == static_cast<std::size_t>(e.full));
    CHECK(partial_classes(d) == static_cast<std::size_t>(e.partial));
    CHECK(key_of(d) == key);
  }
  CHECK(listed.size() == std::size(table));
}

TEST_CASE("data files agree with the hand-built fixtures") {
  Catalog cat(std::nullopt);
  CHECK(std::get<ResolvableDesign>(cat.fetch(IngredientKey::design(ShapeId::C4, 4, 2))) == fx::c4_2k4());
  CHECK(std::get<ResolvableDesign>(cat.fetch(IngredientKey::design(ShapeId::Kite, 8, 2))) == fx::kite_2k8());
  CHECK(std::get<ResolvableDesign>(cat.fetch(IngredientKey::design(ShapeId::K4E, 4, 5))) == fx::k4e_5k4());
  CHECK(std::get<GroupedDesign>(cat.fetch(IngredientKey::rgdd(ShapeId::K13, 4, 2, 6))) == fx::star_rgdd_4_2());
  CHECK(std::get<GroupedDesign>(cat.fetch(IngredientKey::rgdd(ShapeId::K13, 4, 3, 3))) == fx::star_rgdd_4_3_index3());
}

TEST_CASE("fetch is deterministic across catalogs") {
  Catalog a(std::nullopt), b(std::nullopt);
  for (const char* n : {"design_K13_36_6", "ird_K4E_28h8_5", "onefactor_K2_2^5_1", "rgdd_KITE_4^5_1"}) {
    const auto k = IngredientKey::parse(n);
    CHECK(dump_design(a.fetch(k)) == dump_design(b.fetch(k)));
    CHECK(dump_design(a.fetch(k)) == dump_design(a.fetch(k)));
  }
}

TEST_CASE("round-robin families") {
  Catalog cat(std::nullopt);
  for (int t = 2; t <= 12; ++t) {
    const auto g = std::get<GroupedDesign>(cat.fetch(IngredientKey::one_factorization(2, t)));
    CHECK(g.design.classes.size() == static_cast<std::size_t>(2 * t - 2));
    CHECK(g.type() == std::vector<std::pair<int, int>>{{2, t}});
  }
  for (int u : {3, 5, 7, 9}) {
    const auto f = std::get<GroupedDesign>(cat.fetch(IngredientKey::frame(ShapeId::K2, 2, u, 1)));
    CHECK(f.kind == GroupedKind::Frame);
    CHECK(f.design.classes.size() == static_cast<std::size_t>(2 * u));
  }
  for (int u : {4, 6, 8, 10}) {
    const auto k = IngredientKey::frame(ShapeId::K2, 2, u, 1);
    CHECK(cat.source(k).kind == SourceKind::Searched);
    const auto f = std::get<GroupedDesign>(cat.fetch(k));
    CHECK(f.design.classes.size() == static_cast<std::size_t>(2 * u));
    CHECK(verify_grouped(f).valid);
  }
  CHECK(cat.source(IngredientKey::frame(ShapeId::K2, 4, 4, 1)).kind == SourceKind::External);
  CHECK(cat.source(IngredientKey::one_factorization(1, 5)).kind == SourceKind::External);
}

TEST_CASE("external keys report the file to supply") {
  Catalog cat(std::nullopt);
  const auto k = IngredientKey::rgdd(ShapeId::K4, 12, 4, 1);
  CHECK(cat.source(k).kind == SourceKind::External);
  CHECK(cat.source(k).detail == "rgdd_K4_12^4_1.json");
  CHECK_FALSE(cat.available(k));
  try {
    cat.fetch(k);
    FAIL("expected MissingIngredient");
  } catch (const MissingIngredient& e) {
    CHECK(e.keys() == std::vector<std::string>{"rgdd_K4_12^4_1.json"});
  }
  CHECK_THROWS_AS(cat.fetch(IngredientKey::design(ShapeId::K4E, 36, 1)), MissingIngredient);
  CHECK_THROWS_AS(cat.fetch(IngredientKey::rgdd(ShapeId::K4E, 4, 6, 5)), MissingIngredient);
  CHECK(cat.source(IngredientKey::design(ShapeId::K4, 28, 1)).kind == SourceKind::External);
}

TEST_CASE("the kite RGDD of type 4^3 comes from search") {
  Catalog cat(std::nullopt);
  const auto k = IngredientKey::rgdd(ShapeId::Kite, 4, 3, 1);
  CHECK(cat.source(k).kind == SourceKind::Searched);
  CHECK_FALSE(cat.available(k));
  const auto g = std::get<GroupedDesign>(cat.fetch(k));
  CHECK(g.design.classes.size() == 4);
  CHECK(verify_grouped(g).valid);
  CHECK(cat.available(k));
}

TEST_CASE("shiftStep develops every step-th shift only") {
  const auto doc = nlohmann::json::parse(R"j({"shape":"K2","lambda":1,"modulus":4,"shiftStep":2,"kind":"rgdd",
    "groups":[["0","2"],["1","3"]],"baseClasses":[["[0,1]","[2,3]"],["[0,3]","[2,1]"]]})j");
  const auto g = std::get<GroupedDesign>(load_data_design(doc));
  CHECK(g.design.classes.size() == 4);
  CHECK(g.design.classes[1].blocks[0] == parse_block("[2,3]", ShapeId::K2));
  const auto bad = nlohmann::json::parse(R"j({"shape":"K2","lambda":1,"modulus":4,"shiftStep":3,"baseClasses":[["[0,1]","[2,3]"]]})j");
  CHECK_THROWS_AS(load_data_design(bad), MalformedDesign);
}

TEST_CASE("import registers verified objects") {
  Catalog cat(std::nullopt);
  const auto index12 = repeat_classes(std::get<GroupedDesign>(cat.fetch(IngredientKey::rgdd(ShapeId::K13, 4, 2, 6))), 2);
  const std::string text = dump_design(index12);
  const auto key = IngredientKey::rgdd(ShapeId::K13, 4, 2, 12);
  CHECK_FALSE(cat.available(key));
  CHECK(cat.import_text(text) == key);
  CHECK(cat.available(key));
  CHECK(std::get<GroupedDesign>(cat.fetch(key)) == index12);

  SUBCASE("byte-identical re-import is a no-op") { CHECK(cat.import_text(text) == key); }
  SUBCASE("different bytes for the same key conflict") {
    CHECK_THROWS_AS(cat.import_text(to_json(index12).dump()), VersionConflict);
  }
  SUBCASE("a builtin key cannot be replaced") {
    CHECK_THROWS_AS(cat.import_text(dump_design(cat.fetch(IngredientKey::design(ShapeId::C4, 4, 2)))), VersionConflict);
  }
  SUBCASE("a tampered object is rejected with its report") {
    auto broken = index12;
    broken.design.classes[3].blocks.pop_back();
    try {
      Catalog fresh(std::nullopt);
      fresh.import_text(dump_design(broken));
      FAIL("expected RejectedIngredient");
    } catch (const RejectedIngredient& e) {
      const auto report = nlohmann::json::parse(e.report());
      CHECK(report.at("valid") == false);
    }
  }
}

TEST_CASE("ingredient directory supplies external keys") {
  const auto dir = temp_dir("dir");
  Catalog base(std::nullopt);
  const auto index12 = repeat_classes(std::get<GroupedDesign>(base.fetch(IngredientKey::rgdd(ShapeId::K13, 4, 2, 6))), 2);
  const auto key = IngredientKey::rgdd(ShapeId::K13, 4, 2, 12);
  write(dir / key.file_name(), dump_design(index12));
  // the right name on the wrong object
  write(dir / "rgdd_K13_4^2_18.json", dump_design(index12));

  Catalog cat(dir);
  CHECK(cat.available(key));
  CHECK(std::get<GroupedDesign>(cat.fetch(key)) == index12);
  CHECK_THROWS_AS(cat.fetch(IngredientKey::rgdd(ShapeId::K13, 4, 2, 18)), RejectedIngredient);
  fs::remove_all(dir);
}

TEST_CASE("base-block files can be imported") {
  Catalog cat(std::nullopt);
  const std::string text = R"j({"shape":"KITE","lambda":4,"modulus":7,"fixed":["inf"],
    "baseClasses":[["(inf,1,5-6)","(0,4,2-3)"],["(inf,1,5-6)","(0,4,2-3)"]]})j";
  CHECK(cat.import_text(text) == IngredientKey::design(ShapeId::Kite, 8, 4));
  CHECK(base_design(cat.fetch(IngredientKey::design(ShapeId::Kite, 8, 4))).classes.size() == 14);
}
