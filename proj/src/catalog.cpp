#include "rdk/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rdk/constructions.hpp"
#include "rdk/development.hpp"
#include "rdk/errors.hpp"
#include "rdk/json_io.hpp"
#include "rdk/verifier.hpp"

namespace rdk {

using nlohmann::json;

namespace {

constexpr std::pair<IngredientKind, std::string_view> kind_names[] = {
    {IngredientKind::Design, "design"},         {IngredientKind::RGDD, "rgdd"},
    {IngredientKind::Frame, "frame"},           {IngredientKind::IRD, "ird"},
    {IngredientKind::OneFactorization, "onefactor"}, {IngredientKind::Packing, "packing"},
    {IngredientKind::Covering, "covering"},
};

bool grouped_kind(IngredientKind k) {
  return k == IngredientKind::RGDD || k == IngredientKind::Frame || k == IngredientKind::OneFactorization;
}

IngredientKey normalized(IngredientKey k) {
  if (k.kind == IngredientKind::RGDD && k.shape == GraphShape(ShapeId::K2) && k.lambda == 1) k.kind = IngredientKind::OneFactorization;
  std::sort(k.type.begin(), k.type.end());
  return k;
}

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw ParseError("bad number '" + std::string(s) + "' in ingredient key '" + std::string(whole) + "'",
                     static_cast<std::size_t>(s.data() - whole.data()));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

ResolvableDesign round_robin(int n) {
  ResolvableDesign d;
  d.shape = ShapeId::K2;
  d.points = integer_points(n);
  const int m = n - 1;
  for (int r = 0; r < m; ++r) {
    std::vector<Block> bl;
    bl.emplace_back(GraphShape(ShapeId::K2), std::vector<Point>{Point::integer(r), Point::integer(m)});
    for (int k = 1; k < n / 2; ++k) {
      bl.emplace_back(GraphShape(ShapeId::K2), std::vector<Point>{Point::integer((r + k) % m), Point::integer((r - k + m) % m)});
    }
    d.classes.push_back(make_class(std::move(bl), d.points));
  }
  return d;
}

// Round-robin on 2t points minus the class through the pivot and 0; its
// edges become the groups.
GroupedDesign one_factorization_minus_factor(int t) {
  auto rr = round_robin(2 * t);
  GroupedDesign g;
  g.kind = GroupedKind::RGDD;
  for (const auto& b : rr.classes.front().blocks) g.groups.push_back(b.tuple());
  for (auto& grp : g.groups) sort_points(grp);
  rr.classes.erase(rr.classes.begin());
  g.design = std::move(rr);
  return g;
}

ResolvableDesign affine_plane_3() {
  ResolvableDesign d;
  d.shape = ShapeId::K3;
  d.points = integer_points(9);
  auto pt = [](int x, int y) { return Point::integer(3 * x + y); };
  for (int slope = 0; slope <= 3; ++slope) {
    std::vector<Block> bl;
    for (int c = 0; c < 3; ++c) {
      std::vector<Point> line;
      for (int s = 0; s < 3; ++s) line.push_back(slope == 3 ? pt(c, s) : pt(s, (slope * s + c) % 3));
      bl.emplace_back(GraphShape(ShapeId::K3), line);
    }
    d.classes.push_back(make_class(std::move(bl), d.points));
  }
  return d;
}

// Near 1-factorization of K_u (u odd): class x pairs x+d with x-d. Each edge
// {a,b} becomes the two perfect matchings between {a_0,a_1} and {b_0,b_1}.
GroupedDesign k2_frame(int u) {
  GroupedDesign g;
  g.kind = GroupedKind::Frame;
  g.design.shape = ShapeId::K2;
  auto p = [](int x, int k) { return Point(std::to_string(x) + "_" + std::to_string(k)); };
  for (int x = 0; x < u; ++x) {
    g.groups.push_back({p(x, 0), p(x, 1)});
    g.design.points.push_back(p(x, 0));
    g.design.points.push_back(p(x, 1));
  }
  for (int x = 0; x < u; ++x) {
    for (int twist = 0; twist < 2; ++twist) {
      std::vector<Block> bl;
      for (int d = 1; d <= u / 2; ++d) {
        const int a = (x + d) % u, b = (x - d + u) % u;
        for (int k = 0; k < 2; ++k) bl.emplace_back(GraphShape(ShapeId::K2), std::vector<Point>{p(a, k), p(b, (k + twist) % 2)});
      }
      g.design.classes.push_back(make_class(std::move(bl), g.design.points));
    }
  }
  return g;
}

GroupedDesign single_c4() {
  GroupedDesign g;
  g.kind = GroupedKind::RGDD;
  g.design.shape = ShapeId::C4;
  g.design.points = integer_points(4);
  g.groups = {{Point::integer(0), Point::integer(2)}, {Point::integer(1), Point::integer(3)}};
  g.design.classes.push_back(make_class({parse_block("(0,1,2,3)", ShapeId::C4)}, g.design.points));
  return g;
}

ResolvableDesign single_k4() {
  ResolvableDesign d;
  d.shape = ShapeId::K4;
  d.points = integer_points(4);
  d.classes.push_back(make_class({parse_block("(0,1,2,3)", ShapeId::K4)}, d.points));
  return d;
}

std::vector<Point> label_list(const json& arr) {
  std::vector<Point> out;
  for (const auto& p : arr) out.emplace_back(p.is_string() ? p.get<std::string>() : std::to_string(p.get<long long>()));
  return out;
}

const ResolvableDesign& as_design(const AnyDesign& d, const IngredientKey& k) {
  if (auto* r = std::get_if<ResolvableDesign>(&d)) return *r;
  throw InternalInconsistency(k.name() + " is not an ungrouped design");
}

const GroupedDesign& as_grouped(const AnyDesign& d, const IngredientKey& k) {
  if (auto* g = std::get_if<GroupedDesign>(&d)) return *g;
  throw InternalInconsistency(k.name() + " is not a grouped design");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedDesign("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedDesign(where + ": " + e.what());
  }
}

std::string external_description(const IngredientKey& k) {
  const auto shape = std::string(k.shape.name());
  switch (k.kind) {
    case IngredientKind::Design:
      if (k.shape == GraphShape(ShapeId::K4)) return "resolvable (K_" + std::to_string(k.order) + ",K4)-design (affine resolvable 2-design)";
      if (k.shape == GraphShape(ShapeId::K4E) && k.lambda == 5 && (k.order == 44 || k.order == 68)) {
        return "resolvable (5K_" + std::to_string(k.order) + ",K4-e)-design; assembled from a cited " +
               (k.order == 44 ? std::string("maximum packing") : std::string("minimum covering")) + " not constructed here";
      }
      return "resolvable (" + (k.lambda > 1 ? std::to_string(k.lambda) : std::string()) + "K_" + std::to_string(k.order) + "," +
             shape + ")-design";
    case IngredientKind::RGDD:
      return shape + "-RGDD from the literature";
    case IngredientKind::Frame:
      return shape + "-frame from the literature";
    case IngredientKind::IRD:
      return shape + " incomplete resolvable design";
    case IngredientKind::OneFactorization:
      return "K2-RGDD (1-factorization)";
    case IngredientKind::Packing:
      return "resolvable maximum packing";
    case IngredientKind::Covering:
      return "resolvable minimum covering";
  }
  return {};
}

}  // namespace

std::string_view ingredient_kind_name(IngredientKind kind) {
  for (const auto& [k, n] : kind_names) {
    if (k == kind) return n;
  }
  return "?";
}

std::string_view source_kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::Builtin: return "BUILTIN";
    case SourceKind::Searched: return "SEARCHED";
    case SourceKind::External: return "EXTERNAL";
  }
  return "?";
}

IngredientKey IngredientKey::design(GraphShape shape, int v, int lambda) {
  IngredientKey k;
  k.shape = shape;
  k.order = v;
  k.lambda = lambda;
  return k;
}

IngredientKey IngredientKey::rgdd(GraphShape shape, int g, int u, int lambda) {
  IngredientKey k;
  k.kind = IngredientKind::RGDD;
  k.shape = shape;
  k.type = {{g, u}};
  k.lambda = lambda;
  return normalized(k);
}

IngredientKey IngredientKey::frame(GraphShape shape, int g, int u, int lambda) {
  IngredientKey k = rgdd(shape, g, u, lambda);
  k.kind = IngredientKind::Frame;
  return k;
}

IngredientKey IngredientKey::ird(GraphShape shape, int v, int h, int lambda) {
  IngredientKey k;
  k.kind = IngredientKind::IRD;
  k.shape = shape;
  k.order = v;
  k.hole = h;
  k.lambda = lambda;
  return k;
}

IngredientKey IngredientKey::one_factorization(int g, int u) { return rgdd(ShapeId::K2, g, u, 1); }

IngredientKey IngredientKey::parse(std::string_view name) {
  const std::string_view whole = name;
  if (name.size() > 5 && name.substr(name.size() - 5) == ".json") name.remove_suffix(5);
  const auto parts = split(name, '_');
  if (parts.size() != 4) throw ParseError("ingredient key '" + std::string(whole) + "' needs kind_shape_type_lambda", 0);
  IngredientKey k;
  bool found = false;
  for (const auto& [kind, n] : kind_names) {
    if (n == parts[0]) {
      k.kind = kind;
      found = true;
    }
  }
  if (!found) throw ParseError("unknown ingredient kind '" + std::string(parts[0]) + "'", 0);
  try {
    k.shape = GraphShape::from_name(parts[1]);
  } catch (const Error& e) {
    throw ParseError(e.what(), static_cast<std::size_t>(parts[1].data() - whole.data()));
  }
  k.lambda = parse_int(parts[3], whole);
  if (k.lambda < 1) throw ParseError("lambda must be positive", static_cast<std::size_t>(parts[3].data() - whole.data()));
  const auto type = parts[2];
  if (grouped_kind(k.kind)) {
    for (auto term : split(type, '.')) {
      const auto caret = term.find('^');
      if (caret == std::string_view::npos) throw ParseError("group type must look like g^u", static_cast<std::size_t>(term.data() - whole.data()));
      const int g = parse_int(term.substr(0, caret), whole), u = parse_int(term.substr(caret + 1), whole);
      if (g < 1 || u < 1) throw ParseError("group sizes and counts must be positive", static_cast<std::size_t>(term.data() - whole.data()));
      k.type.emplace_back(g, u);
    }
  } else if (k.kind == IngredientKind::IRD) {
    const auto h = type.find('h');
    if (h == std::string_view::npos) throw ParseError("IRD type must look like <v>h<hole>", static_cast<std::size_t>(type.data() - whole.data()));
    k.order = parse_int(type.substr(0, h), whole);
    k.hole = parse_int(type.substr(h + 1), whole);
  } else {
    k.order = parse_int(type, whole);
  }
  return normalized(k);
}

int IngredientKey::point_count() const {
  if (!grouped_kind(kind)) return order;
  int n = 0;
  for (const auto& [g, u] : type) n += g * u;
  return n;
}

std::string IngredientKey::name() const {
  std::string t;
  if (grouped_kind(kind)) {
    for (const auto& [g, u] : type) {
      if (!t.empty()) t += ".";
      t += std::to_string(g) + "^" + std::to_string(u);
    }
  } else if (kind == IngredientKind::IRD) {
    t = std::to_string(order) + "h" + std::to_string(hole);
  } else {
    t = std::to_string(order);
  }
  return std::string(ingredient_kind_name(kind)) + "_" + std::string(shape.name()) + "_" + t + "_" + std::to_string(lambda);
}

AnyDesign load_data_design(const json& doc) {
  try {
    const GraphShape shape = GraphShape::from_name(doc.at("shape").get<std::string>());
    ResolvableDesign d;
    d.shape = shape;
    d.lambda = doc.at("lambda").get<int>();
    std::vector<std::vector<Point>> groups;
    if (doc.contains("groups")) {
      for (const auto& g : doc.at("groups")) groups.push_back(label_list(g));
    }

    if (doc.contains("classes")) {
      d.points = label_list(doc.at("points"));
      for (const auto& cls : doc.at("classes")) {
        std::vector<Block> blocks;
        for (const auto& b : cls) blocks.push_back(block_from_json(b, shape));
        d.classes.push_back(make_class(std::move(blocks), d.points));
      }
    } else if (doc.contains("subscriptModulus")) {
      for (const auto& g : groups) d.points.insert(d.points.end(), g.begin(), g.end());
      const long m = doc.at("subscriptModulus").get<long>();
      for (const auto& cls : doc.at("baseClasses")) {
        std::vector<Block> blocks;
        for (const auto& b : cls) blocks.push_back(block_from_json(b, shape));
        for (auto& c : develop_subscripts(blocks, m, d.points)) d.classes.push_back(std::move(c));
      }
    } else {
      const BaseBlockFile f = base_blocks_from_json(doc);
      d.points = development_points(f.modulus, f.fixed);
      const long step = doc.value("shiftStep", 1L);
      if (step == 1) {
        d.classes = develop_file(f);
      } else {
        if (step < 1 || f.modulus % step != 0) throw MalformedDesign("shiftStep must divide the modulus");
        if (!f.grouped.empty()) throw MalformedDesign("shiftStep cannot be combined with grouped orbits");
        for (const auto& blocks : f.base_classes) {
          for (long s = 0; s < f.modulus; s += step) {
            std::vector<Block> moved;
            for (const auto& b : blocks) moved.push_back(translate(b, s, f.modulus));
            d.classes.push_back(make_class(std::move(moved), d.points, s));
          }
        }
      }
    }
    if (groups.empty() && !doc.contains("kind")) return d;
    GroupedDesign g;
    g.design = std::move(d);
    g.groups = std::move(groups);
    g.kind = grouped_kind_from_name(doc.value("kind", std::string("rgdd")));
    if (doc.contains("hole")) g.hole = label_list(doc.at("hole"));
    return g;
  } catch (const json::exception& e) {
    throw MalformedDesign(std::string("bad data file: ") + e.what());
  } catch (const MalformedBlock& e) {
    throw MalformedDesign(std::string("bad block: ") + e.what());
  }
}

AnyDesign read_ingredient_document(const json& doc) {
  if (!doc.is_object()) throw MalformedDesign("ingredient document must be a JSON object");
  bool data_form = doc.contains("baseClasses") || doc.contains("modulus") || doc.contains("subscriptModulus");
  if (!data_form && doc.contains("classes") && doc.at("classes").is_array() && !doc.at("classes").empty()) {
    data_form = doc.at("classes").front().is_array();
  }
  return data_form ? load_data_design(doc) : design_from_json(doc);
}

IngredientKey key_of(const AnyDesign& design, bool packing, bool covering) {
  const ResolvableDesign& d = base_design(design);
  const auto* g = std::get_if<GroupedDesign>(&design);
  if (!g) {
    IngredientKey k = IngredientKey::design(d.shape, d.order(), d.lambda);
    if (packing) k.kind = IngredientKind::Packing;
    if (covering) k.kind = IngredientKind::Covering;
    return k;
  }
  IngredientKey k;
  k.shape = d.shape;
  k.lambda = d.lambda;
  switch (g->kind) {
    case GroupedKind::RGDD:
      k.kind = IngredientKind::RGDD;
      k.type = g->type();
      break;
    case GroupedKind::Frame:
      k.kind = IngredientKind::Frame;
      k.type = g->type();
      break;
    case GroupedKind::IRD:
      k.kind = IngredientKind::IRD;
      k.order = d.order();
      k.hole = static_cast<int>(g->hole.size());
      break;
    case GroupedKind::GDD:
      throw RejectedIngredient("a non-resolvable GDD is not an ingredient", "{}");
  }
  return normalized(k);
}

void check_ingredient(const IngredientKey& key, const AnyDesign& design) {
  const ResolvableDesign& d = base_design(design);
  const bool grouped = std::holds_alternative<GroupedDesign>(design);
  const bool want_grouped = key.kind != IngredientKind::Design && key.kind != IngredientKind::Packing && key.kind != IngredientKind::Covering;
  if (grouped != want_grouped) throw RejectedIngredient(key.name() + ": wrong object form", "{}");
  VerificationReport r;
  if (key.kind == IngredientKind::Packing || key.kind == IngredientKind::Covering) {
    r = verify_packing(d, key.kind == IngredientKind::Covering);
  } else {
    r = verify(design);
  }
  if (!r.valid) throw RejectedIngredient(key.name() + " failed verification: " + r.summary(), r.to_json().dump());
  const bool packing_like = key.kind == IngredientKind::Packing || key.kind == IngredientKind::Covering;
  const IngredientKey actual = key_of(design, key.kind == IngredientKind::Packing, key.kind == IngredientKind::Covering);
  if (!(actual == key) && !(packing_like && actual.name() == key.name())) {
    throw RejectedIngredient("object has parameters " + actual.name() + ", expected " + key.name(), r.to_json().dump());
  }
}

Catalog::Catalog() : data_dir_(RDK_DATA_DIR) {
  if (const char* dir = std::getenv("RDK_INGREDIENTS"); dir && *dir) ingredient_dir_ = std::filesystem::path(dir);
}

Catalog::Catalog(std::optional<std::filesystem::path> ingredient_dir, std::filesystem::path data_dir)
    : ingredient_dir_(std::move(ingredient_dir)), data_dir_(std::move(data_dir)) {}

AnyDesign Catalog::data_file(const std::string& stem) const {
  const auto path = data_dir_ / (stem + ".json");
  return load_data_design(parse_json(read_text(path), path.string()));
}

std::optional<Catalog::Builtin> Catalog::builtin(const IngredientKey& key) const {
  const std::string name = key.name();
  const GraphShape K2 = ShapeId::K2;

  // Composite objects, each built from smaller catalog entries.
  struct Composite {
    const char* name;
    const char* description;
    AnyDesign (*build)(Catalog&);
  };
  static const Composite composites[] = {
      {"design_K13_4_6", "(6K4,K1,3)-design: the (2K4,K1,3)-design taken three times",
       [](Catalog& c) -> AnyDesign { return repeat_classes(c.fetch_design(IngredientKey::design(ShapeId::K13, 4, 2)), 3); }},
      {"rgdd_K13_4^3_6", "K1,3-RGDD of type 4^3 and index 6: the index-3 RGDD taken twice",
       [](Catalog& c) -> AnyDesign { return repeat_classes(c.fetch_grouped(IngredientKey::rgdd(ShapeId::K13, 4, 3, 3)), 2); }},
      {"design_K13_8_6", "(6K8,K1,3)-design: RGDD 4^2 index 6 with groups filled by (6K4,K1,3)-designs",
       [](Catalog& c) -> AnyDesign {
         return fill_groups(c.fetch_grouped(IngredientKey::rgdd(ShapeId::K13, 4, 2, 6)), c.fetch_design(IngredientKey::design(ShapeId::K13, 4, 6)));
       }},
      {"design_K13_12_6", "(6K12,K1,3)-design: RGDD 4^3 index 6 with groups filled",
       [](Catalog& c) -> AnyDesign {
         return fill_groups(c.fetch_grouped(IngredientKey::rgdd(ShapeId::K13, 4, 3, 6)), c.fetch_design(IngredientKey::design(ShapeId::K13, 4, 6)));
       }},
      {"design_K13_24_6", "(6K24,K1,3)-design: 1-factorization of K6 weighted by 4 with RGDD 4^2 index 6, groups filled",
       [](Catalog& c) -> AnyDesign {
         auto w = weight_and_replace(c.fetch(IngredientKey::one_factorization(1, 6)), 4, c.fetch_grouped(IngredientKey::rgdd(ShapeId::K13, 4, 2, 6)));
         return fill_groups(w, c.fetch_design(IngredientKey::design(ShapeId::K13, 4, 6)));
       }},
      {"design_K13_36_6", "(6K36,K1,3)-design: KTS(9) weighted by 4 with RGDD 4^3 index 6, groups filled",
       [](Catalog& c) -> AnyDesign {
         auto w = weight_and_replace(c.fetch(IngredientKey::design(ShapeId::K3, 9, 1)), 4, c.fetch_grouped(IngredientKey::rgdd(ShapeId::K13, 4, 3, 6)));
         return fill_groups(w, c.fetch_design(IngredientKey::design(ShapeId::K13, 4, 6)));
       }},
      {"ird_K13_12h4_6", "K1,3-IRD of order 12, hole 4, index 6: RGDD 4^3 index 6 with two groups filled",
       [](Catalog& c) -> AnyDesign {
         return fill_groups_except(c.fetch_grouped(IngredientKey::rgdd(ShapeId::K13, 4, 3, 6)), c.fetch_design(IngredientKey::design(ShapeId::K13, 4, 6)), 2);
       }},
      {"design_K4E_12_5", "(5K12,K4-e)-design: RGDD 4^3 index 5 with groups filled by (5K4,K4-e)-designs",
       [](Catalog& c) -> AnyDesign {
         return fill_groups(c.fetch_grouped(IngredientKey::rgdd(ShapeId::K4E, 4, 3, 5)), c.fetch_design(IngredientKey::design(ShapeId::K4E, 4, 5)));
       }},
      {"ird_K4E_28h8_5", "(K4-e)-IRD of order 28, hole 8, index 5: developed blocks with the five groups of size 4 filled",
       [](Catalog& c) -> AnyDesign {
         auto host = std::get<GroupedDesign>(c.data_file("ird_K4E_28h8_5.blocks"));
         return fill_groups_except(host, c.fetch_design(IngredientKey::design(ShapeId::K4E, 4, 5)), 5);
       }},
      {"design_K3_9_1", "KTS(9): the lines of AG(2,3)", [](Catalog&) -> AnyDesign { return affine_plane_3(); }},
      {"design_K4_4_1", "resolvable (K4,K4)-design: a single block", [](Catalog&) -> AnyDesign { return single_k4(); }},
      {"rgdd_C4_2^2_1", "C4-decomposition of type 2^2: one 4-cycle", [](Catalog&) -> AnyDesign { return single_c4(); }},
  };
  for (const auto& c : composites) {
    if (name == c.name) return Builtin{c.name, c.description, c.build};
  }

  const auto path = data_dir_ / key.file_name();
  if (std::filesystem::exists(path)) {
    std::string description;
    try {
      description = parse_json(read_text(path), path.string()).value("description", std::string());
    } catch (const Error&) {
    }
    const std::string stem = key.name();
    return Builtin{"data:" + key.file_name(), description, [stem](Catalog& c) { return c.data_file(stem); }};
  }

  if (key.kind == IngredientKind::OneFactorization && key.type.size() == 1) {
    const auto [g, u] = key.type.front();
    if (g == 2 && u >= 2) {
      return Builtin{"round-robin-minus-factor", "1-factorization of K_" + std::to_string(2 * u) + " minus a 1-factor (round robin)",
                     [u = u](Catalog&) -> AnyDesign { return one_factorization_minus_factor(u); }};
    }
    if (g == 1 && u >= 2 && u % 2 == 0) {
      return Builtin{"round-robin", "1-factorization of K_" + std::to_string(u) + " as an RGDD of type 1^" + std::to_string(u) + " (round robin)",
                     [u = u](Catalog&) -> AnyDesign { return as_singleton_rgdd(round_robin(u)); }};
    }
  }
  if (key.kind == IngredientKind::Design && key.shape == K2 && key.lambda == 1 && key.order >= 2 && key.order % 2 == 0) {
    return Builtin{"round-robin", "1-factorization of K_" + std::to_string(key.order) + " (round robin)",
                   [v = key.order](Catalog&) -> AnyDesign { return round_robin(v); }};
  }
  if (key.kind == IngredientKind::Frame && key.shape == K2 && key.lambda == 1 && key.type.size() == 1 && key.type[0].first == 2 &&
      key.type[0].second >= 3 && key.type[0].second % 2 == 1) {
    return Builtin{"doubled-near-factorization", "K2-frame of type 2^" + std::to_string(key.type[0].second) + " from a near 1-factorization",
                   [u = key.type[0].second](Catalog&) -> AnyDesign { return k2_frame(u); }};
  }
  return std::nullopt;
}

std::optional<std::filesystem::path> Catalog::supplied_file(const IngredientKey& key) const {
  if (!ingredient_dir_) return std::nullopt;
  auto path = *ingredient_dir_ / key.file_name();
  if (std::filesystem::exists(path)) return path;
  return std::nullopt;
}

namespace {

bool kite_search_key(const IngredientKey& key) { return key == IngredientKey::rgdd(ShapeId::Kite, 4, 3, 1); }

// Even u; odd u is a builtin.
int frame_search_u(const IngredientKey& key) {
  if (key.kind != IngredientKind::Frame || key.shape != GraphShape(ShapeId::K2) || key.lambda != 1 || key.type.size() != 1) return 0;
  const auto [g, u] = key.type.front();
  return g == 2 && u >= 4 && u % 2 == 0 ? u : 0;
}

bool searched_key(const IngredientKey& key) { return kite_search_key(key) || frame_search_u(key) != 0; }

}  // namespace

IngredientSource Catalog::source(const IngredientKey& key) const {
  std::lock_guard lock(mutex_);
  if (auto b = builtin(key)) return {SourceKind::Builtin, b->id, b->description};
  if (imported_text_.count(key.name())) return {SourceKind::External, key.file_name(), "imported " + external_description(key)};
  if (kite_search_key(key)) {
    return {SourceKind::Searched, "search_rgdd KITE type 4^3 lambda 1", "kite-RGDD of type 4^3 found by backtracking search"};
  }
  if (int u = frame_search_u(key)) {
    return {SourceKind::Searched, "search_k2_frame u=" + std::to_string(u),
            "K2-frame of type 2^" + std::to_string(u) + " developed from a cyclic starter found by backtracking"};
  }
  return {SourceKind::External, key.file_name(), external_description(key)};
}

bool Catalog::available(const IngredientKey& key) const {
  std::lock_guard lock(mutex_);
  return cache_.count(key.name()) || builtin(key) || imported_text_.count(key.name()) || supplied_file(key);
}

AnyDesign Catalog::fetch(const IngredientKey& key) {
  std::lock_guard lock(mutex_);
  const std::string name = key.name();
  if (auto it = cache_.find(name); it != cache_.end()) return it->second;

  std::optional<AnyDesign> obj;
  if (auto b = builtin(key)) {
    obj = b->build(*this);
  } else if (auto it = imported_text_.find(name); it != imported_text_.end()) {
    obj = read_ingredient_document(parse_json(it->second, name));
  } else if (auto path = supplied_file(key)) {
    obj = read_ingredient_document(parse_json(read_text(*path), path->string()));
  } else if (searched_key(key)) {
    auto outcome = kite_search_key(key) ? search_rgdd(key.shape, key.type, key.lambda, budget_) : search_k2_frame(frame_search_u(key), budget_);
    if (outcome.status != SearchStatus::Found) {
      if (outcome.status == SearchStatus::BudgetExceeded) throw SearchBudgetExceeded("search for " + name + " exceeded its budget", outcome.nodes);
      throw InternalInconsistency("search reports that " + name + " does not exist");
    }
    obj = *outcome.design;
  } else {
    throw MissingIngredient({key.file_name()});
  }
  check_ingredient(key, *obj);
  cache_.emplace(name, *obj);
  return *obj;
}

ResolvableDesign Catalog::fetch_design(const IngredientKey& key) { return as_design(fetch(key), key); }
GroupedDesign Catalog::fetch_grouped(const IngredientKey& key) { return as_grouped(fetch(key), key); }

IngredientKey Catalog::import_ingredient(const std::filesystem::path& file) { return import_text(read_text(file)); }

IngredientKey Catalog::import_text(const std::string& text) {
  const json doc = parse_json(text, "ingredient");
  const AnyDesign obj = read_ingredient_document(doc);
  const std::string kind = doc.value("kind", std::string());
  IngredientKey key;
  const auto r = kind == "packing" || kind == "covering" ? verify_packing(base_design(obj), kind == "covering") : verify(obj);
  if (!r.valid) throw RejectedIngredient("ingredient failed verification: " + r.summary(), r.to_json().dump());
  key = key_of(obj, kind == "packing", kind == "covering");
  check_ingredient(key, obj);

  std::lock_guard lock(mutex_);
  const std::string name = key.name();
  if (auto it = imported_text_.find(name); it != imported_text_.end()) {
    if (it->second != text) throw VersionConflict(name + " is already registered with different content");
    return key;
  }
  if (builtin(key)) throw VersionConflict(name + " is a builtin ingredient");
  imported_text_.emplace(name, text);
  cache_.erase(name);
  return key;
}

std::vector<IngredientKey> Catalog::builtin_keys() const {
  std::vector<IngredientKey> keys;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir_)) {
    const auto file = entry.path().filename().string();
    if (entry.path().extension() != ".json" || file.find(".blocks.") != std::string::npos) continue;
    keys.push_back(IngredientKey::parse(file));
  }
  for (const char* n : {"design_K13_4_6", "rgdd_K13_4^3_6", "design_K13_8_6", "design_K13_12_6", "design_K13_24_6", "design_K13_36_6",
                        "ird_K13_12h4_6", "design_K4E_12_5", "ird_K4E_28h8_5", "design_K3_9_1", "design_K4_4_1", "rgdd_C4_2^2_1",
                        "onefactor_K2_1^6_1", "onefactor_K2_2^2_1", "onefactor_K2_2^3_1", "onefactor_K2_2^4_1", "design_K2_6_1",
                        "frame_K2_2^5_1"}) {
    keys.push_back(IngredientKey::parse(n));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace rdk
