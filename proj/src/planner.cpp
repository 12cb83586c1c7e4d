#include "rdk/planner.hpp"

#include <algorithm>
#include <set>

#include "rdk/admissibility.hpp"
#include "rdk/constructions.hpp"
#include "rdk/errors.hpp"
#include "rdk/verifier.hpp"

namespace rdk {

using nlohmann::json;

namespace {

long long ratio(GraphShape s, long long points, long long lambda) { return class_ratio(s, points, lambda); }

Expectation expect_design(GraphShape s, int v, int lambda) {
  return {"design", v, lambda, class_count(s, v, lambda), 0};
}

Expectation expect_of(const IngredientKey& k) {
  switch (k.kind) {
    case IngredientKind::Design:
    case IngredientKind::Packing:
    case IngredientKind::Covering:
      return expect_design(k.shape, k.order, k.lambda);
    case IngredientKind::IRD: {
      const long long partial = ratio(k.shape, k.hole - 1, k.lambda);
      return {"ird", k.order, k.lambda, ratio(k.shape, k.order - 1, k.lambda) - partial, partial};
    }
    case IngredientKind::Frame: {
      long long partial = 0;
      for (auto [g, u] : k.type) partial += u * ratio(k.shape, g, k.lambda);
      return {"frame", k.point_count(), k.lambda, 0, partial};
    }
    case IngredientKind::RGDD:
    case IngredientKind::OneFactorization: {
      // uniform types only
      const int g = k.type.front().first;
      return {"rgdd", k.point_count(), k.lambda, ratio(k.shape, k.point_count() - g, k.lambda), 0};
    }
  }
  return {};
}

int group_size_of(const Recipe& r) {
  if (r.key && !r.key->type.empty()) return r.key->type.front().first;
  return r.params.value("groupSize", 0);
}

struct Builder {
  GraphShape shape;
  std::string cid;

  Recipe leaf(const IngredientKey& key) const {
    Recipe r;
    r.op = "ingredient";
    r.construction = cid;
    r.key = key;
    r.summary = key.name();
    r.expect = expect_of(key);
    return r;
  }

  Recipe repeat(Recipe child, int copies, std::string summary = {}) const {
    if (copies == 1) return child;
    Recipe r;
    r.op = "repeat";
    r.construction = cid;
    r.summary = summary.empty() ? "classes taken " + std::to_string(copies) + " times" : std::move(summary);
    r.params = {{"copies", copies}};
    if (int g = group_size_of(child)) r.params["groupSize"] = g;
    r.expect = child.expect;
    r.expect.lambda *= copies;
    r.expect.full_classes *= copies;
    r.expect.partial_classes *= copies;
    r.children.push_back(std::move(child));
    return r;
  }

  Recipe singleton(Recipe child) const {
    Recipe r;
    r.op = "singleton";
    r.construction = cid;
    r.summary = "design viewed as an RGDD of type 1^" + std::to_string(child.expect.order);
    r.params = {{"groupSize", 1}};
    r.expect = child.expect;
    r.expect.kind = "rgdd";
    r.children.push_back(std::move(child));
    return r;
  }

  // Copies of the ingredient per block follow from the indices.
  Recipe weight(Recipe master, int w, Recipe ingredient, int target_lambda, std::string summary) const {
    const int per_copy = master.expect.lambda * ingredient.expect.lambda;
    if (target_lambda % per_copy != 0) {
      throw InternalInconsistency("weighting cannot reach index " + std::to_string(target_lambda) + " from " + std::to_string(per_copy));
    }
    const int copies = target_lambda / per_copy;
    Recipe r;
    r.op = "weight";
    r.construction = cid;
    r.summary = std::move(summary);
    r.notes.push_back("ingredient copies per block = " + std::to_string(target_lambda) + " / (" + std::to_string(master.expect.lambda) +
                      " x " + std::to_string(ingredient.expect.lambda) + ") = " + std::to_string(copies));
    r.notes.push_back("blocks of every resolution class of the master are replaced");
    const int g = master.expect.kind == "design" ? 1 : group_size_of(master);
    r.params = {{"weight", w}, {"copies", copies}, {"groupSize", g * w}};
    const long long ing_full = ingredient.expect.full_classes * copies;
    r.expect.order = master.expect.order * w;
    r.expect.lambda = target_lambda;
    if (master.expect.kind == "frame") {
      r.expect.kind = "frame";
      r.expect.partial_classes = master.expect.partial_classes * ing_full;
    } else {
      r.expect.kind = "rgdd";
      r.expect.full_classes = master.expect.full_classes * ing_full;
    }
    r.children.push_back(std::move(master));
    r.children.push_back(repeat(std::move(ingredient), copies));
    return r;
  }

  Recipe fill(Recipe host, Recipe filler, std::string summary) const {
    Recipe r;
    r.op = "fill_groups";
    r.construction = cid;
    r.summary = std::move(summary);
    r.expect = {"design", host.expect.order, host.expect.lambda, host.expect.full_classes + filler.expect.full_classes, 0};
    r.children.push_back(std::move(host));
    r.children.push_back(std::move(filler));
    return r;
  }

  Recipe drop_singletons(Recipe child) const {
    Recipe r;
    r.op = "drop_singletons";
    r.construction = cid;
    r.summary = "singleton groups removed";
    r.expect = child.expect;
    r.expect.kind = "design";
    r.children.push_back(std::move(child));
    return r;
  }

  Recipe frame_fill(Recipe frame, Recipe ird, Recipe hole_filler, int copies, std::string summary) const {
    Recipe r;
    r.op = "frame_fill";
    r.construction = cid;
    r.summary = std::move(summary);
    r.params = {{"copies", copies}, {"hole", hole_filler.expect.order}};
    const int v = frame.expect.order + hole_filler.expect.order;
    r.expect = expect_design(shape, v, ird.expect.lambda);
    r.children.push_back(std::move(frame));
    r.children.push_back(std::move(ird));
    r.children.push_back(std::move(hole_filler));
    return r;
  }

  Recipe one_factor(int v, Recipe rgdd) const {
    Recipe r;
    r.op = "one_factor";
    r.construction = cid;
    r.summary = "five (K4-e)-RGDDs of type 2^" + std::to_string(v / 2) +
                " on the 1-factors of the circulant with differences 1, v/2-1, v/2, plus two final classes";
    r.params = {{"order", v}};
    r.expect = expect_design(ShapeId::K4E, v, 5);
    r.children.push_back(std::move(rgdd));
    return r;
  }
};

// Designs on 4 points viewed as the replacement for one K4 block.
Recipe k4_replacement(const Builder& b, int v, const IngredientKey& block_design, int target) {
  Recipe master = b.leaf(IngredientKey::design(ShapeId::K4, v, 1));
  Recipe w = b.weight(std::move(master), 1, b.singleton(b.leaf(block_design)), target,
                      "every K4 block of a resolvable (K_" + std::to_string(v) + ",K4)-design replaced by " + block_design.name());
  return b.drop_singletons(std::move(w));
}

// A 4-RGDD of type g^u with every block replaced and the groups filled.
Recipe rgdd_replace_fill(const Builder& b, int g, int u, const IngredientKey& block_design, const IngredientKey& filler, int target) {
  Recipe w = b.weight(b.leaf(IngredientKey::rgdd(ShapeId::K4, g, u, 1)), 1, b.singleton(b.leaf(block_design)), target,
                      "every block of a 4-RGDD of type " + std::to_string(g) + "^" + std::to_string(u) + " replaced by " + block_design.name());
  return b.fill(std::move(w), b.leaf(filler), "groups of size " + std::to_string(g) + " filled with " + filler.name());
}

Recipe plan_c4(int v) {
  Builder b{ShapeId::C4, "c4-weight-two"};
  if (v == 4) return Builder{ShapeId::C4, "c4-explicit"}.leaf(IngredientKey::design(ShapeId::C4, 4, 2));
  const int t = v / 4;
  Recipe w = b.weight(b.leaf(IngredientKey::one_factorization(2, t)), 2, b.leaf(IngredientKey::rgdd(ShapeId::C4, 2, 2, 1)), 2,
                      "weight 2 on a 1-factorization of K_" + std::to_string(2 * t) + " minus a 1-factor, C4s of type 2^2 on each block");
  return b.fill(std::move(w), b.leaf(IngredientKey::design(ShapeId::C4, 4, 2)), "groups of size 4 filled with design_C4_4_2");
}

Recipe plan_kite(int v) {
  if (v == 4 || v == 8) return Builder{ShapeId::Kite, "kite-explicit"}.leaf(IngredientKey::design(ShapeId::Kite, v, 2));
  Builder b{ShapeId::Kite, "kite-rgdd"};
  const int t = v / 4;
  Recipe host = b.repeat(b.leaf(IngredientKey::rgdd(ShapeId::Kite, 4, t, 1)), 2, "every class of the kite-RGDD taken twice");
  return b.fill(std::move(host), b.leaf(IngredientKey::design(ShapeId::Kite, 4, 2)), "groups of size 4 filled with design_KITE_4_2");
}

Recipe plan_star(int v, int lambda0) {
  if (lambda0 == 2) {
    Recipe r = k4_replacement(Builder{ShapeId::K13, "star-4mod12"}, v, IngredientKey::design(ShapeId::K13, 4, 2), 2);
    r.children.front().notes.push_back("one copy per block gives index 2; two copies would give index 4");
    return r;
  }
  const auto star2 = IngredientKey::design(ShapeId::K13, 4, 2);
  if (v == 8 || v == 12 || v == 20 || v == 24 || v == 36) {
    return Builder{ShapeId::K13, "star-explicit"}.leaf(IngredientKey::design(ShapeId::K13, v, 6));
  }
  if (v % 12 == 0) {
    return rgdd_replace_fill(Builder{ShapeId::K13, "star-12t"}, 12, v / 12, star2, IngredientKey::design(ShapeId::K13, 12, 6), 6);
  }
  if (v % 24 == 8) {
    Recipe r = rgdd_replace_fill(Builder{ShapeId::K13, "star-8-3t"}, 8, v / 8, star2, IngredientKey::design(ShapeId::K13, 8, 6), 6);
    r.notes.push_back("the groups of the 4-RGDD of type 8^(1+3t) have size 8 and are filled with the order-8 design");
    return r;
  }
  // v = 20 + 24t, t >= 1
  Builder b{ShapeId::K13, "star-frame"};
  const int u = (v - 4) / 8;
  Recipe frame = b.weight(b.leaf(IngredientKey::frame(ShapeId::K2, 2, u, 1)), 4, b.leaf(IngredientKey::rgdd(ShapeId::K13, 4, 2, 6)), 6,
                          "every point of a K2-frame of type 2^" + std::to_string(u) + " expanded 4 times, RGDD 4^2 index 6 on each block");
  return b.frame_fill(std::move(frame), b.leaf(IngredientKey::ird(ShapeId::K13, 12, 4, 6)), b.leaf(IngredientKey::design(ShapeId::K13, 4, 6)), 1,
                      "hole of size 4 added; IRD(12,4) index 6 on each group plus the hole; hole filled with design_K13_4_6");
}

Recipe plan_k4e_index5(int v) {
  const auto k4e5 = IngredientKey::design(ShapeId::K4E, 4, 5);
  if (v % 24 == 20) {
    const int t = v / 120;
    switch (v % 120) {
      case 20: {
        Builder b{ShapeId::K4E, "k4e-20mod120"};
        if (t == 0) return b.leaf(IngredientKey::design(ShapeId::K4E, 20, 5));
        Recipe w = b.weight(b.leaf(IngredientKey::rgdd(ShapeId::K4, 4, 1 + 6 * t, 1)), 5, b.leaf(IngredientKey::rgdd(ShapeId::K4E, 5, 4, 5)), 5,
                            "every point of a 4-RGDD of type 4^" + std::to_string(1 + 6 * t) +
                                " expanded 5 times, (K4-e)-RGDD 5^4 index 5 on each block");
        return b.fill(std::move(w), b.leaf(IngredientKey::design(ShapeId::K4E, 20, 5)), "groups of size 20 filled with design_K4E_20_5");
      }
      case 44: {
        Builder b{ShapeId::K4E, "k4e-44mod120"};
        if (t == 0) {
          Recipe r = b.leaf(IngredientKey::design(ShapeId::K4E, 44, 5));
          r.notes.push_back("order 44 is assembled from a cited resolvable maximum packing; supply the finished design");
          return r;
        }
        const int groups = 1 + 5 * (2 + 6 * t);
        Recipe host = b.leaf(IngredientKey::rgdd(ShapeId::K4E, 4, groups, 5));
        host.notes.push_back("type 4^(1+5(2+6t)) has " + std::to_string(4 * groups) + " points, matching v");
        return b.fill(std::move(host), b.leaf(k4e5), "groups of size 4 filled with design_K4E_4_5");
      }
      case 68: {
        Builder b{ShapeId::K4E, "k4e-68mod120"};
        if (t == 0) {
          Recipe r = b.leaf(IngredientKey::design(ShapeId::K4E, 68, 5));
          r.notes.push_back("order 68 is assembled from a cited resolvable minimum covering; supply the finished design");
          return r;
        }
        return b.frame_fill(b.leaf(IngredientKey::frame(ShapeId::K4E, 20, 3 + 6 * t, 1)), b.leaf(IngredientKey::ird(ShapeId::K4E, 28, 8, 5)),
                            b.leaf(IngredientKey::design(ShapeId::K4E, 8, 5)), 5,
                            "hole of size 8 added; frame classes taken 5 times; IRD(28,8) index 5 on each group plus the hole; "
                            "hole filled with design_K4E_8_5");
      }
      case 92: {
        Builder b{ShapeId::K4E, "k4e-92mod120"};
        return b.one_factor(v, b.leaf(IngredientKey::rgdd(ShapeId::K4E, 2, v / 2, 1)));
      }
      default: {
        Builder b{ShapeId::K4E, "k4e-116mod120"};
        return b.repeat(b.leaf(IngredientKey::design(ShapeId::K4E, v, 1)), 5, "classes of the index-1 design taken 5 times");
      }
    }
  }
  if (v == 4 || v == 8 || v == 12) return Builder{ShapeId::K4E, "k4e-explicit"}.leaf(IngredientKey::design(ShapeId::K4E, v, 5));
  if (v == 24) {
    Builder b{ShapeId::K4E, "k4e-explicit"};
    return b.fill(b.leaf(IngredientKey::rgdd(ShapeId::K4E, 4, 6, 5)), b.leaf(k4e5), "groups of size 4 filled with design_K4E_4_5");
  }
  if (v == 36) {
    Builder b{ShapeId::K4E, "k4e-explicit"};
    return b.repeat(b.leaf(IngredientKey::design(ShapeId::K4E, 36, 1)), 5, "classes of the index-1 design taken 5 times");
  }
  if (v % 12 == 4) return k4_replacement(Builder{ShapeId::K4E, "k4e-4mod12"}, v, k4e5, 5);
  if (v % 12 == 0) return rgdd_replace_fill(Builder{ShapeId::K4E, "k4e-12t"}, 12, v / 12, k4e5, IngredientKey::design(ShapeId::K4E, 12, 5), 5);
  return rgdd_replace_fill(Builder{ShapeId::K4E, "k4e-8-3t"}, 8, v / 8, k4e5, IngredientKey::design(ShapeId::K4E, 8, 5), 5);
}

void collect_leaves(const Recipe& r, std::vector<IngredientKey>& out, std::set<std::string>& seen) {
  if (r.key && seen.insert(r.key->name()).second) out.push_back(*r.key);
  for (const auto& c : r.children) collect_leaves(c, out, seen);
}

std::string kind_of(const AnyDesign& d) {
  if (const auto* g = std::get_if<GroupedDesign>(&d)) return std::string(kind_name(g->kind));
  return "design";
}

void check_node(const Recipe& r, const AnyDesign& d) {
  const ResolvableDesign& base = base_design(d);
  const auto report = verify(d);
  auto fail = [&](const std::string& what) {
    throw InternalInconsistency("recipe step '" + r.op + "' (" + r.summary + "): " + what);
  };
  if (!report.valid) fail("verification failed: " + report.summary());
  const Expectation& e = r.expect;
  const long long full = static_cast<long long>(base.full_class_count());
  const long long partial = static_cast<long long>(base.classes.size()) - full;
  if (kind_of(d) != e.kind) fail("produced a " + kind_of(d) + ", expected a " + e.kind);
  if (base.order() != e.order) fail("order " + std::to_string(base.order()) + ", expected " + std::to_string(e.order));
  if (base.lambda != e.lambda) fail("index " + std::to_string(base.lambda) + ", expected " + std::to_string(e.lambda));
  if (full != e.full_classes || partial != e.partial_classes) {
    fail(std::to_string(full) + " full and " + std::to_string(partial) + " partial classes, expected " + std::to_string(e.full_classes) +
         " and " + std::to_string(e.partial_classes));
  }
}

template <class T>
const T& child_as(const AnyDesign& d, const Recipe& r) {
  if (const auto* x = std::get_if<T>(&d)) return *x;
  throw InternalInconsistency("recipe step '" + r.op + "' got an operand of the wrong form");
}

AnyDesign run(const Recipe& r, Catalog& cat) {
  std::vector<AnyDesign> in;
  for (const auto& c : r.children) in.push_back(run(c, cat));
  AnyDesign out;
  if (r.op == "ingredient") {
    out = cat.fetch(*r.key);
  } else if (r.op == "repeat") {
    const int copies = r.params.at("copies").get<int>();
    out = std::visit([copies](const auto& d) -> AnyDesign { return repeat_classes(d, copies); }, in.at(0));
  } else if (r.op == "singleton") {
    out = as_singleton_rgdd(child_as<ResolvableDesign>(in.at(0), r));
  } else if (r.op == "weight") {
    out = weight_and_replace(in.at(0), r.params.at("weight").get<int>(), child_as<GroupedDesign>(in.at(1), r));
  } else if (r.op == "fill_groups") {
    out = fill_groups(child_as<GroupedDesign>(in.at(0), r), child_as<ResolvableDesign>(in.at(1), r));
  } else if (r.op == "drop_singletons") {
    out = drop_singleton_groups(child_as<GroupedDesign>(in.at(0), r));
  } else if (r.op == "frame_fill") {
    out = frame_fill_with_hole(child_as<GroupedDesign>(in.at(0), r), child_as<GroupedDesign>(in.at(1), r),
                               child_as<ResolvableDesign>(in.at(2), r), r.params.at("copies").get<int>());
  } else if (r.op == "one_factor") {
    out = one_factor_construction(r.params.at("order").get<int>(), child_as<GroupedDesign>(in.at(0), r));
  } else {
    throw InternalInconsistency("unknown recipe operation '" + r.op + "'");
  }
  check_node(r, out);
  return out;
}

json expect_json(const Expectation& e) {
  return {{"kind", e.kind}, {"order", e.order}, {"lambda", e.lambda}, {"fullClasses", e.full_classes}, {"partialClasses", e.partial_classes}};
}

}  // namespace

int base_index(GraphShape shape, int v, int lambda) {
  if (shape == GraphShape(ShapeId::K4E) && lambda % 5 == 0) return 5;
  for (int d = 1; d <= lambda; ++d) {
    if (lambda % d == 0 && v >= shape.vertex_count() && spectrum_verdict(shape, v, d).status == Status::Admissible) return d;
  }
  return lambda;
}

Recipe plan(GraphShape shape, int v, int lambda) {
  if (v < shape.vertex_count()) throw NotAdmissible("v = " + std::to_string(v) + " is smaller than the block");
  const auto verdict = spectrum_verdict(shape, v, lambda);
  if (verdict.status != Status::Admissible) {
    std::string why = std::string(shape.name()) + " v=" + std::to_string(v) + " lambda=" + std::to_string(lambda) + " is " +
                      std::string(status_name(verdict.status)) + ":";
    for (const auto& c : verdict.violations()) why += " " + c.text + ";";
    throw NotAdmissible(why);
  }
  const int lambda0 = base_index(shape, v, lambda);
  Recipe base;
  switch (shape.id()) {
    case ShapeId::C4: base = plan_c4(v); break;
    case ShapeId::Kite: base = plan_kite(v); break;
    case ShapeId::K13: base = plan_star(v, lambda0); break;
    case ShapeId::K4E:
      if (lambda0 == 5) {
        base = plan_k4e_index5(v);
      } else {
        base = Builder{shape, "k4e-index-one"}.leaf(IngredientKey::design(shape, v, 1));
      }
      break;
    case ShapeId::K2: base = Builder{shape, "round-robin"}.leaf(IngredientKey::design(shape, v, 1)); break;
    default: base = Builder{shape, "catalog"}.leaf(IngredientKey::design(shape, v, lambda0)); break;
  }
  if (lambda == lambda0) return base;
  Builder b{shape, "index-composition"};
  const int mu = lambda / lambda0;
  return b.repeat(std::move(base), mu,
                  std::to_string(mu) + " copies of the index-" + std::to_string(lambda0) + " design combined");
}

std::vector<IngredientKey> leaf_keys(const Recipe& recipe) {
  std::vector<IngredientKey> out;
  std::set<std::string> seen;
  collect_leaves(recipe, out, seen);
  return out;
}

std::vector<std::string> missing_ingredients(const Recipe& recipe, const Catalog& catalog) {
  std::vector<std::string> out;
  for (const auto& k : leaf_keys(recipe)) {
    if (!catalog.available(k) && catalog.source(k).kind == SourceKind::External) out.push_back(k.file_name());
  }
  return out;
}

ResolvableDesign execute(const Recipe& recipe, Catalog& catalog) {
  if (auto missing = missing_ingredients(recipe, catalog); !missing.empty()) throw MissingIngredient(std::move(missing));
  const AnyDesign result = run(recipe, catalog);
  return std::get<ResolvableDesign>(relabel_to_integers(result));
}

json to_json(const Recipe& r, const Catalog* catalog) {
  json doc = {{"op", r.op}, {"construction", r.construction}, {"summary", r.summary}, {"params", r.params}, {"expect", expect_json(r.expect)}};
  if (r.key) {
    doc["key"] = r.key->name();
    if (catalog) {
      const auto src = catalog->source(*r.key);
      doc["source"] = {{"kind", source_kind_name(src.kind)}, {"detail", src.detail}, {"description", src.description},
                       {"available", catalog->available(*r.key)}};
    }
  }
  if (!r.notes.empty()) doc["notes"] = r.notes;
  if (!r.children.empty()) {
    json kids = json::array();
    for (const auto& c : r.children) kids.push_back(to_json(c, catalog));
    doc["children"] = std::move(kids);
  }
  return doc;
}

Recipe recipe_from_json(const json& doc) {
  try {
    Recipe r;
    r.op = doc.at("op").get<std::string>();
    r.construction = doc.value("construction", std::string());
    r.summary = doc.value("summary", std::string());
    r.params = doc.value("params", json::object());
    if (doc.contains("key")) r.key = IngredientKey::parse(doc.at("key").get<std::string>());
    r.notes = doc.value("notes", std::vector<std::string>{});
    const auto& e = doc.at("expect");
    r.expect = {e.at("kind").get<std::string>(), e.at("order").get<int>(), e.at("lambda").get<int>(), e.at("fullClasses").get<long long>(),
                e.at("partialClasses").get<long long>()};
    for (const auto& c : doc.value("children", json::array())) r.children.push_back(recipe_from_json(c));
    return r;
  } catch (const json::exception& e) {
    throw MalformedDesign(std::string("bad recipe: ") + e.what());
  }
}

}  // namespace rdk
