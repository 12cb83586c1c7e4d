#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdk/catalog.hpp"
#include "rdk/model.hpp"

namespace rdk {

/// What a recipe node must produce; checked after the node runs.
struct Expectation {
  /// "design", "rgdd", "frame" or "ird".
  std::string kind = "design";
  int order = 0;
  int lambda = 1;
  long long full_classes = 0;
  long long partial_classes = 0;
};

/// One construction step. Ops:
///   ingredient   leaf fetched from the catalog (`key`)
///   repeat       child classes listed params.copies times
///   singleton    child design viewed as an RGDD of type 1^k
///   weight       child 0 (master) weighted by params.weight, blocks replaced
///                by child 1 (ingredient) taken params.copies times
///   fill_groups  child 0's groups filled with child 1
///   drop_singletons  child's singleton groups removed
///   frame_fill   child 0 frame, child 1 IRD, child 2 hole filler, params.copies
///   one_factor   params.order, child 0 the (K4-e)-RGDD of type 2^(v/2)
struct Recipe {
  std::string op;
  /// Identifier of the construction this node belongs to, e.g. "k4e-68mod120".
  std::string construction;
  std::string summary;
  nlohmann::json params = nlohmann::json::object();
  std::optional<IngredientKey> key;
  std::vector<Recipe> children;
  std::vector<std::string> notes;
  Expectation expect;
};

/// Index of the base construction for each shape: the smallest index at
/// which the planner has a direct route (K4-e: 5 if lambda is a multiple of
/// 5, else 1).
int base_index(GraphShape shape, int v, int lambda);

/// Throws NotAdmissible (with every violated condition) unless
/// spectrum_verdict says the parameters are admissible.
Recipe plan(GraphShape shape, int v, int lambda);

/// Leaf keys in depth-first order, without duplicates.
std::vector<IngredientKey> leaf_keys(const Recipe& recipe);

/// File names of the leaves the catalog cannot supply without a file.
std::vector<std::string> missing_ingredients(const Recipe& recipe, const Catalog& catalog);

/// Runs the recipe bottom-up, checking every node against its expectation
/// and the verifier. Throws MissingIngredient listing every absent file
/// before doing any work. The result is relabelled to 0..v-1.
ResolvableDesign execute(const Recipe& recipe, Catalog& catalog);

/// With a catalog, leaves also carry their source.
nlohmann::json to_json(const Recipe& recipe, const Catalog* catalog = nullptr);
Recipe recipe_from_json(const nlohmann::json& doc);

}  // namespace rdk
