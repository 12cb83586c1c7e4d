#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rdk/model.hpp"
#include "rdk/search.hpp"

namespace rdk {

enum class IngredientKind { Design, RGDD, Frame, IRD, OneFactorization, Packing, Covering };

/// File-name prefix: design, rgdd, frame, ird, onefactor, packing, covering.
std::string_view ingredient_kind_name(IngredientKind kind);

/// Parameters of an ingredient. File name form: `<kind>_<shape>_<type>_<lambda>`
/// where the type is the order ("20"), a group type ("4^3", "4^5.8^1") or,
/// for an IRD, order and hole ("28h8").
struct IngredientKey {
  IngredientKind kind = IngredientKind::Design;
  GraphShape shape;
  /// (group size, count) for RGDD, frame and one-factorization keys.
  std::vector<std::pair<int, int>> type;
  /// Order for design, IRD, packing and covering keys.
  int order = 0;
  int hole = 0;
  int lambda = 1;

  static IngredientKey design(GraphShape shape, int v, int lambda);
  static IngredientKey rgdd(GraphShape shape, int g, int u, int lambda);
  static IngredientKey frame(GraphShape shape, int g, int u, int lambda);
  static IngredientKey ird(GraphShape shape, int v, int h, int lambda);
  /// K2 RGDD of type g^u, index 1.
  static IngredientKey one_factorization(int g, int u);
  /// Accepts the name with or without ".json". Throws ParseError.
  static IngredientKey parse(std::string_view name);

  /// Total number of points.
  int point_count() const;
  std::string name() const;
  std::string file_name() const { return name() + ".json"; }

  friend bool operator==(const IngredientKey&, const IngredientKey&) = default;
  friend bool operator<(const IngredientKey& a, const IngredientKey& b) { return a.name() < b.name(); }
};

enum class SourceKind { Builtin, Searched, External };
std::string_view source_kind_name(SourceKind kind);

struct IngredientSource {
  SourceKind kind = SourceKind::External;
  /// Builtin: recipe id; searched: the search problem; external: expected file name.
  std::string detail;
  std::string description;
};

/// Loads a repository data file: explicit classes, or base blocks developed
/// over Z_modulus ("modulus", "fixed", "baseClasses", "grouped", optional
/// "shiftStep" to develop by every step-th shift only), or subscript
/// rotations ("subscriptModulus" with "groups" and "baseClasses").
/// "groups" with an optional "kind" gives a GroupedDesign. Not verified.
AnyDesign load_data_design(const nlohmann::json& doc);

/// Either the exchange format or the data-file format above.
AnyDesign read_ingredient_document(const nlohmann::json& doc);

/// The key an object would be registered under.
IngredientKey key_of(const AnyDesign& design, bool packing = false, bool covering = false);

/// Throws RejectedIngredient unless `design` verifies as an object of `key`.
void check_ingredient(const IngredientKey& key, const AnyDesign& design);

/// Thread-safe registry. Lookup order: builtin, imported, file in the
/// ingredient directory, search; otherwise MissingIngredient.
class Catalog {
 public:
  /// Ingredient directory from RDK_INGREDIENTS when set.
  Catalog();
  explicit Catalog(std::optional<std::filesystem::path> ingredient_dir,
                   std::filesystem::path data_dir = RDK_DATA_DIR);

  IngredientSource source(const IngredientKey& key) const;
  /// True when fetch can succeed without a search.
  bool available(const IngredientKey& key) const;
  /// Verified object; repeated fetches return the cached object.
  AnyDesign fetch(const IngredientKey& key);

  IngredientKey import_ingredient(const std::filesystem::path& file);
  IngredientKey import_text(const std::string& text);

  /// Every fixed-parameter builtin plus the small members of the
  /// parametric families.
  std::vector<IngredientKey> builtin_keys() const;

  const std::optional<std::filesystem::path>& ingredient_dir() const { return ingredient_dir_; }
  void set_search_budget(const SearchBudget& budget) { budget_ = budget; }

 private:
  struct Builtin {
    std::string id;
    std::string description;
    std::function<AnyDesign(Catalog&)> build;
  };
  std::optional<Builtin> builtin(const IngredientKey& key) const;
  std::optional<std::filesystem::path> supplied_file(const IngredientKey& key) const;
  AnyDesign data_file(const std::string& stem) const;
  ResolvableDesign fetch_design(const IngredientKey& key);
  GroupedDesign fetch_grouped(const IngredientKey& key);

  std::optional<std::filesystem::path> ingredient_dir_;
  std::filesystem::path data_dir_;
  SearchBudget budget_;
  mutable std::recursive_mutex mutex_;
  std::map<std::string, AnyDesign> cache_;
  std::map<std::string, std::string> imported_text_;
};

}  // namespace rdk
