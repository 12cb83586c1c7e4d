#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rdk {

/// A point label. Integer labels ("0", "17") are the only ones moved by
/// modular development; "inf", "inf1", ... are fixed infinity points; anything
/// else ("x1", "3_2") is a free symbol.
///
/// Points sort integers numerically, then infinity points by index, then
/// symbols in natural order (digit runs compared numerically).
class Point {
 public:
  enum class Kind : std::uint8_t { Integer, Infinity, Symbol };

  Point() : Point(std::string("0")) {}
  explicit Point(std::string label);
  Point(const char* label) : Point(std::string(label)) {}

  static Point integer(long long value);
  /// index 0 gives "inf", otherwise "inf<index>".
  static Point infinity(int index);

  const std::string& label() const { return label_; }
  Kind kind() const { return kind_; }
  bool is_integer() const { return kind_ == Kind::Integer; }
  long long value() const { return number_; }

  friend bool operator==(const Point& a, const Point& b) { return a.label_ == b.label_; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  std::string label_;
  Kind kind_ = Kind::Integer;
  long long number_ = 0;
};

/// Unordered pair stored with first < second.
using Edge = std::pair<Point, Point>;
Edge make_edge(const Point& a, const Point& b);

enum class ShapeId : std::uint8_t { K2, P3, P4, K3, C4, K13, Kite, K4E, K4 };

/// One of the nine connected subgraphs of K4, with canonical vertices 0..3.
class GraphShape {
 public:
  constexpr GraphShape() = default;
  constexpr GraphShape(ShapeId id) : id_(id) {}

  static GraphShape from_name(std::string_view name);
  static std::span<const GraphShape> all();

  ShapeId id() const { return id_; }
  std::string_view name() const;
  int vertex_count() const;
  int edge_count() const { return static_cast<int>(edges().size()); }
  std::span<const std::pair<int, int>> edges() const;
  /// Sorted distinct vertex degrees, e.g. {1,3} for the star.
  std::vector<int> degree_set() const;

  friend bool operator==(GraphShape a, GraphShape b) { return a.id_ == b.id_; }

 private:
  ShapeId id_ = ShapeId::K2;
};

/// A copy of a shape on an ordered tuple of points. The tuple order follows
/// the block notation, so it is kept as written (paths are normalised so the
/// smaller endpoint comes first, since a path read backwards is the same block).
class Block {
 public:
  Block(GraphShape shape, std::vector<Point> tuple);

  GraphShape shape() const { return shape_; }
  const std::vector<Point>& tuple() const { return tuple_; }
  const Point& operator[](std::size_t i) const { return tuple_[i]; }

  friend bool operator==(const Block& a, const Block& b) = default;

 private:
  GraphShape shape_;
  std::vector<Point> tuple_;
};

std::vector<Edge> edges_of_block(const Block& block);

/// Parses the bracket notation of `shape`:
/// path "[a,b,c]", cycle and K3/K4 "(a,b,c,d)", star "(a;b,c,d)",
/// K4-e "(a,b,c;d)", kite "(a,b,c-d)".
Block parse_block(std::string_view text, GraphShape shape);
std::string format_block(const Block& block);

struct ParallelClass {
  std::vector<Block> blocks;
  /// Points not covered by the class; empty for a full class.
  std::vector<Point> missing;

  std::vector<Point> vertices() const;
  bool is_full() const { return missing.empty(); }
  friend bool operator==(const ParallelClass&, const ParallelClass&) = default;
};

struct ResolvableDesign {
  std::vector<Point> points;
  int lambda = 1;
  GraphShape shape;
  std::vector<ParallelClass> classes;

  int order() const { return static_cast<int>(points.size()); }
  std::size_t block_count() const;
  std::size_t full_class_count() const;
  friend bool operator==(const ResolvableDesign&, const ResolvableDesign&) = default;
};

enum class GroupedKind : std::uint8_t { GDD, RGDD, Frame, IRD };
std::string_view kind_name(GroupedKind kind);
GroupedKind grouped_kind_from_name(std::string_view name);

/// A design over a partitioned point set. For an IRD, `hole` holds the points
/// whose internal pairs are never covered and `groups` is normally empty.
struct GroupedDesign {
  ResolvableDesign design;
  std::vector<std::vector<Point>> groups;
  GroupedKind kind = GroupedKind::GDD;
  std::vector<Point> hole;

  /// Sizes of the groups as (size, multiplicity), sorted by size.
  std::vector<std::pair<int, int>> type() const;
  friend bool operator==(const GroupedDesign&, const GroupedDesign&) = default;
};

/// Either kind of design object produced or consumed by the library.
using AnyDesign = std::variant<ResolvableDesign, GroupedDesign>;
const ResolvableDesign& base_design(const AnyDesign& d);

std::vector<Point> integer_points(int count);
void sort_points(std::vector<Point>& points);

}  // namespace rdk
