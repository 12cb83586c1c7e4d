#include "rdk/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "rdk/errors.hpp"

namespace rdk {

namespace {

bool is_separator(char c) {
  switch (c) {
    case '(': case ')': case '[': case ']': case ',': case ';': case '-': case '"':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

long long to_number(std::string_view s) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw MalformedBlock("label out of range: " + std::string(s));
  return value;
}

// Natural order: digit runs compare numerically, other runs lexicographically.
std::strong_ordering natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      auto ra = a.substr(i, ie - i), rb = b.substr(j, je - j);
      while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
      while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
      if (ra.size() != rb.size()) return ra.size() <=> rb.size();
      if (auto c = ra.compare(rb); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] <=> b[j];
      ++i;
      ++j;
    }
  }
  if (auto c = (a.size() - i) <=> (b.size() - j); c != 0) return c;
  return a <=> b;
}

constexpr std::array<std::pair<int, int>, 1> kK2{{{0, 1}}};
constexpr std::array<std::pair<int, int>, 2> kP3{{{0, 1}, {1, 2}}};
constexpr std::array<std::pair<int, int>, 3> kP4{{{0, 1}, {1, 2}, {2, 3}}};
constexpr std::array<std::pair<int, int>, 3> kK3{{{0, 1}, {1, 2}, {0, 2}}};
constexpr std::array<std::pair<int, int>, 4> kC4{{{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
constexpr std::array<std::pair<int, int>, 3> kK13{{{0, 1}, {0, 2}, {0, 3}}};
constexpr std::array<std::pair<int, int>, 4> kKite{{{0, 1}, {0, 2}, {1, 2}, {2, 3}}};
constexpr std::array<std::pair<int, int>, 5> kK4E{{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}}};
constexpr std::array<std::pair<int, int>, 6> kK4{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr std::array<GraphShape, 9> kAllShapes{ShapeId::K2, ShapeId::P3, ShapeId::P4, ShapeId::K3, ShapeId::C4,
                                                ShapeId::K13, ShapeId::Kite, ShapeId::K4E, ShapeId::K4};

bool is_path(GraphShape s) { return s.id() == ShapeId::K2 || s.id() == ShapeId::P3 || s.id() == ShapeId::P4; }

// Separator expected after tuple entry i (the last entry is followed by the closer).
char separator_after(GraphShape shape, int i) {
  const int n = shape.vertex_count();
  if (i == n - 1) return is_path(shape) ? ']' : ')';
  if (shape.id() == ShapeId::K13 && i == 0) return ';';
  if (shape.id() == ShapeId::K4E && i == 2) return ';';
  if (shape.id() == ShapeId::Kite && i == 2) return '-';
  return ',';
}

}  // namespace

Point::Point(std::string label) : label_(std::move(label)) {
  if (label_.empty()) throw MalformedBlock("empty point label");
  for (char c : label_) {
    if (is_separator(c)) throw MalformedBlock("invalid character in point label '" + label_ + "'");
  }
  if (all_digits(label_)) {
    kind_ = Kind::Integer;
    number_ = to_number(label_);
    // "007" and "7" would otherwise be distinct points with equal order.
    label_ = std::to_string(number_);
  } else if (label_.rfind("inf", 0) == 0 && (label_.size() == 3 || all_digits(std::string_view(label_).substr(3)))) {
    kind_ = Kind::Infinity;
    number_ = label_.size() == 3 ? 0 : to_number(std::string_view(label_).substr(3));
  } else {
    kind_ = Kind::Symbol;
  }
}

Point Point::integer(long long value) {
  if (value < 0) throw MalformedBlock("integer point labels are non-negative");
  return Point(std::to_string(value));
}

Point Point::infinity(int index) { return Point(index == 0 ? std::string("inf") : "inf" + std::to_string(index)); }

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ != Point::Kind::Symbol) return a.number_ <=> b.number_;
  return natural_compare(a.label_, b.label_);
}

Edge make_edge(const Point& a, const Point& b) { return a < b ? Edge{a, b} : Edge{b, a}; }

GraphShape GraphShape::from_name(std::string_view name) {
  static const std::map<std::string, ShapeId, std::less<>> aliases{
      {"K2", ShapeId::K2},     {"P3", ShapeId::P3},     {"P4", ShapeId::P4},   {"K3", ShapeId::K3},
      {"C4", ShapeId::C4},     {"K13", ShapeId::K13},   {"K1,3", ShapeId::K13}, {"STAR", ShapeId::K13},
      {"KITE", ShapeId::Kite}, {"K3+e", ShapeId::Kite}, {"K4E", ShapeId::K4E}, {"K4-e", ShapeId::K4E},
      {"K4", ShapeId::K4}};
  auto it = aliases.find(name);
  if (it == aliases.end()) throw Error("unknown shape '" + std::string(name) + "'");
  return it->second;
}

std::span<const GraphShape> GraphShape::all() { return kAllShapes; }

std::string_view GraphShape::name() const {
  switch (id_) {
    case ShapeId::K2: return "K2";
    case ShapeId::P3: return "P3";
    case ShapeId::P4: return "P4";
    case ShapeId::K3: return "K3";
    case ShapeId::C4: return "C4";
    case ShapeId::K13: return "K13";
    case ShapeId::Kite: return "KITE";
    case ShapeId::K4E: return "K4E";
    case ShapeId::K4: return "K4";
  }
  return "?";
}

int GraphShape::vertex_count() const {
  switch (id_) {
    case ShapeId::K2: return 2;
    case ShapeId::P3:
    case ShapeId::K3: return 3;
    default: return 4;
  }
}

std::span<const std::pair<int, int>> GraphShape::edges() const {
  switch (id_) {
    case ShapeId::K2: return kK2;
    case ShapeId::P3: return kP3;
    case ShapeId::P4: return kP4;
    case ShapeId::K3: return kK3;
    case ShapeId::C4: return kC4;
    case ShapeId::K13: return kK13;
    case ShapeId::Kite: return kKite;
    case ShapeId::K4E: return kK4E;
    case ShapeId::K4: return kK4;
  }
  return {};
}

std::vector<int> GraphShape::degree_set() const {
  std::vector<int> degree(vertex_count(), 0);
  for (auto [a, b] : edges()) {
    ++degree[a];
    ++degree[b];
  }
  std::sort(degree.begin(), degree.end());
  degree.erase(std::unique(degree.begin(), degree.end()), degree.end());
  return degree;
}

Block::Block(GraphShape shape, std::vector<Point> tuple) : shape_(shape), tuple_(std::move(tuple)) {
  if (static_cast<int>(tuple_.size()) != shape_.vertex_count()) {
    throw MalformedBlock(std::string(shape_.name()) + " block needs " + std::to_string(shape_.vertex_count()) +
                         " points, got " + std::to_string(tuple_.size()));
  }
  for (std::size_t i = 0; i < tuple_.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple_.size(); ++j) {
      if (tuple_[i] == tuple_[j]) throw MalformedBlock("repeated point " + tuple_[i].label() + " in block");
    }
  }
  if (is_path(shape_) && tuple_.back() < tuple_.front()) std::reverse(tuple_.begin(), tuple_.end());
}

std::vector<Edge> edges_of_block(const Block& block) {
  std::vector<Edge> out;
  out.reserve(block.shape().edge_count());
  for (auto [a, b] : block.shape().edges()) out.push_back(make_edge(block[a], block[b]));
  return out;
}

Block parse_block(std::string_view text, GraphShape shape) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_space();
    if (pos >= text.size() || text[pos] != c) {
      throw ParseError(std::string("expected '") + c + "' in " + std::string(shape.name()) + " block", pos);
    }
    ++pos;
  };
  expect(is_path(shape) ? '[' : '(');
  std::vector<Point> tuple;
  for (int i = 0; i < shape.vertex_count(); ++i) {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && !is_separator(text[pos])) ++pos;
    if (pos == start) throw ParseError("expected a point label", start);
    std::string label(text.substr(start, pos - start));
    // The infinity sign is accepted as an alias of "inf".
    if (label.rfind("∞", 0) == 0) label = "inf" + label.substr(3);
    try {
      tuple.emplace_back(std::move(label));
    } catch (const MalformedBlock& e) {
      throw ParseError(e.what(), start);
    }
    expect(separator_after(shape, i));
  }
  skip_space();
  if (pos != text.size()) throw ParseError("trailing characters after block", pos);
  try {
    return Block(shape, std::move(tuple));
  } catch (const MalformedBlock& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string format_block(const Block& block) {
  const GraphShape shape = block.shape();
  std::string out(1, is_path(shape) ? '[' : '(');
  for (int i = 0; i < shape.vertex_count(); ++i) {
    out += block[i].label();
    out += separator_after(shape, i);
  }
  return out;
}

std::vector<Point> ParallelClass::vertices() const {
  std::vector<Point> out;
  for (const auto& b : blocks) out.insert(out.end(), b.tuple().begin(), b.tuple().end());
  sort_points(out);
  return out;
}

std::size_t ResolvableDesign::block_count() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.blocks.size();
  return n;
}

std::size_t ResolvableDesign::full_class_count() const {
  return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(), [](const ParallelClass& c) { return c.is_full(); }));
}

std::string_view kind_name(GroupedKind kind) {
  switch (kind) {
    case GroupedKind::GDD: return "gdd";
    case GroupedKind::RGDD: return "rgdd";
    case GroupedKind::Frame: return "frame";
    case GroupedKind::IRD: return "ird";
  }
  return "?";
}

GroupedKind grouped_kind_from_name(std::string_view name) {
  if (name == "gdd") return GroupedKind::GDD;
  if (name == "rgdd") return GroupedKind::RGDD;
  if (name == "frame") return GroupedKind::Frame;
  if (name == "ird") return GroupedKind::IRD;
  throw Error("unknown grouped design kind '" + std::string(name) + "'");
}

std::vector<std::pair<int, int>> GroupedDesign::type() const {
  std::map<int, int> counts;
  for (const auto& g : groups) ++counts[static_cast<int>(g.size())];
  return {counts.begin(), counts.end()};
}

const ResolvableDesign& base_design(const AnyDesign& d) {
  if (const auto* g = std::get_if<GroupedDesign>(&d)) return g->design;
  return std::get<ResolvableDesign>(d);
}

std::vector<Point> integer_points(int count) {
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(Point::integer(i));
  return out;
}

void sort_points(std::vector<Point>& points) { std::sort(points.begin(), points.end()); }

}  // namespace rdk
