#pragma once
// Small objects built directly from the block listings, independent of the catalog.

#include <string>
#include <vector>

#include "rdk/development.hpp"
#include "rdk/model.hpp"

namespace fx {

using namespace rdk;

inline std::vector<Block> blocks(GraphShape s, std::initializer_list<const char*> texts) {
  std::vector<Block> out;
  for (const char* t : texts) out.push_back(parse_block(t, s));
  return out;
}

inline ResolvableDesign explicit_design(GraphShape s, int v, int lambda, std::initializer_list<const char*> one_block_classes) {
  ResolvableDesign d;
  d.shape = s;
  d.lambda = lambda;
  d.points = integer_points(v);
  for (const char* t : one_block_classes) d.classes.push_back(make_class({parse_block(t, s)}, d.points));
  return d;
}

inline ResolvableDesign c4_2k4() { return explicit_design(ShapeId::C4, 4, 2, {"(0,1,2,3)", "(0,1,3,2)", "(0,2,1,3)"}); }
inline ResolvableDesign kite_2k4() { return explicit_design(ShapeId::Kite, 4, 2, {"(0,2,3-1)", "(3,2,1-0)", "(2,1,0-3)"}); }

inline ResolvableDesign star_2k4() {
  ResolvableDesign d;
  d.shape = ShapeId::K13;
  d.lambda = 2;
  d.points = integer_points(4);
  d.classes = develop_classes({blocks(ShapeId::K13, {"(0;1,2,3)"}), 4, {}});
  return d;
}

inline ResolvableDesign k4e_5k4() {
  return explicit_design(ShapeId::K4E, 4, 5, {"(1,2,0;3)", "(3,0,2;1)", "(1,3,0;2)", "(2,0,1;3)", "(1,0,2;3)", "(2,3,1;0)"});
}

inline ResolvableDesign kite_2k8() {
  ResolvableDesign d;
  d.shape = ShapeId::Kite;
  d.lambda = 2;
  d.points = development_points(7, {Point("inf")});
  d.classes = develop_classes({blocks(ShapeId::Kite, {"(inf,1,5-6)", "(0,4,2-3)"}), 7, {Point("inf")}});
  return d;
}

inline GroupedDesign star_rgdd_4_2() {
  GroupedDesign g;
  g.kind = GroupedKind::RGDD;
  g.design.shape = ShapeId::K13;
  g.design.lambda = 6;
  g.groups = {{"x1", "x2", "x3", "x4"}, {"y1", "y2", "y3", "y4"}};
  for (const auto& grp : g.groups) g.design.points.insert(g.design.points.end(), grp.begin(), grp.end());
  const char* base[4][2] = {{"(x1;y1,y2,y3)", "(y4;x2,x3,x4)"},
                            {"(x1;y2,y3,y4)", "(y1;x2,x3,x4)"},
                            {"(x1;y3,y4,y1)", "(y2;x2,x3,x4)"},
                            {"(x1;y4,y1,y2)", "(y3;x2,x3,x4)"}};
  for (auto& b : base) {
    for (auto& c : develop_subscripts(blocks(ShapeId::K13, {b[0], b[1]}), 4, g.design.points)) g.design.classes.push_back(c);
  }
  return g;
}

inline GroupedDesign star_rgdd_4_3_index3() {
  GroupedDesign g;
  g.kind = GroupedKind::RGDD;
  g.design.shape = ShapeId::K13;
  g.design.lambda = 3;
  g.design.points = integer_points(12);
  for (int i = 0; i < 3; ++i) {
    std::vector<Point> grp;
    for (int k = i; k < 12; k += 3) grp.push_back(Point::integer(k));
    g.groups.push_back(grp);
  }
  g.design.classes = develop_grouped(parse_block("(2;0,7,9)", ShapeId::K13), 12, 4);
  for (auto& c : develop_classes({blocks(ShapeId::K13, {"(4;0,3,8)", "(6;1,2,5)", "(9;7,10,11)"}), 12, {}})) {
    g.design.classes.push_back(c);
  }
  return g;
}

/// Lines of AG(2,3) in their four parallel classes: a KTS(9).
inline ResolvableDesign kts9() {
  ResolvableDesign d;
  d.shape = ShapeId::K3;
  d.lambda = 1;
  d.points = integer_points(9);
  auto pt = [](int x, int y) { return Point::integer(3 * x + y); };
  for (int slope = 0; slope <= 3; ++slope) {
    std::vector<Block> bl;
    for (int c = 0; c < 3; ++c) {
      std::vector<Point> t;
      for (int s = 0; s < 3; ++s) t.push_back(slope == 3 ? pt(c, s) : pt(s, (slope * s + c) % 3));
      bl.emplace_back(GraphShape(ShapeId::K3), t);
    }
    d.classes.push_back(make_class(bl, d.points));
  }
  return d;
}

/// Round-robin 1-factorization of K_n, n even: point n-1 is the pivot.
inline ResolvableDesign round_robin(int n) {
  ResolvableDesign d;
  d.shape = ShapeId::K2;
  d.lambda = 1;
  d.points = integer_points(n);
  const int m = n - 1;
  for (int r = 0; r < m; ++r) {
    std::vector<Block> bl;
    bl.emplace_back(GraphShape(ShapeId::K2), std::vector<Point>{Point::integer(r), Point::integer(m)});
    for (int k = 1; k < n / 2; ++k) {
      bl.emplace_back(GraphShape(ShapeId::K2), std::vector<Point>{Point::integer((r + k) % m), Point::integer((r - k + m) % m)});
    }
    d.classes.push_back(make_class(bl, d.points));
  }
  return d;
}

/// K2-frame of type 2^u, u odd: each edge {a,b} of the near 1-factor missing x
/// becomes the two matchings of {a0,a1} x {b0,b1}.
inline GroupedDesign k2_frame(int u) {
  GroupedDesign g;
  g.kind = GroupedKind::Frame;
  g.design.shape = ShapeId::K2;
  g.design.lambda = 1;
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
      g.design.classes.push_back(make_class(bl, g.design.points));
    }
  }
  return g;
}

}  // namespace fx
