#include <doctest.h>

#include <map>

#include "rdk/development.hpp"
#include "rdk/verifier.hpp"

using namespace rdk;

namespace {

ParallelClass cls(GraphShape shape, std::initializer_list<const char*> texts, std::vector<Point> missing = {}) {
  ParallelClass c;
  for (const char* t : texts) c.blocks.push_back(parse_block(t, shape));
  c.missing = std::move(missing);
  return c;
}

ResolvableDesign c4_on_four() {
  ResolvableDesign d;
  d.points = integer_points(4);
  d.lambda = 2;
  d.shape = ShapeId::C4;
  d.classes = {cls(ShapeId::C4, {"(0,1,2,3)"}), cls(ShapeId::C4, {"(0,1,3,2)"}), cls(ShapeId::C4, {"(0,2,1,3)"})};
  return d;
}

GroupedDesign k2_frame() {
  GroupedDesign g;
  g.design.points = integer_points(6);
  g.design.lambda = 1;
  g.design.shape = ShapeId::K2;
  g.groups = {{"0", "1"}, {"2", "3"}, {"4", "5"}};
  g.kind = GroupedKind::Frame;
  g.design.classes = {
      cls(ShapeId::K2, {"[2,4]", "[3,5]"}, {"0", "1"}), cls(ShapeId::K2, {"[2,5]", "[3,4]"}, {"0", "1"}),
      cls(ShapeId::K2, {"[0,4]", "[1,5]"}, {"2", "3"}), cls(ShapeId::K2, {"[0,5]", "[1,4]"}, {"2", "3"}),
      cls(ShapeId::K2, {"[0,2]", "[1,3]"}, {"4", "5"}), cls(ShapeId::K2, {"[0,3]", "[1,2]"}, {"4", "5"}),
  };
  return g;
}

}  // namespace

TEST_CASE("C4 design on four points, index 2") {
  const auto d = c4_on_four();
  // hand count: 12 edge slots, each of the six pairs twice
  std::map<Edge, int> count;
  for (const auto& c : d.classes) {
    for (const auto& b : c.blocks) {
      for (const auto& e : edges_of_block(b)) ++count[e];
    }
  }
  REQUIRE(count.size() == 6);
  for (const auto& [e, n] : count) REQUIRE(n == 2);

  const auto report = verify_design(d);
  CHECK(report.valid);
  CHECK(report.to_json()["valid"] == true);

  auto wrong = d;
  wrong.lambda = 1;
  const auto bad = verify_design(wrong);
  CHECK(!bad.valid);
  CHECK(bad.edge_defects.size() == 6);
  for (const auto& e : bad.edge_defects) {
    CHECK(e.expected == 1);
    CHECK(e.actual == 2);
  }
}

TEST_CASE("developed K4-e design of order 20 and index 5") {
  ResolvableDesign d;
  d.shape = ShapeId::K4E;
  d.lambda = 5;
  d.points = development_points(19, {Point("inf")});
  for (auto texts : {std::vector<const char*>{"(3,4,15;inf)", "(1,18,9;14)", "(2,0,5;8)", "(6,10,12;13)", "(7,16,11;17)"},
                     std::vector<const char*>{"(0,inf,1;15)", "(8,10,18;5)", "(2,16,11;9)", "(14,13,17;7)", "(4,6,12;3)"}}) {
    std::vector<Block> base;
    for (const char* t : texts) base.push_back(parse_block(t, ShapeId::K4E));
    auto developed = develop_classes({base, 19, {Point("inf")}});
    d.classes.insert(d.classes.end(), developed.begin(), developed.end());
  }
  const auto report = verify_design(d);
  CHECK(report.valid);
  CHECK(d.classes.size() == 38);
  CHECK(d.block_count() == 5u * 20 * 19 / (2 * 5));
}

TEST_CASE("star RGDD of type 4^2 and index 6") {
  GroupedDesign g;
  g.kind = GroupedKind::RGDD;
  g.design.shape = ShapeId::K13;
  g.design.lambda = 6;
  g.groups = {{"x1", "x2", "x3", "x4"}, {"y1", "y2", "y3", "y4"}};
  g.design.points = {"x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"};
  for (auto texts : {std::vector<const char*>{"(x1;y1,y2,y3)", "(y4;x2,x3,x4)"}, std::vector<const char*>{"(x1;y2,y3,y4)", "(y1;x2,x3,x4)"},
                     std::vector<const char*>{"(x1;y3,y4,y1)", "(y2;x2,x3,x4)"}, std::vector<const char*>{"(x1;y4,y1,y2)", "(y3;x2,x3,x4)"}}) {
    std::vector<Block> base;
    for (const char* t : texts) base.push_back(parse_block(t, ShapeId::K13));
    auto dev = develop_subscripts(base, 4, g.design.points);
    g.design.classes.insert(g.design.classes.end(), dev.begin(), dev.end());
  }
  const auto report = verify_grouped(g);
  CHECK_MESSAGE(report.valid, report.summary());
  CHECK(g.design.classes.size() == 16);
  // as a plain design it fails: within-group pairs are uncovered
  CHECK(!verify_design(g.design).valid);
}

TEST_CASE("frames") {
  auto frame = k2_frame();
  CHECK(verify_grouped(frame).valid);

  auto skewed = frame;
  skewed.design.classes[0].missing = {"0", "2"};
  skewed.design.classes[0].blocks = {parse_block("[1,4]", ShapeId::K2), parse_block("[3,5]", ShapeId::K2)};
  const auto report = verify_grouped(skewed);
  CHECK(!report.valid);
  CHECK(!report.class_defects.empty());

  auto unbalanced = frame;
  unbalanced.design.classes.pop_back();
  CHECK(!verify_grouped(unbalanced).valid);
}

TEST_CASE("mutations flip the verdict") {
  const auto d = c4_on_four();
  auto extra = d;
  extra.classes.push_back(cls(ShapeId::C4, {"(0,1,2,3)"}));
  CHECK(!verify_design(extra).valid);

  auto deleted = d;
  deleted.classes[1].blocks.clear();
  CHECK(!verify_design(deleted).valid);

  auto frame = k2_frame();
  std::swap(frame.design.classes[0].blocks[0], frame.design.classes[2].blocks[0]);
  CHECK(!verify_grouped(frame).valid);
}

TEST_CASE("structural defects are reported, not thrown") {
  auto d = c4_on_four();
  d.classes[0].missing = {"9"};
  d.points.push_back(Point("0"));
  const auto report = verify_design(d);
  CHECK(!report.valid);
  CHECK(report.class_defects.size() >= 2);

  auto partial = c4_on_four();
  partial.classes[2].missing = {"0"};
  CHECK(!verify_design(partial).valid);
}

TEST_CASE("packing and covering checks") {
  auto d = c4_on_four();
  d.classes.pop_back();
  CHECK(verify_packing(d, false).valid);
  CHECK(!verify_packing(d, true).valid);
  d.lambda = 1;
  CHECK(!verify_packing(d, false).valid);
  CHECK(verify_packing(d, true).valid);
}
