#include "rdk/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "rdk/development.hpp"
#include "rdk/errors.hpp"
#include "rdk/verifier.hpp"

namespace rdk {

namespace {

const ResolvableDesign& checked(const ResolvableDesign& d, const char* what) {
  const auto r = verify_design(d);
  if (!r.valid) throw InternalInconsistency(std::string(what) + " produced an invalid design: " + r.summary());
  return d;
}

const GroupedDesign& checked(const GroupedDesign& g, const char* what) {
  const auto r = verify_grouped(g);
  if (!r.valid) throw InternalInconsistency(std::string(what) + " produced an invalid " + std::string(kind_name(g.kind)) + ": " + r.summary());
  return g;
}

Point map_point(const Point& p, const std::map<Point, Point>& to) {
  auto it = to.find(p);
  return it == to.end() ? p : it->second;
}

std::vector<Point> map_points(const std::vector<Point>& pts, const std::map<Point, Point>& to) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(map_point(p, to));
  return out;
}

Block map_block(const Block& b, const std::map<Point, Point>& to) { return Block(b.shape(), map_points(b.tuple(), to)); }

std::vector<Block> map_blocks(const std::vector<Block>& blocks, const std::map<Point, Point>& to) {
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(map_block(b, to));
  return out;
}

std::set<Point> as_set(const std::vector<Point>& pts) { return {pts.begin(), pts.end()}; }

Point weighted(const Point& x, int k, int w) { return w == 1 ? x : Point(x.label() + "_" + std::to_string(k)); }

bool complete_shape(GraphShape s) {
  const int k = s.vertex_count();
  return s.edge_count() == k * (k - 1) / 2;
}

}  // namespace

ResolvableDesign relabel(const ResolvableDesign& d, const std::map<Point, Point>& to) {
  ResolvableDesign out;
  out.shape = d.shape;
  out.lambda = d.lambda;
  out.points = map_points(d.points, to);
  out.classes.reserve(d.classes.size());
  for (const auto& c : d.classes) {
    ParallelClass pc;
    pc.blocks = map_blocks(c.blocks, to);
    pc.missing = map_points(c.missing, to);
    sort_points(pc.missing);
    out.classes.push_back(std::move(pc));
  }
  return out;
}

GroupedDesign relabel(const GroupedDesign& g, const std::map<Point, Point>& to) {
  GroupedDesign out;
  out.design = relabel(g.design, to);
  out.kind = g.kind;
  for (const auto& grp : g.groups) {
    auto m = map_points(grp, to);
    sort_points(m);
    out.groups.push_back(std::move(m));
  }
  out.hole = map_points(g.hole, to);
  sort_points(out.hole);
  return out;
}

ResolvableDesign place(const ResolvableDesign& d, const std::vector<Point>& targets) {
  if (targets.size() != d.points.size()) {
    throw FillMismatch("cannot place a design of order " + std::to_string(d.points.size()) + " on " +
                       std::to_string(targets.size()) + " points");
  }
  std::map<Point, Point> to;
  for (std::size_t k = 0; k < targets.size(); ++k) to.emplace(d.points[k], targets[k]);
  return relabel(d, to);
}

AnyDesign relabel_to_integers(const AnyDesign& d) {
  auto pts = base_design(d).points;
  sort_points(pts);
  std::map<Point, Point> to;
  for (std::size_t k = 0; k < pts.size(); ++k) to.emplace(pts[k], Point::integer(static_cast<long long>(k)));
  return std::visit(
      [&](const auto& x) -> AnyDesign {
        auto out = relabel(x, to);
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ResolvableDesign>) {
          sort_points(out.points);
        } else {
          sort_points(out.design.points);
        }
        return out;
      },
      d);
}

ResolvableDesign combine(const std::vector<ResolvableDesign>& parts) {
  if (parts.empty()) throw IndexMismatch("nothing to combine");
  ResolvableDesign out = parts.front();
  const auto pts = as_set(out.points);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (!(p.shape == out.shape)) throw IndexMismatch("combined designs have different shapes");
    if (as_set(p.points) != pts) throw IndexMismatch("combined designs live on different point sets");
    out.lambda += p.lambda;
    out.classes.insert(out.classes.end(), p.classes.begin(), p.classes.end());
  }
  return out;
}

ResolvableDesign repeat_classes(const ResolvableDesign& d, int mu) {
  if (mu < 1) throw Error("repeat count must be positive");
  ResolvableDesign out = d;
  out.lambda = d.lambda * mu;
  out.classes.clear();
  out.classes.reserve(d.classes.size() * mu);
  for (int r = 0; r < mu; ++r) out.classes.insert(out.classes.end(), d.classes.begin(), d.classes.end());
  return out;
}

GroupedDesign repeat_classes(const GroupedDesign& g, int mu) {
  GroupedDesign out = g;
  out.design = repeat_classes(g.design, mu);
  return out;
}

GroupedDesign as_singleton_rgdd(const ResolvableDesign& d) {
  GroupedDesign g;
  g.design = d;
  g.kind = GroupedKind::RGDD;
  for (const auto& p : d.points) g.groups.push_back({p});
  return g;
}

ResolvableDesign drop_singleton_groups(const GroupedDesign& g) {
  for (const auto& grp : g.groups) {
    if (grp.size() != 1) throw Error("group of size " + std::to_string(grp.size()) + " is not a singleton");
  }
  if (!g.hole.empty()) throw Error("design has a hole");
  return g.design;
}

ResolvableDesign fill_sets(const ResolvableDesign& host, const std::vector<std::vector<Point>>& sets,
                           const std::vector<ResolvableDesign>& fillers) {
  if (sets.size() != fillers.size()) throw FillMismatch("one filler per set is required");
  const auto host_points = as_set(host.points);
  std::set<Point> used;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto& f = fillers[k];
    if (!(f.shape == host.shape)) throw FillMismatch("filler shape differs from host shape");
    if (f.lambda != host.lambda) {
      throw IndexMismatch("filler index " + std::to_string(f.lambda) + " differs from host index " + std::to_string(host.lambda));
    }
    if (f.order() != static_cast<int>(sets[k].size())) {
      throw FillMismatch("filler of order " + std::to_string(f.order()) + " for a set of size " + std::to_string(sets[k].size()));
    }
    if (f.classes.size() != fillers.front().classes.size()) throw FillMismatch("fillers have different class counts");
    for (const auto& p : sets[k]) {
      if (!host_points.count(p)) throw FillMismatch("set point " + p.label() + " is not a host point");
      if (!used.insert(p).second) throw FillMismatch("filled sets overlap at " + p.label());
    }
  }
  std::vector<ResolvableDesign> placed;
  placed.reserve(fillers.size());
  for (std::size_t k = 0; k < sets.size(); ++k) placed.push_back(place(fillers[k], sets[k]));

  ResolvableDesign out = host;
  const std::size_t n = fillers.empty() ? 0 : fillers.front().classes.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Block> blocks;
    for (const auto& p : placed) blocks.insert(blocks.end(), p.classes[i].blocks.begin(), p.classes[i].blocks.end());
    out.classes.push_back(make_class(std::move(blocks), host.points, static_cast<long>(i)));
  }
  return out;
}

ResolvableDesign fill_groups(const GroupedDesign& host, const ResolvableDesign& filler) {
  std::vector<ResolvableDesign> fillers(host.groups.size(), filler);
  return checked(fill_sets(host.design, host.groups, fillers), "fill_groups");
}

GroupedDesign fill_groups_except(const GroupedDesign& host, const ResolvableDesign& filler, std::size_t hole_group) {
  if (hole_group >= host.groups.size()) throw FillMismatch("hole group index out of range");
  std::vector<std::vector<Point>> sets;
  for (std::size_t k = 0; k < host.groups.size(); ++k) {
    if (k != hole_group) sets.push_back(host.groups[k]);
  }
  std::vector<ResolvableDesign> fillers(sets.size(), filler);
  GroupedDesign out;
  out.design = fill_sets(host.design, sets, fillers);
  out.kind = GroupedKind::IRD;
  out.hole = host.groups[hole_group];
  return checked(out, "fill_groups_except");
}

GroupedDesign weight_and_replace(const AnyDesign& master, int w, const GroupedDesign& ingredient) {
  if (w < 1) throw ReplaceMismatch("weight must be positive");
  const ResolvableDesign& md = base_design(master);
  const auto* mg = std::get_if<GroupedDesign>(&master);
  if (mg && mg->kind == GroupedKind::IRD) throw ReplaceMismatch("an IRD cannot serve as master");
  if (!complete_shape(md.shape)) throw ReplaceMismatch("master blocks must be complete graphs, got " + std::string(md.shape.name()));
  const int k = md.shape.vertex_count();
  if (static_cast<int>(ingredient.groups.size()) != k) {
    throw ReplaceMismatch("ingredient has " + std::to_string(ingredient.groups.size()) + " groups, master blocks have " +
                          std::to_string(k) + " points");
  }
  for (const auto& grp : ingredient.groups) {
    if (static_cast<int>(grp.size()) != w) throw ReplaceMismatch("ingredient group size differs from the weight");
  }
  for (const auto& c : ingredient.design.classes) {
    if (!c.is_full()) throw ReplaceMismatch("ingredient classes must be full");
  }

  GroupedDesign out;
  out.design.shape = ingredient.design.shape;
  out.design.lambda = md.lambda * ingredient.design.lambda;
  for (const auto& x : md.points) {
    for (int m = 0; m < w; ++m) out.design.points.push_back(weighted(x, m, w));
  }
  auto expand = [w](const std::vector<Point>& xs) {
    std::vector<Point> g;
    for (const auto& x : xs) {
      for (int m = 0; m < w; ++m) g.push_back(weighted(x, m, w));
    }
    return g;
  };
  if (mg) {
    for (const auto& grp : mg->groups) out.groups.push_back(expand(grp));
  } else {
    for (const auto& x : md.points) out.groups.push_back(expand({x}));
  }

  const auto& ic = ingredient.design.classes;
  for (std::size_t ci = 0; ci < md.classes.size(); ++ci) {
    std::vector<ResolvableDesign> placed;
    for (const auto& b : md.classes[ci].blocks) {
      std::map<Point, Point> to;
      for (int j = 0; j < k; ++j) {
        for (int m = 0; m < w; ++m) to.emplace(ingredient.groups[j][m], weighted(b[j], m, w));
      }
      placed.push_back(relabel(ingredient.design, to));
    }
    for (std::size_t i = 0; i < ic.size(); ++i) {
      std::vector<Block> blocks;
      for (const auto& p : placed) blocks.insert(blocks.end(), p.classes[i].blocks.begin(), p.classes[i].blocks.end());
      out.design.classes.push_back(make_class(std::move(blocks), out.design.points, static_cast<long>(ci)));
    }
  }
  const bool all_full = std::all_of(out.design.classes.begin(), out.design.classes.end(),
                                    [](const ParallelClass& c) { return c.is_full(); });
  if (mg && mg->kind == GroupedKind::Frame) {
    out.kind = GroupedKind::Frame;
  } else {
    out.kind = all_full ? GroupedKind::RGDD : GroupedKind::GDD;
  }
  return checked(out, "weight_and_replace");
}

ResolvableDesign frame_fill_with_hole(const GroupedDesign& frame, const GroupedDesign& ird,
                                      const ResolvableDesign& hole_filler, int copies) {
  if (frame.kind != GroupedKind::Frame) throw CombineMismatch("first argument is not a frame");
  if (frame.groups.size() < 2) throw CombineMismatch("a frame needs at least two groups");
  if (ird.kind != GroupedKind::IRD || ird.hole.empty()) throw CombineMismatch("second argument is not an IRD with a hole");
  if (copies < 1) throw CombineMismatch("copies must be positive");
  const auto shape = frame.design.shape;
  if (!(ird.design.shape == shape) || !(hole_filler.shape == shape)) throw CombineMismatch("ingredient shapes differ");
  if (frame.design.lambda * copies != ird.design.lambda || hole_filler.lambda != ird.design.lambda) {
    throw IndexMismatch("frame index " + std::to_string(frame.design.lambda) + " x " + std::to_string(copies) +
                        ", IRD index " + std::to_string(ird.design.lambda) + ", hole filler index " +
                        std::to_string(hole_filler.lambda) + " do not agree");
  }
  const std::size_t h = ird.hole.size();
  const auto hole_set = as_set(ird.hole);
  std::vector<Point> ird_outer;
  for (const auto& p : ird.design.points) {
    if (!hole_set.count(p)) ird_outer.push_back(p);
  }
  if (static_cast<std::size_t>(hole_filler.order()) != h) throw CombineMismatch("hole filler order differs from the hole size");

  std::vector<Point> hole;
  const auto frame_points = as_set(frame.design.points);
  for (std::size_t k = 1; k <= h; ++k) {
    hole.push_back(Point::infinity(static_cast<int>(k)));
    if (frame_points.count(hole.back())) throw CombineMismatch("hole label " + hole.back().label() + " already used by the frame");
  }

  std::vector<std::size_t> full_index, partial_index;
  for (std::size_t ci = 0; ci < ird.design.classes.size(); ++ci) {
    (ird.design.classes[ci].is_full() ? full_index : partial_index).push_back(ci);
  }
  if (partial_index.size() != hole_filler.classes.size()) {
    throw CombineMismatch("IRD has " + std::to_string(partial_index.size()) + " partial classes but the hole filler has " +
                          std::to_string(hole_filler.classes.size()) + " classes");
  }

  std::vector<std::set<Point>> group_sets;
  for (const auto& g : frame.groups) group_sets.push_back(as_set(g));
  std::vector<std::vector<const ParallelClass*>> missing_group(frame.groups.size());
  for (const auto& c : frame.design.classes) {
    auto it = std::find(group_sets.begin(), group_sets.end(), as_set(c.missing));
    if (it == group_sets.end()) throw CombineMismatch("frame class does not miss exactly one group");
    missing_group[it - group_sets.begin()].push_back(&c);
  }

  ResolvableDesign out;
  out.shape = shape;
  out.lambda = ird.design.lambda;
  out.points = frame.design.points;
  out.points.insert(out.points.end(), hole.begin(), hole.end());

  std::vector<ResolvableDesign> placed_irds;
  for (std::size_t gi = 0; gi < frame.groups.size(); ++gi) {
    const auto& grp = frame.groups[gi];
    if (grp.size() != ird_outer.size()) {
      throw CombineMismatch("group of size " + std::to_string(grp.size()) + " but the IRD has " + std::to_string(ird_outer.size()) +
                            " points outside its hole");
    }
    const auto& partial = missing_group[gi];
    if (partial.size() * copies != full_index.size()) {
      throw CombineMismatch("group " + std::to_string(gi) + ": " + std::to_string(partial.size()) + " frame classes x " +
                            std::to_string(copies) + " copies vs " + std::to_string(full_index.size()) + " IRD full classes");
    }
    std::map<Point, Point> to;
    for (std::size_t k = 0; k < grp.size(); ++k) to.emplace(ird_outer[k], grp[k]);
    for (std::size_t k = 0; k < h; ++k) to.emplace(ird.hole[k], hole[k]);
    placed_irds.push_back(relabel(ird.design, to));
    const auto& placed = placed_irds.back();

    std::size_t f = 0;
    for (int rep = 0; rep < copies; ++rep) {
      for (const auto* fc : partial) {
        const auto& full = placed.classes[full_index[f++]];
        std::vector<Block> blocks = fc->blocks;
        blocks.insert(blocks.end(), full.blocks.begin(), full.blocks.end());
        out.classes.push_back(make_class(std::move(blocks), out.points, static_cast<long>(gi)));
      }
    }
  }

  const auto filler = place(hole_filler, hole);
  for (std::size_t pk = 0; pk < partial_index.size(); ++pk) {
    std::vector<Block> blocks = filler.classes[pk].blocks;
    for (const auto& placed : placed_irds) {
      const auto& pc = placed.classes[partial_index[pk]];
      blocks.insert(blocks.end(), pc.blocks.begin(), pc.blocks.end());
    }
    out.classes.push_back(make_class(std::move(blocks), out.points, static_cast<long>(pk)));
  }
  return checked(out, "frame_fill_with_hole");
}

std::array<std::vector<Edge>, 5> circulant_one_factors(int v) {
  if (v < 8 || v % 4 != 0) throw Error("the circulant 1-factorization needs v divisible by 4 and v >= 8");
  const int half = v / 2;
  const int step = half - 1;
  if (std::gcd(step, v) != 1) throw InternalInconsistency("difference v/2 - 1 does not generate Z_v");
  auto pt = [](long long x) { return Point::integer(x); };
  std::array<std::vector<Edge>, 5> f;
  for (int i = 0; i < v; ++i) f[i % 2].push_back(make_edge(pt(i), pt((i + 1) % v)));
  for (int j = 0; j < v; ++j) {
    const long long a = static_cast<long long>(j) * step % v;
    const long long b = (a + step) % v;
    f[2 + j % 2].push_back(make_edge(pt(a), pt(b)));
  }
  for (int i = 0; i < half; ++i) f[4].push_back(make_edge(pt(i), pt(i + half)));
  for (auto& m : f) std::sort(m.begin(), m.end());
  return f;
}

std::vector<ParallelClass> one_factor_final_classes(int v) {
  if (v < 8 || v % 4 != 0) throw Error("the final classes need v divisible by 4 and v >= 8");
  const int half = v / 2;
  const auto pts = integer_points(v);
  std::vector<ParallelClass> out;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<Block> blocks;
    for (int i = parity; i < half; i += 2) {
      blocks.emplace_back(GraphShape(ShapeId::K4E),
                          std::vector<Point>{Point::integer(i), Point::integer(half + i), Point::integer((half + 1 + i) % v),
                                             Point::integer((1 + i) % v)});
    }
    out.push_back(make_class(std::move(blocks), pts, parity));
  }
  return out;
}

ResolvableDesign one_factor_construction(int v, const GroupedDesign& rgdd) {
  const auto factors = circulant_one_factors(v);
  if (!(rgdd.design.shape == GraphShape(ShapeId::K4E))) throw ReplaceMismatch("the RGDD must consist of K4-e blocks");
  if (rgdd.design.lambda != 1) throw IndexMismatch("the RGDD must have index 1");
  if (static_cast<int>(rgdd.groups.size()) != v / 2 ||
      std::any_of(rgdd.groups.begin(), rgdd.groups.end(), [](const auto& g) { return g.size() != 2; })) {
    throw ReplaceMismatch("the RGDD must have type 2^" + std::to_string(v / 2));
  }
  ResolvableDesign out;
  out.shape = ShapeId::K4E;
  out.lambda = 5;
  out.points = integer_points(v);
  for (const auto& f : factors) {
    std::map<Point, Point> to;
    for (std::size_t g = 0; g < f.size(); ++g) {
      to.emplace(rgdd.groups[g][0], f[g].first);
      to.emplace(rgdd.groups[g][1], f[g].second);
    }
    const auto placed = relabel(rgdd.design, to);
    out.classes.insert(out.classes.end(), placed.classes.begin(), placed.classes.end());
  }
  for (auto& c : one_factor_final_classes(v)) out.classes.push_back(std::move(c));
  return checked(out, "one_factor_construction");
}

}  // namespace rdk
