#include "rdk/verifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rdk/admissibility.hpp"
#include "rdk/errors.hpp"

namespace rdk {

namespace {

// Dense symmetric pair counter over the design's point indices.
class PairTable {
 public:
  explicit PairTable(std::size_t n) : n_(n), counts_(n * n, 0) {}
  void add(std::size_t a, std::size_t b) {
    ++counts_[a * n_ + b];
    ++counts_[b * n_ + a];
  }
  int at(std::size_t a, std::size_t b) const { return counts_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<int> counts_;
};

struct Indexed {
  std::vector<Point> points;
  std::unordered_map<std::string, std::size_t> index;
};

Indexed index_points(const std::vector<Point>& pts, VerificationReport& report) {
  Indexed ix;
  for (const auto& p : pts) {
    if (ix.index.emplace(p.label(), ix.points.size()).second) {
      ix.points.push_back(p);
    } else {
      report.class_defects.push_back({-1, "point " + p.label() + " listed twice"});
    }
  }
  return ix;
}

using Expected = std::function<int(std::size_t, std::size_t)>;

// Edge multiplicities against `expected`, plus the partition check of every class.
void check_edges_and_classes(const ResolvableDesign& d, const Indexed& ix, const Expected& expected,
                             VerificationReport& report) {
  const std::size_t n = ix.points.size();
  PairTable table(n);
  for (std::size_t ci = 0; ci < d.classes.size(); ++ci) {
    const auto& cls = d.classes[ci];
    std::vector<int> seen(n, 0);
    std::vector<bool> declared(n, false);
    for (const auto& b : cls.blocks) {
      if (b.shape() != d.shape) {
        report.class_defects.push_back({static_cast<long>(ci), "block " + format_block(b) + " has shape " +
                                                                   std::string(b.shape().name())});
      }
      bool known = true;
      for (const auto& p : b.tuple()) {
        auto it = ix.index.find(p.label());
        if (it == ix.index.end()) {
          report.class_defects.push_back({static_cast<long>(ci), "block " + format_block(b) + " uses unknown point " + p.label()});
          known = false;
        } else {
          ++seen[it->second];
        }
      }
      if (!known) continue;
      for (auto [x, y] : b.shape().edges()) table.add(ix.index.at(b[x].label()), ix.index.at(b[y].label()));
    }
    for (const auto& p : cls.missing) {
      auto it = ix.index.find(p.label());
      if (it == ix.index.end()) {
        report.class_defects.push_back({static_cast<long>(ci), "missing point " + p.label() + " is not a design point"});
      } else {
        declared[it->second] = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int covered = seen[i];
      const bool missing = declared[i];
      const std::string& label = ix.points[i].label();
      if (covered > 1) {
        report.class_defects.push_back({static_cast<long>(ci), "point " + label + " covered " + std::to_string(covered) + " times"});
      } else if (covered == 1 && missing) {
        report.class_defects.push_back({static_cast<long>(ci), "point " + label + " both covered and declared missing"});
      } else if (covered == 0 && !missing) {
        report.class_defects.push_back({static_cast<long>(ci), "point " + label + " not covered"});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int want = expected(i, j);
      const int got = table.at(i, j);
      if (want != got) report.edge_defects.push_back({make_edge(ix.points[i], ix.points[j]), want, got});
    }
  }
}

void count(VerificationReport& report, std::string what, long long expected, long long actual) {
  if (expected != actual) report.count_defects.push_back({std::move(what), expected, actual});
}

std::optional<long long> ratio_or_defect(VerificationReport& report, GraphShape shape, long long points, long long lambda,
                                         const std::string& what) {
  try {
    return class_ratio(shape, points, lambda);
  } catch (const InternalInconsistency&) {
    report.count_defects.push_back({what + " is not integral", 0, 0});
    return std::nullopt;
  }
}

void finish(VerificationReport& report) {
  report.valid = report.edge_defects.empty() && report.class_defects.empty() && report.count_defects.empty();
}

std::set<std::string> label_set(const std::vector<Point>& pts) {
  std::set<std::string> s;
  for (const auto& p : pts) s.insert(p.label());
  return s;
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  using nlohmann::json;
  json edges = json::array();
  for (const auto& e : edge_defects) {
    edges.push_back({{"pair", {e.pair.first.label(), e.pair.second.label()}}, {"expected", e.expected}, {"actual", e.actual}});
  }
  json classes = json::array();
  for (const auto& c : class_defects) classes.push_back({{"classIndex", c.class_index}, {"description", c.description}});
  json counts = json::array();
  for (const auto& c : count_defects) counts.push_back({{"what", c.what}, {"expected", c.expected}, {"actual", c.actual}});
  return {{"valid", valid}, {"edgeDefects", edges}, {"classDefects", classes}, {"countDefects", counts}};
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  out << (valid ? "valid" : "invalid") << " (" << edge_defects.size() << " edge, " << class_defects.size() << " class, "
      << count_defects.size() << " count defects)";
  if (!class_defects.empty()) out << "; first class defect: [" << class_defects.front().class_index << "] " << class_defects.front().description;
  if (!count_defects.empty()) {
    out << "; " << count_defects.front().what << " expected " << count_defects.front().expected << " got "
        << count_defects.front().actual;
  }
  if (!edge_defects.empty()) {
    const auto& e = edge_defects.front();
    out << "; pair {" << e.pair.first.label() << "," << e.pair.second.label() << "} expected " << e.expected << " got " << e.actual;
  }
  return out.str();
}

VerificationReport verify_design(const ResolvableDesign& d) {
  VerificationReport report;
  const Indexed ix = index_points(d.points, report);
  const int lambda = d.lambda;
  check_edges_and_classes(d, ix, [lambda](std::size_t, std::size_t) { return lambda; }, report);
  const bool all_full = std::all_of(d.classes.begin(), d.classes.end(), [](const ParallelClass& c) { return c.is_full(); });
  if (all_full && d.order() >= d.shape.vertex_count()) {
    if (auto r = ratio_or_defect(report, d.shape, d.order() - 1, lambda, "full class count")) {
      count(report, "full classes", *r, static_cast<long long>(d.classes.size()));
    }
  }
  finish(report);
  return report;
}

VerificationReport verify_grouped(const GroupedDesign& g) {
  VerificationReport report;
  const ResolvableDesign& d = g.design;
  const Indexed ix = index_points(d.points, report);
  const std::size_t n = ix.points.size();

  // group id per point; -1 for ungrouped (hole) points
  std::vector<int> group_of(n, -1);
  for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
    for (const auto& p : g.groups[gi]) {
      auto it = ix.index.find(p.label());
      if (it == ix.index.end()) {
        report.class_defects.push_back({-1, "group point " + p.label() + " is not a design point"});
      } else if (group_of[it->second] != -1) {
        report.class_defects.push_back({-1, "point " + p.label() + " lies in two groups"});
      } else {
        group_of[it->second] = static_cast<int>(gi);
      }
    }
  }
  std::vector<bool> in_hole(n, false);
  for (const auto& p : g.hole) {
    auto it = ix.index.find(p.label());
    if (it == ix.index.end()) {
      report.class_defects.push_back({-1, "hole point " + p.label() + " is not a design point"});
    } else {
      in_hole[it->second] = true;
      if (group_of[it->second] != -1) report.class_defects.push_back({-1, "hole point " + p.label() + " also lies in a group"});
    }
  }
  if (g.kind != GroupedKind::IRD) {
    for (std::size_t i = 0; i < n; ++i) {
      if (group_of[i] == -1) report.class_defects.push_back({-1, "point " + ix.points[i].label() + " lies in no group"});
    }
  }

  const int lambda = d.lambda;
  check_edges_and_classes(
      d, ix,
      [&](std::size_t a, std::size_t b) {
        if (group_of[a] != -1 && group_of[a] == group_of[b]) return 0;
        if (in_hole[a] && in_hole[b]) return 0;
        return lambda;
      },
      report);

  const long long v = static_cast<long long>(n);
  switch (g.kind) {
    case GroupedKind::GDD:
      break;
    case GroupedKind::RGDD: {
      for (std::size_t ci = 0; ci < d.classes.size(); ++ci) {
        if (!d.classes[ci].is_full()) report.class_defects.push_back({static_cast<long>(ci), "RGDD class is partial"});
      }
      const auto type = g.type();
      if (type.size() == 1) {
        if (auto r = ratio_or_defect(report, d.shape, v - type.front().first, lambda, "RGDD class count")) {
          count(report, "RGDD classes", *r, static_cast<long long>(d.classes.size()));
        }
      }
      break;
    }
    case GroupedKind::Frame: {
      std::vector<long long> per_group(g.groups.size(), 0);
      std::vector<std::set<std::string>> group_sets;
      for (const auto& grp : g.groups) group_sets.push_back(label_set(grp));
      for (std::size_t ci = 0; ci < d.classes.size(); ++ci) {
        const auto missing = label_set(d.classes[ci].missing);
        auto it = std::find(group_sets.begin(), group_sets.end(), missing);
        if (it == group_sets.end()) {
          report.class_defects.push_back({static_cast<long>(ci), "frame class does not miss exactly one group"});
        } else {
          ++per_group[it - group_sets.begin()];
        }
      }
      for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
        if (auto r = ratio_or_defect(report, d.shape, static_cast<long long>(g.groups[gi].size()), lambda, "frame class count")) {
          count(report, "classes missing group " + std::to_string(gi), *r, per_group[gi]);
        }
      }
      break;
    }
    case GroupedKind::IRD: {
      const auto hole = label_set(g.hole);
      if (hole.empty()) report.class_defects.push_back({-1, "IRD without a hole"});
      long long partial = 0, full = 0;
      for (std::size_t ci = 0; ci < d.classes.size(); ++ci) {
        if (d.classes[ci].is_full()) {
          ++full;
        } else if (label_set(d.classes[ci].missing) == hole) {
          ++partial;
        } else {
          report.class_defects.push_back({static_cast<long>(ci), "IRD class misses something other than the hole"});
        }
      }
      const long long h = static_cast<long long>(hole.size());
      if (h > 0) {
        if (auto r = ratio_or_defect(report, d.shape, h - 1, lambda, "IRD partial class count")) count(report, "IRD partial classes", *r, partial);
        if (auto r = ratio_or_defect(report, d.shape, v - h, lambda, "IRD full class count")) count(report, "IRD full classes", *r, full);
      }
      break;
    }
  }
  finish(report);
  return report;
}

VerificationReport verify(const AnyDesign& design) {
  if (const auto* g = std::get_if<GroupedDesign>(&design)) return verify_grouped(*g);
  return verify_design(std::get<ResolvableDesign>(design));
}

VerificationReport verify_packing(const ResolvableDesign& d, bool covering) {
  VerificationReport report;
  const Indexed ix = index_points(d.points, report);
  VerificationReport exact;
  const int lambda = d.lambda;
  check_edges_and_classes(d, ix, [lambda](std::size_t, std::size_t) { return lambda; }, exact);
  report.class_defects.insert(report.class_defects.end(), exact.class_defects.begin(), exact.class_defects.end());
  for (const auto& e : exact.edge_defects) {
    if (covering ? e.actual < e.expected : e.actual > e.expected) report.edge_defects.push_back(e);
  }
  finish(report);
  return report;
}

}  // namespace rdk
