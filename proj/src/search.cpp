#include "rdk/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>

#include "rdk/admissibility.hpp"
#include "rdk/development.hpp"
#include "rdk/errors.hpp"
#include "rdk/verifier.hpp"

namespace rdk {

std::string_view search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "FOUND";
    case SearchStatus::ExhaustedNonexistent: return "EXHAUSTED_NONEXISTENT";
    case SearchStatus::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

namespace {

// A labelling of the shape on k sorted points: perm[i] is the position of
// canonical vertex i, edges are pairs of positions.
struct Pattern {
  std::vector<int> perm;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;  // per position
};

std::vector<Pattern> patterns_of(GraphShape shape) {
  const int k = shape.vertex_count();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Pattern> out;
  std::vector<unsigned> seen;
  do {
    unsigned mask = 0;
    Pattern p;
    p.perm = perm;
    p.degree.assign(k, 0);
    for (auto [a, b] : shape.edges()) {
      int x = perm[a], y = perm[b];
      if (x > y) std::swap(x, y);
      mask |= 1u << (x * 4 + y);
      p.edges.emplace_back(x, y);
      ++p.degree[x];
      ++p.degree[y];
    }
    if (std::find(seen.begin(), seen.end(), mask) == seen.end()) {
      seen.push_back(mask);
      out.push_back(std::move(p));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

class Searcher {
 public:
  explicit Searcher(const SearchProblem& p) : prob_(p), shape_(p.shape), k_(p.shape.vertex_count()), v_(p.v) {
    patterns_ = patterns_of(shape_);
    res_.assign(v_ * v_, 0);
    group_of_.assign(v_, -1);
    for (std::size_t g = 0; g < p.groups.size(); ++g) {
      for (int x : p.groups[g]) group_of_[x] = static_cast<int>(g);
    }
    for (int a = 0; a < v_; ++a) {
      for (int b = 0; b < v_; ++b) {
        if (a != b && (group_of_[a] == -1 || group_of_[a] != group_of_[b])) res_[a * v_ + b] = p.lambda;
      }
    }
    deg_.assign(v_, 0);
    for (int a = 0; a < v_; ++a) {
      for (int b = 0; b < v_; ++b) deg_[a] += res_[a * v_ + b];
    }
    all_ = v_ == 64 ? ~0ULL : ((1ULL << v_) - 1);
    start_ = std::chrono::steady_clock::now();
  }

  SearchOutcome run() {
    SearchOutcome out;
    long long total = std::accumulate(deg_.begin(), deg_.end(), 0LL) / 2;
    const long long per_class = static_cast<long long>(shape_.edge_count()) * (v_ / k_);
    if (v_ % k_ != 0 || per_class == 0 || total % per_class != 0) {
      out.status = SearchStatus::ExhaustedNonexistent;
      out.note = "no whole number of full classes covers the pairs";
      return out;
    }
    r_ = static_cast<int>(total / per_class);
    build_reach();
    for (int x = 0; x < v_; ++x) {
      if (!reachable(r_, deg_[x])) {
        out.status = SearchStatus::ExhaustedNonexistent;
        out.note = "residual degree of point " + std::to_string(x) + " is not a sum of " + std::to_string(r_) + " shape degrees";
        return out;
      }
    }
    fix_first_ = prob_.symmetry_breaking && prob_.groups.empty();
    class_key_.assign(r_, 0);
    chosen_.assign(r_, {});
    try {
      const bool found = place(0, 0, 0);
      out.nodes = nodes_;
      out.status = found ? SearchStatus::Found : SearchStatus::ExhaustedNonexistent;
      if (found) out.design = assemble();
    } catch (const Budget&) {
      out.nodes = nodes_;
      out.status = SearchStatus::BudgetExceeded;
      out.note = "budget exhausted after " + std::to_string(nodes_) + " nodes";
    }
    return out;
  }

 private:
  struct Budget {};
  struct Chosen {
    std::vector<int> pts;
    int pattern;
  };

  void build_reach() {
    const auto ds = shape_.degree_set();
    const int maxd = ds.back();
    reach_.assign(r_ + 1, {});
    reach_[0] = {1};
    for (int m = 1; m <= r_; ++m) {
      reach_[m].assign(maxd * m + 1, 0);
      for (int s = 0; s < static_cast<int>(reach_[m - 1].size()); ++s) {
        if (!reach_[m - 1][s]) continue;
        for (int d : ds) reach_[m][s + d] = 1;
      }
    }
  }

  bool reachable(int m, int s) const {
    if (m < 0) return false;
    return s >= 0 && s < static_cast<int>(reach_[m].size()) && reach_[m][s];
  }

  void tick() {
    ++nodes_;
    if (nodes_ > prob_.budget.nodes) throw Budget{};
    if ((nodes_ & 0x3fff) == 0) {
      const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
      if (el.count() > prob_.budget.seconds) throw Budget{};
    }
  }

  // pairs can only be covered once per remaining class
  bool pairs_fit(int classes_left) const {
    if (prob_.lambda <= classes_left) return true;
    for (int i = 0; i < v_ * v_; ++i) {
      if (res_[i] > classes_left) return false;
    }
    return true;
  }

  // c: class index, covered: points of class c already used, depth: blocks placed in class c
  bool place(int c, std::uint64_t covered, int depth) {
    if (covered == all_) {
      if (c + 1 == r_) return true;
      if (!pairs_fit(r_ - c - 1)) return false;
      return place(c + 1, 0, 0);
    }
    const int p = __builtin_ctzll(~covered & all_);
    std::vector<int> free;
    for (std::uint64_t m = ~covered & all_ & ~(1ULL << p); m; m &= m - 1) free.push_back(__builtin_ctzll(m));
    const bool first_block = depth == 0;
    const bool fixed = fix_first_ && c == 0;
    int ordinal = -1;
    std::vector<int> pts(k_);
    pts[0] = p;
    std::vector<int> idx(k_ - 1);
    std::iota(idx.begin(), idx.end(), 0);
    const int n = static_cast<int>(free.size());
    if (n < k_ - 1) return false;
    while (true) {
      for (int i = 0; i < k_ - 1; ++i) pts[i + 1] = free[idx[i]];
      for (int pi = 0; pi < static_cast<int>(patterns_.size()); ++pi) {
        ++ordinal;
        if (first_block && c > (fix_first_ ? 1 : 0) && prob_.symmetry_breaking && ordinal < class_key_[c - 1]) continue;
        if (try_block(c, covered, depth, pts, pi, ordinal)) return true;
        if (fixed) return false;
      }
      // next combination of k-1 indices out of n
      int i = k_ - 2;
      while (i >= 0 && idx[i] == n - (k_ - 1) + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k_ - 1; ++j) idx[j] = idx[j - 1] + 1;
    }
    return false;
  }

  bool try_block(int c, std::uint64_t covered, int depth, const std::vector<int>& pts, int pi, int ordinal) {
    const Pattern& pat = patterns_[pi];
    for (auto [a, b] : pat.edges) {
      if (res_[pts[a] * v_ + pts[b]] == 0) return false;
    }
    tick();
    for (auto [a, b] : pat.edges) {
      --res_[pts[a] * v_ + pts[b]];
      --res_[pts[b] * v_ + pts[a]];
    }
    bool ok = true;
    for (int i = 0; i < k_; ++i) {
      deg_[pts[i]] -= pat.degree[i];
      if (!reachable(r_ - c - 1, deg_[pts[i]])) ok = false;
    }
    bool found = false;
    if (ok) {
      std::uint64_t cov = covered;
      for (int x : pts) cov |= 1ULL << x;
      if (depth == 0) class_key_[c] = ordinal;
      chosen_[c].push_back({pts, pi});
      found = place(c, cov, depth + 1);
      if (!found) chosen_[c].pop_back();
    }
    if (!found) {
      for (int i = 0; i < k_; ++i) deg_[pts[i]] += pat.degree[i];
      for (auto [a, b] : pat.edges) {
        ++res_[pts[a] * v_ + pts[b]];
        ++res_[pts[b] * v_ + pts[a]];
      }
    }
    return found;
  }

  AnyDesign assemble() const {
    ResolvableDesign d;
    d.shape = shape_;
    d.lambda = prob_.lambda;
    d.points = integer_points(v_);
    for (const auto& cls : chosen_) {
      std::vector<Block> blocks;
      for (const auto& ch : cls) {
        std::vector<Point> t(k_);
        const auto& perm = patterns_[ch.pattern].perm;
        for (int i = 0; i < k_; ++i) t[i] = Point::integer(ch.pts[perm[i]]);
        blocks.emplace_back(shape_, std::move(t));
      }
      d.classes.push_back(make_class(std::move(blocks), d.points));
    }
    if (prob_.groups.empty()) {
      const auto rep = verify_design(d);
      if (!rep.valid) throw InternalInconsistency("search produced an invalid design: " + rep.summary());
      return d;
    }
    GroupedDesign g;
    g.design = std::move(d);
    g.kind = GroupedKind::RGDD;
    for (const auto& grp : prob_.groups) {
      std::vector<Point> pts;
      for (int x : grp) pts.push_back(Point::integer(x));
      g.groups.push_back(std::move(pts));
    }
    const auto rep = verify_grouped(g);
    if (!rep.valid) throw InternalInconsistency("search produced an invalid RGDD: " + rep.summary());
    return g;
  }

  const SearchProblem& prob_;
  GraphShape shape_;
  int k_;
  int v_;
  int r_ = 0;
  bool fix_first_ = false;
  std::vector<Pattern> patterns_;
  std::vector<int> res_;
  std::vector<int> group_of_;
  std::vector<int> deg_;
  std::vector<std::vector<char>> reach_;
  std::vector<int> class_key_;
  std::vector<std::vector<Chosen>> chosen_;
  std::uint64_t all_ = 0;
  long long nodes_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SearchOutcome search(const SearchProblem& problem) {
  if (problem.v < 1 || problem.v > 64) throw Error("search handles 1 <= v <= 64, got " + std::to_string(problem.v));
  if (problem.lambda < 1) throw Error("lambda must be positive");
  if (problem.budget.nodes <= 0 || problem.budget.seconds <= 0) throw Error("search budget must be positive");
  if (!problem.groups.empty()) {
    std::vector<int> seen(problem.v, 0);
    for (const auto& g : problem.groups) {
      for (int x : g) {
        if (x < 0 || x >= problem.v || seen[x]++) throw Error("groups must partition 0..v-1");
      }
    }
    if (std::count(seen.begin(), seen.end(), 0) != 0) throw Error("groups must partition 0..v-1");
  }
  if (problem.prefilter && problem.groups.empty() && problem.v >= problem.shape.vertex_count()) {
    const auto verdict = divisibility_check(problem.shape, problem.v, problem.lambda);
    if (verdict.status != Status::Admissible) {
      SearchOutcome out;
      out.status = SearchStatus::ExhaustedNonexistent;
      out.note = "necessary conditions fail:";
      for (const auto& c : verdict.violations()) out.note += " " + c.text + ";";
      return out;
    }
  }
  Searcher s(problem);
  return s.run();
}

SearchProblem rgdd_problem(GraphShape shape, const std::vector<std::pair<int, int>>& type, int lambda) {
  SearchProblem p;
  p.shape = shape;
  p.lambda = lambda;
  int next = 0;
  for (auto [size, count] : type) {
    for (int c = 0; c < count; ++c) {
      std::vector<int> g(size);
      std::iota(g.begin(), g.end(), next);
      next += size;
      p.groups.push_back(std::move(g));
    }
  }
  p.v = next;
  return p;
}

SearchOutcome search_rgdd(GraphShape shape, const std::vector<std::pair<int, int>>& type, int lambda, const SearchBudget& budget) {
  auto p = rgdd_problem(shape, type, lambda);
  p.budget = budget;
  return search(p);
}

}  // namespace rdk

namespace rdk {

namespace {

class FrameStarter {
 public:
  FrameStarter(int m, long long node_limit) : m_(m), limit_(node_limit) {
    for (int a = 1; a < m; ++a) {
      pts_.push_back(a);
      pts_.push_back(a + m);
    }
    pts_.push_back(2 * m);
    pts_.push_back(2 * m + 1);
  }

  // Orbit of the pair under x -> x+1 on the first coordinate; -1 inside a group.
  int orbit(int p, int q) const {
    if (p > q) std::swap(p, q);
    if (p >= 2 * m_) return -1;
    if (q >= 2 * m_) return 4 * m_ + (q - 2 * m_) * 2 + p / m_;
    const int a = p % m_, i = p / m_, b = q % m_, j = q / m_;
    if (a == b) return -1;
    const int d = (b - a + m_) % m_;
    return std::min(d * 4 + i * 2 + j, ((m_ - d) % m_) * 4 + j * 2 + i);
  }

  bool run(int d1, int d2) {
    used_.assign(4 * m_ + 4, 0);
    used_[orbit(0, d1 + m_)] = used_[orbit(0, d2 + m_)] = 1;
    classes_.assign(2, {});
    return fill(0, std::vector<char>(2 * m_ + 2, 0));
  }

  long long nodes() const { return nodes_; }
  const std::vector<std::vector<std::pair<int, int>>>& classes() const { return classes_; }
  bool out_of_budget() const { return nodes_ > limit_; }

 private:
  bool fill(int cls, std::vector<char> taken) {
    if (++nodes_ > limit_) return false;
    int p = -1;
    for (int x : pts_) {
      if (!taken[x]) {
        p = x;
        break;
      }
    }
    if (p < 0) return cls == 1 || fill(1, std::vector<char>(2 * m_ + 2, 0));
    taken[p] = 1;
    for (int q : pts_) {
      if (taken[q]) continue;
      const int o = orbit(p, q);
      if (o < 0 || used_[o]) continue;
      used_[o] = 1;
      taken[q] = 1;
      classes_[cls].emplace_back(p, q);
      if (fill(cls, taken)) return true;
      classes_[cls].pop_back();
      taken[q] = 0;
      used_[o] = 0;
      if (out_of_budget()) return false;
    }
    return false;
  }

  int m_;
  long long limit_;
  long long nodes_ = 0;
  std::vector<int> pts_;
  std::vector<char> used_;
  std::vector<std::vector<std::pair<int, int>>> classes_;
};

}  // namespace

SearchOutcome search_k2_frame(int u, const SearchBudget& budget) {
  if (u < 4 || u % 2 != 0) throw Error("search_k2_frame needs an even u >= 4, got " + std::to_string(u));
  if (budget.nodes <= 0) throw Error("search budget must be positive");
  const int m = u - 1;
  SearchOutcome out;
  FrameStarter fs(m, budget.nodes);
  for (int d1 = 1; d1 < m; ++d1) {
    for (int d2 = d1 + 1; d2 < m; ++d2) {
      if (fs.orbit(0, d1 + m) == fs.orbit(0, d2 + m)) continue;
      if (!fs.run(d1, d2)) {
        if (fs.out_of_budget()) {
          out.nodes = fs.nodes();
          out.note = "budget exhausted after " + std::to_string(out.nodes) + " nodes";
          return out;
        }
        continue;
      }
      GroupedDesign g;
      g.kind = GroupedKind::Frame;
      g.design.shape = ShapeId::K2;
      g.design.points = integer_points(2 * m + 2);
      auto pt = [](int x) { return Point::integer(x); };
      for (int a = 0; a < m; ++a) g.groups.push_back({pt(a), pt(a + m)});
      g.groups.push_back({pt(2 * m), pt(2 * m + 1)});
      auto shift = [m](int x, int s) { return x >= 2 * m ? x : (x % m + s) % m + (x / m) * m; };
      for (int s = 0; s < m; ++s) {
        for (const auto& base : fs.classes()) {
          std::vector<Block> blocks;
          for (auto [p, q] : base) blocks.emplace_back(GraphShape(ShapeId::K2), std::vector<Point>{pt(shift(p, s)), pt(shift(q, s))});
          g.design.classes.push_back(make_class(std::move(blocks), g.design.points));
        }
      }
      for (int d : {d1, d2}) {
        std::vector<Block> blocks;
        for (int a = 0; a < m; ++a) blocks.emplace_back(GraphShape(ShapeId::K2), std::vector<Point>{pt(a), pt((a + d) % m + m)});
        g.design.classes.push_back(make_class(std::move(blocks), g.design.points));
      }
      const auto rep = verify_grouped(g);
      if (!rep.valid) throw InternalInconsistency("frame starter produced an invalid frame: " + rep.summary());
      out.status = SearchStatus::Found;
      out.design = std::move(g);
      out.nodes = fs.nodes();
      return out;
    }
  }
  out.status = SearchStatus::ExhaustedNonexistent;
  out.nodes = fs.nodes();
  out.note = "no cyclic starter over Z_" + std::to_string(m);
  return out;
}

}  // namespace rdk
