#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdk/model.hpp"

namespace rdk {

struct SearchBudget {
  long long nodes = 100'000'000;
  double seconds = 60.0;
};

/// A resolvable design (no groups) or RGDD (groups partition 0..v-1) on the
/// integer points 0..v-1. Within-group pairs are never covered.
struct SearchProblem {
  GraphShape shape;
  int v = 0;
  int lambda = 1;
  std::vector<std::vector<int>> groups;
  SearchBudget budget;
  /// Fix the first class (ungrouped problems only) and keep the remaining
  /// classes ordered by the block through point 0.
  bool symmetry_breaking = true;
  /// Answer from the divisibility conditions alone when they fail.
  bool prefilter = true;
};

enum class SearchStatus { Found, ExhaustedNonexistent, BudgetExceeded };
std::string_view search_status_name(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::BudgetExceeded;
  /// Set for Found: a ResolvableDesign, or a GroupedDesign (RGDD) for grouped problems.
  std::optional<AnyDesign> design;
  long long nodes = 0;
  std::string note;
};

/// Depth-first search, one parallel class at a time. Each block contains the
/// first point not yet covered by the current class; pair multiplicities are
/// tracked in a dense residual table and every point's residual degree must
/// stay a sum of shape degrees over the classes still to come. Found designs
/// are verified before they are returned. Requires v <= 64.
SearchOutcome search(const SearchProblem& problem);

/// Groups are consecutive runs of integers in the order of `type`.
SearchProblem rgdd_problem(GraphShape shape, const std::vector<std::pair<int, int>>& type, int lambda);
SearchOutcome search_rgdd(GraphShape shape, const std::vector<std::pair<int, int>>& type, int lambda,
                          const SearchBudget& budget = {});

/// K2-frame of type 2^u for even u >= 4 on Z_(u-1) x {0,1} plus a fixed group.
/// Point (a,i) is labelled a + (u-1) i and the fixed group is {2u-2, 2u-1}.
/// The classes missing the fixed group are the matchings (a,0)(a+d,1) for two
/// differences d; two base matchings missing group 0, one edge from every
/// other difference orbit, are found by backtracking and developed mod u-1.
/// Only the node budget applies.
SearchOutcome search_k2_frame(int u, const SearchBudget& budget = {});

}  // namespace rdk
