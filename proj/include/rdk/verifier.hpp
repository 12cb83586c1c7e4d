#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rdk/model.hpp"

namespace rdk {

struct EdgeDefect {
  Edge pair;
  int expected = 0;
  int actual = 0;
};

struct ClassDefect {
  /// -1 for defects of the point set or grouping rather than of one class.
  long class_index = -1;
  std::string description;
};

struct CountDefect {
  std::string what;
  long long expected = 0;
  long long actual = 0;
};

/// Exhaustive defect listing; valid iff every list is empty.
struct VerificationReport {
  bool valid = true;
  std::vector<EdgeDefect> edge_defects;
  std::vector<ClassDefect> class_defects;
  std::vector<CountDefect> count_defects;

  nlohmann::json to_json() const;
  /// One-line digest for diagnostics.
  std::string summary() const;
};

/// Pair multiplicities equal lambda, every class partitions points minus its
/// missing set, and the full-class count matches when all classes are full.
VerificationReport verify_design(const ResolvableDesign& design);

/// Group/hole-aware check for GDD, RGDD, frame and IRD objects.
VerificationReport verify_grouped(const GroupedDesign& design);

VerificationReport verify(const AnyDesign& design);

/// Resolvable packing (every pair at most lambda times) or covering (at least).
VerificationReport verify_packing(const ResolvableDesign& design, bool covering);

}  // namespace rdk
