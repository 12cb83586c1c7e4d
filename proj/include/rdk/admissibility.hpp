#pragma once

#include <string>
#include <vector>

#include "rdk/model.hpp"

namespace rdk {

enum class Status { NecessaryFail, Admissible, KnownNonexistent };
std::string_view status_name(Status s);

struct Condition {
  std::string text;
  bool satisfied = false;
};

struct AdmissibilityVerdict {
  Status status = Status::NecessaryFail;
  /// Every condition that was evaluated, violated ones with satisfied == false.
  std::vector<Condition> reasons;
  /// r = lambda (v-1) |V(G)| / (2 |E(G)|); meaningful only when admissible.
  long long full_class_count = 0;
  /// True when a known existence result covers the parameters, not just
  /// the necessary conditions.
  bool existence_known = false;

  std::vector<Condition> violations() const;
};

/// The three divisibility conditions every resolvable (lambda K_v, G)-design
/// satisfies. All violations are reported. Throws TooSmall if v < |V(G)|.
AdmissibilityVerdict divisibility_check(GraphShape shape, long long v, long long lambda);

/// divisibility_check refined by the per-shape spectrum table.
AdmissibilityVerdict spectrum_verdict(GraphShape shape, long long v, long long lambda);

/// Number of parallel classes of a resolvable (lambda K_v, G)-design.
/// Throws InternalInconsistency when the count is not integral.
long long class_count(GraphShape shape, long long v, long long lambda);

/// lambda * points * |V(G)| / (2 |E(G)|), the class-count ratio used for
/// frames (points = g), IRD partial classes (points = h - 1), IRD full
/// classes (points = v) and RGDDs (points = v - g).
long long class_ratio(GraphShape shape, long long points, long long lambda);

/// One row of the spectrum table, exposed for auditing and the CLI.
struct SpectrumRule {
  ShapeId shape;
  /// Applies when v mod v_modulus is in v_residues (v_modulus 0: v == v_residues[0]).
  long long v_modulus;
  std::vector<long long> v_residues;
  enum class Require { VMultiple, LambdaMultiple, LambdaTimesVMinusOneMultiple, NonexistentWhenLambda } require;
  long long modulus;
  /// Only for NonexistentWhenLambda: the lambda residues (mod modulus) that are excluded.
  std::vector<long long> lambda_residues;
  std::string text;
  std::string note;
};
const std::vector<SpectrumRule>& spectrum_table();

}  // namespace rdk
