#include "rdk/admissibility.hpp"

#include <algorithm>

#include "rdk/errors.hpp"

namespace rdk {

namespace {

using R = SpectrumRule::Require;

bool applies(const SpectrumRule& rule, long long v) {
  if (rule.v_modulus == 0) return v == rule.v_residues.front();
  return std::find(rule.v_residues.begin(), rule.v_residues.end(), v % rule.v_modulus) != rule.v_residues.end();
}

bool residue_in(long long x, long long m, const std::vector<long long>& residues) {
  return std::find(residues.begin(), residues.end(), x % m) != residues.end();
}

}  // namespace

std::string_view status_name(Status s) {
  switch (s) {
    case Status::NecessaryFail: return "NECESSARY_FAIL";
    case Status::Admissible: return "ADMISSIBLE";
    case Status::KnownNonexistent: return "KNOWN_NONEXISTENT";
  }
  return "?";
}

std::vector<Condition> AdmissibilityVerdict::violations() const {
  std::vector<Condition> out;
  std::copy_if(reasons.begin(), reasons.end(), std::back_inserter(out), [](const Condition& c) { return !c.satisfied; });
  return out;
}

const std::vector<SpectrumRule>& spectrum_table() {
  // clang-format off
  static const std::vector<SpectrumRule> table{
      {ShapeId::K2, 1, {0}, R::VMultiple, 2, {}, "v = 0 (mod 2)", ""},
      {ShapeId::P3, 1, {0}, R::VMultiple, 3, {}, "v = 0 (mod 3)", ""},
      {ShapeId::P3, 1, {0}, R::LambdaTimesVMinusOneMultiple, 4, {}, "lambda(v-1) = 0 (mod 4)", ""},
      {ShapeId::K3, 1, {0}, R::VMultiple, 3, {}, "v = 0 (mod 3)", ""},
      {ShapeId::K3, 6, {0}, R::LambdaMultiple, 2, {}, "v = 0 (mod 6) => lambda = 0 (mod 2)", ""},
      {ShapeId::K3, 0, {6}, R::NonexistentWhenLambda, 4, {2}, "v = 6 => lambda != 2 (mod 4)",
       "the v = 6 exclusion applies to lambda = 2 (mod 4) only; the complementary-pair "
       "design resolves 4K6 into 10 classes"},
      {ShapeId::P4, 1, {0}, R::VMultiple, 4, {}, "v = 0 (mod 4)", ""},
      {ShapeId::P4, 1, {0}, R::LambdaTimesVMinusOneMultiple, 3, {}, "4 lambda(v-1) = 0 (mod 6)", ""},
      {ShapeId::C4, 1, {0}, R::VMultiple, 4, {}, "v = 0 (mod 4)", ""},
      {ShapeId::C4, 1, {0}, R::LambdaMultiple, 2, {}, "lambda = 0 (mod 2)", ""},
      {ShapeId::Kite, 1, {0}, R::VMultiple, 4, {}, "v = 0 (mod 4)", ""},
      {ShapeId::Kite, 1, {0}, R::LambdaMultiple, 2, {}, "lambda = 0 (mod 2)", ""},
      {ShapeId::K13, 1, {0}, R::VMultiple, 4, {}, "v = 0 (mod 4)", ""},
      {ShapeId::K13, 12, {4}, R::LambdaMultiple, 2, {}, "v = 4 (mod 12) => lambda = 0 (mod 2)", ""},
      {ShapeId::K13, 12, {0, 8}, R::LambdaMultiple, 6, {}, "v = 0,8 (mod 12) => lambda = 0 (mod 6)", ""},
      {ShapeId::K4E, 1, {0}, R::VMultiple, 4, {}, "v = 0 (mod 4)", ""},
      {ShapeId::K4E, 20, {0, 4, 8, 12}, R::LambdaMultiple, 5, {}, "v = 0,4,8,12 (mod 20) => lambda = 0 (mod 5)",
       "v = 16 (mod 20) admits every lambda; the index-1 statement is read as v = 16 (mod 20)"},
      {ShapeId::K4, 1, {0}, R::VMultiple, 4, {}, "v = 0 (mod 4)", ""},
      {ShapeId::K4, 12, {0, 8}, R::LambdaMultiple, 3, {}, "v = 0,8 (mod 12) => lambda = 0 (mod 3)", ""},
  };
  // clang-format on
  return table;
}

long long class_ratio(GraphShape shape, long long points, long long lambda) {
  const long long num = lambda * points * shape.vertex_count();
  const long long den = 2LL * shape.edge_count();
  if (num % den != 0) {
    throw InternalInconsistency("class count " + std::to_string(num) + "/" + std::to_string(den) + " for " +
                                std::string(shape.name()) + " is not an integer");
  }
  return num / den;
}

AdmissibilityVerdict divisibility_check(GraphShape shape, long long v, long long lambda) {
  const long long nv = shape.vertex_count();
  const long long ne = shape.edge_count();
  if (v < nv) throw TooSmall("order " + std::to_string(v) + " is below |V(G)| = " + std::to_string(nv));
  if (lambda < 1) throw TooSmall("index must be at least 1");

  AdmissibilityVerdict out;
  out.reasons.push_back({"v = 0 (mod " + std::to_string(nv) + ")", v % nv == 0});
  out.reasons.push_back({"lambda v(v-1) = 0 (mod " + std::to_string(2 * ne) + ")", (lambda * v * (v - 1)) % (2 * ne) == 0});
  const bool integral = (lambda * (v - 1) * nv) % (2 * ne) == 0;
  out.reasons.push_back({"lambda (v-1)|V(G)| = 0 (mod " + std::to_string(2 * ne) + ")", integral});
  const bool ok = std::all_of(out.reasons.begin(), out.reasons.end(), [](const Condition& c) { return c.satisfied; });
  out.status = ok ? Status::Admissible : Status::NecessaryFail;
  if (integral) out.full_class_count = lambda * (v - 1) * nv / (2 * ne);
  return out;
}

AdmissibilityVerdict spectrum_verdict(GraphShape shape, long long v, long long lambda) {
  AdmissibilityVerdict out = divisibility_check(shape, v, lambda);
  bool violated = out.status != Status::Admissible;
  bool excluded = false;
  for (const auto& rule : spectrum_table()) {
    if (rule.shape != shape.id() || !applies(rule, v)) continue;
    bool ok = true;
    switch (rule.require) {
      case R::VMultiple: ok = v % rule.modulus == 0; break;
      case R::LambdaMultiple: ok = lambda % rule.modulus == 0; break;
      case R::LambdaTimesVMinusOneMultiple: ok = (lambda * (v - 1)) % rule.modulus == 0; break;
      case R::NonexistentWhenLambda:
        ok = !residue_in(lambda, rule.modulus, rule.lambda_residues);
        excluded = excluded || !ok;
        break;
    }
    out.reasons.push_back({rule.text, ok});
    if (!ok && rule.require != R::NonexistentWhenLambda) violated = true;
  }
  if (violated) {
    out.status = Status::NecessaryFail;
  } else if (excluded) {
    out.status = Status::KnownNonexistent;
  } else {
    out.status = Status::Admissible;
    out.existence_known = true;
  }
  return out;
}

long long class_count(GraphShape shape, long long v, long long lambda) { return class_ratio(shape, v - 1, lambda); }

}  // namespace rdk
