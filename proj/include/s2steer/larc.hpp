#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "s2steer/induced_fields.hpp"
#include "s2steer/linalg3.hpp"

namespace s2steer {

enum class LarcVerdict {
  SatisfiedSampled,    // rank 2 at every sampled point (evidence, not proof)
  Failed,              // a witness point of rank < 2 was found
  SatisfiedAlgebraic,  // skew pair with [A,B] != 0: rank 2 everywhere, proven
};

inline std::string to_string(LarcVerdict v) {
  switch (v) {
    case LarcVerdict::SatisfiedSampled: return "SATISFIED_SAMPLED";
    case LarcVerdict::Failed: return "FAILED";
    case LarcVerdict::SatisfiedAlgebraic: return "SATISFIED_ALGEBRAIC";
  }
  return "UNKNOWN";
}

inline bool is_satisfied(LarcVerdict v) { return v != LarcVerdict::Failed; }

struct LarcReport {
  int sample_count = 0;
  int min_rank = 2;
  std::vector<std::pair<UnitVector3, int>> deficient_points;
  LarcVerdict verdict = LarcVerdict::Failed;
  int depth = 2;
};

/// Deterministic near-uniform sample of the sphere (golden-angle lattice).
inline std::vector<UnitVector3> fibonacci_sphere(int n) {
  static const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<UnitVector3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    pts.emplace_back(Vector3{r * std::cos(phi), r * std::sin(phi), z}, 1e-12);
  }
  return pts;
}

inline std::vector<UnitVector3> axis_poles() {
  return {UnitVector3(1, 0, 0),  UnitVector3(-1, 0, 0), UnitVector3(0, 1, 0),
          UnitVector3(0, -1, 0), UnitVector3(0, 0, 1),  UnitVector3(0, 0, -1)};
}

namespace detail {
inline int rank_from_closure(const std::vector<Matrix3>& closure, const UnitVector3& s,
                             double tol) {
  std::vector<Vector3> cols;
  cols.reserve(closure.size());
  for (const Matrix3& m : closure) cols.push_back(induced_field(m, s));
  return rank_at_most_2(cols, tol);
}
}  // namespace detail

/// Rank of the system Lie algebra's evaluation at s, computed from the
/// depth-d bracket closure. Depth 2 already includes the first bracket.
inline int larc_at_point(const SystemPair& sys, const UnitVector3& s, int depth = 2,
                         double tol = kDefaultTol) {
  if (depth < 2) throw Error("larc_at_point requires depth >= 2");
  return detail::rank_from_closure(bracket_closure(sys.A, sys.B, depth), s, tol);
}

/// Sampled rank check over a Fibonacci lattice plus the six axis poles.
/// Sampling can refute the rank condition but never prove it, hence the
/// verdict is SATISFIED_SAMPLED at best.
inline LarcReport larc_global(const SystemPair& sys, int n_samples = 2000, int depth = 2,
                              double tol = kDefaultTol) {
  if (n_samples < 1) throw Error("larc_global requires n_samples >= 1");
  if (depth < 2) throw Error("larc_global requires depth >= 2");
  const std::vector<Matrix3> closure = bracket_closure(sys.A, sys.B, depth);

  std::vector<UnitVector3> pts = fibonacci_sphere(n_samples);
  for (const UnitVector3& p : axis_poles()) pts.push_back(p);

  LarcReport report;
  report.depth = depth;
  report.sample_count = static_cast<int>(pts.size());
  report.min_rank = 2;
  for (const UnitVector3& s : pts) {
    const int r = detail::rank_from_closure(closure, s, tol);
    if (r < 2) report.deficient_points.emplace_back(s, r);
    report.min_rank = std::min(report.min_rank, r);
  }
  report.verdict =
      report.deficient_points.empty() ? LarcVerdict::SatisfiedSampled : LarcVerdict::Failed;
  return report;
}

/// Exact criterion for skew pairs: the rank condition holds on the whole
/// sphere if and only if [A, B] != 0.
inline bool larc_skew(const SkewMatrix3& a, const SkewMatrix3& b, double tol = kDefaultTol) {
  if (!(axis_norm(a) > tol)) throw ZeroMatrix();
  return max_abs(matrix_bracket(skew_materialize(a), skew_materialize(b))) > tol;
}

/// Report-shaped wrapper around larc_skew. On failure the null axis of the
/// drift is a guaranteed witness (both fields and all brackets vanish there).
inline LarcReport larc_skew_report(const SkewMatrix3& a, const SkewMatrix3& b,
                                   double tol = kDefaultTol) {
  LarcReport report;
  report.depth = 2;
  if (larc_skew(a, b, tol)) {
    report.sample_count = 0;
    report.min_rank = 2;
    report.verdict = LarcVerdict::SatisfiedAlgebraic;
    return report;
  }
  const UnitVector3 axis(Vector3{a.p3, -a.p2, a.p1} / axis_norm(a), 1e-12);
  const SystemPair sys = SystemPair::make(skew_materialize(a), skew_materialize(b));
  const int r = larc_at_point(sys, axis, 2, tol);
  report.sample_count = 1;
  report.min_rank = r;
  report.deficient_points.emplace_back(axis, r);
  report.verdict = LarcVerdict::Failed;
  return report;
}

}  // namespace s2steer
