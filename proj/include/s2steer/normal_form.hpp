#pragma once

#include <cmath>

#include "s2steer/induced_fields.hpp"
#include "s2steer/linalg3.hpp"

namespace s2steer {

/// Result of conjugating a skew pair (A, B) into the working frame:
///   (PQ)^T A (PQ) = [[0, a, 0], [-a, 0, 0], [0, 0, 0]]
///   (PQ)^T B (PQ) = skew(b1, b2, b3)
/// P is the drift conjugator, Q an optional fixup rotation about the third
/// axis (identity when unused), and alpha = b2^2 + b3^2. For skew pairs,
/// alpha != 0 is equivalent to [A, B] != 0.
struct NormalFormData {
  double a = 0.0;
  Matrix3 P = Matrix3::identity();
  Matrix3 Q = Matrix3::identity();
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double alpha = 0.0;

  /// Maps working-frame coordinates to original coordinates.
  Matrix3 conjugator() const { return P * Q; }

  SkewMatrix3 drift() const { return {a, 0.0, 0.0}; }
  SkewMatrix3 control() const { return {b1, b2, b3}; }
};

struct DriftNormalForm {
  double a = 0.0;
  Matrix3 P = Matrix3::identity();
};

/// Orthogonal conjugation of a nonzero skew matrix to the canonical single
/// rotation block: P^T A P = [[0, a, 0], [-a, 0, 0], [0, 0, 0]] with
/// a = sqrt(a1^2 + a2^2 + a3^2) > 0.
inline DriftNormalForm skew_normal_form(const SkewMatrix3& s, double tol = kDefaultTol) {
  const double a1 = s.p1, a2 = s.p2, a3 = s.p3;
  const double a = axis_norm(s);
  if (!(a > tol)) throw ZeroMatrix();

  const double planar = a2 * a2 + a3 * a3;
  if (planar <= tol * tol) {
    // Already a single block about the third axis. A half turn about the
    // first axis repairs the sign when a1 < 0, keeping a > 0.
    if (a1 >= 0.0) return {a, Matrix3::identity()};
    return {a, Matrix3{{1, 0, 0, 0, -1, 0, 0, 0, -1}}};
  }

  const double sq = std::sqrt(planar);
  const Vector3 v1 = Vector3{-a1 * a3, a1 * a2, planar} / (a * sq);
  const Vector3 v2 = Vector3{a2, a3, 0.0} / -sq;
  const Vector3 v3 = Vector3{a3, -a2, a1} / a;  // null axis
  return {a, Matrix3::from_columns(v1, v2, v3)};
}

/// Conjugates the whole pair into the working frame (Q stays identity here).
inline NormalFormData reduce_system(const SkewMatrix3& a, const SkewMatrix3& b,
                                    double tol = kDefaultTol) {
  const DriftNormalForm dn = skew_normal_form(a, tol);
  const Matrix3 bt = transpose(dn.P) * skew_materialize(b) * dn.P;
  // Conjugation by an orthogonal P preserves skewness up to roundoff; project.
  const double b1 = (bt(0, 1) - bt(1, 0)) / 2;
  const double b2 = (bt(0, 2) - bt(2, 0)) / 2;
  const double b3 = (bt(1, 2) - bt(2, 1)) / 2;
  NormalFormData nf;
  nf.a = dn.a;
  nf.P = dn.P;
  nf.b1 = b1;
  nf.b2 = b2;
  nf.b3 = b3;
  nf.alpha = b2 * b2 + b3 * b3;
  return nf;
}

/// Residual of the conjugation identity [J(A), B~] = P^T [A, B] P for a
/// reduced pair; zero up to roundoff whenever the reduction is consistent.
inline double conjugated_bracket_residual(const SkewMatrix3& a, const SkewMatrix3& b,
                                          const NormalFormData& nf) {
  const Matrix3 lhs = matrix_bracket(skew_materialize(nf.drift()), skew_materialize(nf.control()));
  const Matrix3 rhs = transpose(nf.P) * matrix_bracket(skew_materialize(a), skew_materialize(b)) * nf.P;
  return max_abs(lhs - rhs);
}

/// The closed-form trajectory machinery divides by b3, which the reduction
/// does not control. When |b3| <= tol, conjugate the control block by a
/// quarter turn about the third axis (which commutes with the canonical
/// drift): (b1, b2, b3) -> (b1, b3, -b2). Since alpha > tol, the new b3 is
/// bounded away from zero.
inline NormalFormData ensure_b3_nonzero(const NormalFormData& nf, double tol = kDefaultTol) {
  if (!(nf.alpha > tol)) throw BracketVanishes();
  if (std::abs(nf.b3) > tol) return nf;

  const Matrix3 q{{0, -1, 0, 1, 0, 0, 0, 0, 1}};  // quarter turn, exact entries
  const Matrix3 bq = transpose(q) * skew_materialize(nf.control()) * q;
  NormalFormData out = nf;
  out.Q = q;
  out.b1 = (bq(0, 1) - bq(1, 0)) / 2;
  out.b2 = (bq(0, 2) - bq(2, 0)) / 2;
  out.b3 = (bq(1, 2) - bq(2, 1)) / 2;
  out.alpha = out.b2 * out.b2 + out.b3 * out.b3;
  return out;
}

}  // namespace s2steer
