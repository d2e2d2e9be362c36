#pragma once

#include <vector>

#include "s2steer/linalg3.hpp"

namespace s2steer {

/// A pair of system matrices; `skew` records whether both are skew-symmetric
/// within tolerance (in that case the induced fields reduce to plain matvecs).
struct SystemPair {
  Matrix3 A;
  Matrix3 B;
  bool skew = false;

  static SystemPair make(const Matrix3& a, const Matrix3& b, double tol = kDefaultTol) {
    return {a, b, is_skew(a, tol) && is_skew(b, tol)};
  }
};

namespace detail {
// Radial projection of M*x onto the plane orthogonal to x, evaluated with the
// ambient formula so it extends smoothly off the sphere (used by the
// finite-difference bracket below).
inline Vector3 ambient_field(const Matrix3& m, const Vector3& x) {
  const Vector3 mx = m * x;
  return mx - dot(mx, x) * x;
}
}  // namespace detail

/// Tangent field on the sphere induced by M:  s -> M s - <M s, s> s.
inline Vector3 induced_field(const Matrix3& m, const UnitVector3& s) {
  return detail::ambient_field(m, s.vec());
}

inline Matrix3 matrix_bracket(const Matrix3& a, const Matrix3& b) { return a * b - b * a; }

/// Residual of the identity "field bracket of the induced fields equals the
/// field induced by the matrix bracket", with the field bracket evaluated by
/// central finite differences of step h. Diagnostic only; not a hot path.
inline double field_bracket_check(const Matrix3& a, const Matrix3& b, const UnitVector3& s,
                                  double h = 1e-5) {
  const Vector3 x = s.vec();
  const Vector3 fa = detail::ambient_field(a, x);
  const Vector3 fb = detail::ambient_field(b, x);
  const Vector3 da_along_b =
      (detail::ambient_field(a, x + h * fb) - detail::ambient_field(a, x - h * fb)) / (2 * h);
  const Vector3 db_along_a =
      (detail::ambient_field(b, x + h * fa) - detail::ambient_field(b, x - h * fa)) / (2 * h);
  const Vector3 numeric = da_along_b - db_along_a;
  return norm(numeric - induced_field(matrix_bracket(a, b), s));
}

namespace detail {
inline bool proportional_to_any(const Matrix3& cand, const std::vector<Matrix3>& set, double tol) {
  auto frob = [](const Matrix3& m) {
    double s = 0;
    for (double v : m.m) s += v * v;
    return s;
  };
  for (const Matrix3& e : set) {
    const double ee = frob(e);
    if (ee == 0) continue;
    double ce = 0;
    for (int i = 0; i < 9; ++i) ce += cand.m[i] * e.m[i];
    const Matrix3 resid = cand - (ce / ee) * e;
    if (max_abs(resid) <= tol * std::max(1.0, max_abs(cand))) return true;
  }
  return false;
}
}  // namespace detail

/// Generators of the system's Lie algebra at matrix level: depth 1 gives
/// {A, B}; each further level brackets {A, B} against the previous level's new
/// elements. Zero matrices and matrices proportional to an earlier element are
/// dropped (iterated brackets of reduced pairs recur up to scale).
inline std::vector<Matrix3> bracket_closure(const Matrix3& a, const Matrix3& b, int depth) {
  if (depth < 1) throw Error("bracket_closure requires depth >= 1");
  constexpr double tol = 1e-9;

  std::vector<Matrix3> closure;
  std::vector<Matrix3> frontier;
  for (const Matrix3& g : {a, b}) {
    if (max_abs(g) > tol && !detail::proportional_to_any(g, closure, tol)) {
      closure.push_back(g);
      frontier.push_back(g);
    }
  }
  for (int level = 2; level <= depth && !frontier.empty(); ++level) {
    std::vector<Matrix3> fresh;
    for (const Matrix3& g : {a, b}) {
      for (const Matrix3& n : frontier) {
        const Matrix3 cand = matrix_bracket(g, n);
        if (max_abs(cand) <= tol) continue;
        if (detail::proportional_to_any(cand, closure, tol)) continue;
        if (detail::proportional_to_any(cand, fresh, tol)) continue;
        fresh.push_back(cand);
      }
    }
    closure.insert(closure.end(), fresh.begin(), fresh.end());
    frontier = std::move(fresh);
  }
  return closure;
}

}  // namespace s2steer
