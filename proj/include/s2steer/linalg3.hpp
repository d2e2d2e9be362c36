#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "s2steer/errors.hpp"

namespace s2steer {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kUnitTol = 1e-9;

// ---------------------------------------------------------------------------
// Vector3

struct Vector3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vector3 operator+(const Vector3& a, const Vector3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vector3 operator-(const Vector3& a, const Vector3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vector3 operator-(const Vector3& a) { return {-a.x, -a.y, -a.z}; }
inline Vector3 operator*(double s, const Vector3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vector3 operator*(const Vector3& a, double s) { return s * a; }
inline Vector3 operator/(const Vector3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

inline double dot(const Vector3& a, const Vector3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vector3 cross(const Vector3& a, const Vector3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_sq(const Vector3& a) { return dot(a, a); }
inline double norm(const Vector3& a) { return std::sqrt(norm_sq(a)); }
inline double distance(const Vector3& a, const Vector3& b) { return norm(a - b); }

inline bool is_finite(const Vector3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// A point of the unit sphere. Construction checks the norm against `tol`
/// and renormalizes, so downstream code can rely on unit length.
class UnitVector3 {
 public:
  explicit UnitVector3(const Vector3& v, double tol = kUnitTol) {
    const double n = norm(v);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol) throw NotUnit();
    v_ = v / n;
  }
  UnitVector3(double x, double y, double z, double tol = kUnitTol)
      : UnitVector3(Vector3{x, y, z}, tol) {}

  const Vector3& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

 private:
  Vector3 v_;
};

inline double distance(const UnitVector3& a, const UnitVector3& b) { return norm(a.vec() - b.vec()); }

// ---------------------------------------------------------------------------
// Matrix3 (row-major)

struct Matrix3 {
  std::array<double, 9> m{};

  double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
  double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

  static Matrix3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static Matrix3 zero() { return {}; }
  static Matrix3 from_rows(const Vector3& r0, const Vector3& r1, const Vector3& r2) {
    return {{r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z}};
  }
  static Matrix3 from_columns(const Vector3& c0, const Vector3& c1, const Vector3& c2) {
    return {{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
  }

  Vector3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }
  Vector3 column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
};

inline Matrix3 operator+(const Matrix3& a, const Matrix3& b) {
  Matrix3 out;
  for (int i = 0; i < 9; ++i) out.m[i] = a.m[i] + b.m[i];
  return out;
}

inline Matrix3 operator-(const Matrix3& a, const Matrix3& b) {
  Matrix3 out;
  for (int i = 0; i < 9; ++i) out.m[i] = a.m[i] - b.m[i];
  return out;
}

inline Matrix3 operator*(double s, const Matrix3& a) {
  Matrix3 out;
  for (int i = 0; i < 9; ++i) out.m[i] = s * a.m[i];
  return out;
}

inline Vector3 operator*(const Matrix3& a, const Vector3& v) {
  return {a.m[0] * v.x + a.m[1] * v.y + a.m[2] * v.z,
          a.m[3] * v.x + a.m[4] * v.y + a.m[5] * v.z,
          a.m[6] * v.x + a.m[7] * v.y + a.m[8] * v.z};
}

inline Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
  Matrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
  return out;
}

inline Matrix3 transpose(const Matrix3& a) {
  return {{a.m[0], a.m[3], a.m[6], a.m[1], a.m[4], a.m[7], a.m[2], a.m[5], a.m[8]}};
}

/// Entrywise maximum absolute value.
inline double max_abs(const Matrix3& a) {
  double out = 0.0;
  for (double v : a.m) out = std::max(out, std::abs(v));
  return out;
}

inline bool is_finite(const Matrix3& a) {
  for (double v : a.m) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline double det(const Matrix3& a) { return dot(a.column(0), cross(a.column(1), a.column(2))); }

/// Solves a*x = rhs by Cramer's rule. The caller guarantees a is well conditioned.
inline Vector3 solve(const Matrix3& a, const Vector3& rhs) {
  const double d = det(a);
  const Vector3 c0 = a.column(0), c1 = a.column(1), c2 = a.column(2);
  return {dot(rhs, cross(c1, c2)) / d, dot(c0, cross(rhs, c2)) / d, dot(c0, cross(c1, rhs)) / d};
}

// ---------------------------------------------------------------------------
// SkewMatrix3
//
// Parametrization:  [[0, p1, p2], [-p1, 0, p3], [-p2, -p3, 0]].

struct SkewMatrix3 {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

inline SkewMatrix3 operator+(const SkewMatrix3& a, const SkewMatrix3& b) {
  return {a.p1 + b.p1, a.p2 + b.p2, a.p3 + b.p3};
}
inline SkewMatrix3 operator*(double s, const SkewMatrix3& a) { return {s * a.p1, s * a.p2, s * a.p3}; }

/// sqrt(p1^2 + p2^2 + p3^2); equals the angular rate of exp(t*S).
inline double axis_norm(const SkewMatrix3& s) {
  return std::sqrt(s.p1 * s.p1 + s.p2 * s.p2 + s.p3 * s.p3);
}

inline Matrix3 skew_materialize(const SkewMatrix3& s) {
  return {{0, s.p1, s.p2, -s.p1, 0, s.p3, -s.p2, -s.p3, 0}};
}

/// Parameters of a skew-symmetric matrix. The off-diagonal pairs are averaged,
/// which keeps skew_extract(skew_materialize(s)) == s bit-exact.
inline SkewMatrix3 skew_extract(const Matrix3& m, double tol = kDefaultTol) {
  const Matrix3 sym = m + transpose(m);
  if (max_abs(sym) > tol) throw NotSkew();
  return {(m(0, 1) - m(1, 0)) / 2, (m(0, 2) - m(2, 0)) / 2, (m(1, 2) - m(2, 1)) / 2};
}

inline bool is_skew(const Matrix3& m, double tol = kDefaultTol) {
  return max_abs(m + transpose(m)) <= tol;
}

/// exp(t*C) for skew C via the Rodrigues form
///   exp(tC) = I + sin(bt)/b * C + (1 - cos(bt))/b^2 * C^2,   b = axis_norm(C).
/// For b < 1e-8 the series limits t and t^2/2 replace the trigonometric
/// quotients to avoid cancellation.
inline Matrix3 rotation_exp(const SkewMatrix3& c, double t) {
  const double b = axis_norm(c);
  double s_coef;  // sin(bt)/b
  double q_coef;  // (1 - cos(bt))/b^2
  if (b < 1e-8) {
    s_coef = t;
    q_coef = t * t / 2;
  } else {
    const double a = b * t;
    s_coef = std::sin(a) / b;
    q_coef = (1 - std::cos(a)) / (b * b);
  }
  const Matrix3 cm = skew_materialize(c);
  return Matrix3::identity() + s_coef * cm + q_coef * (cm * cm);
}

// ---------------------------------------------------------------------------
// Rank of tangent columns
//
// All columns are assumed tangent to the sphere at a common point, so the true
// rank is at most 2 and pairwise cross products decide it.

inline int rank_at_most_2(std::span<const Vector3> cols, double scale_tol = kDefaultTol) {
  const std::size_t n = cols.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ni = norm(cols[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double nj = norm(cols[j]);
      if (norm(cross(cols[i], cols[j])) > scale_tol * std::max(1.0, ni * nj)) return 2;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (norm(cols[i]) > scale_tol) return 1;
  }
  return 0;
}

}  // namespace s2steer
