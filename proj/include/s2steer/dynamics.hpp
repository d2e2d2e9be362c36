#pragma once

#include <cmath>
#include <numbers>

#include "s2steer/linalg3.hpp"
#include "s2steer/normal_form.hpp"

namespace s2steer {

/// Angular rate of the constant-control flow in the working frame:
/// beta(u) = sqrt((a + u b1)^2 + (u b2)^2 + (u b3)^2).
inline double beta(const NormalFormData& nf, double u) {
  const double g = nf.a + u * nf.b1;
  return std::sqrt(g * g + u * u * nf.alpha);
}

/// Working-frame generator of the flow with constant control u.
inline SkewMatrix3 control_matrix(const NormalFormData& nf, double u) {
  return {nf.a + u * nf.b1, u * nf.b2, u * nf.b3};
}

/// State after time t under constant control u, for a skew pair given in its
/// own coordinates. Exact rotation flow; the single evaluation path for
/// trajectories everywhere in the library.
inline UnitVector3 solve_constant_control(const SkewMatrix3& a, const SkewMatrix3& b,
                                          const UnitVector3& s0, double u, double t) {
  return UnitVector3(rotation_exp(a + u * b, t) * s0.vec(), 1e-6);
}

/// Same, in the working frame of a reduced system.
inline UnitVector3 solve_constant_control(const NormalFormData& nf, const UnitVector3& s0,
                                          double u, double t) {
  return solve_constant_control(nf.drift(), nf.control(), s0, u, t);
}

// ---------------------------------------------------------------------------
// Trajectory circles

/// A constant-control trajectory is a circle on the sphere; center and plane
/// normal are reported in the same frame as s0.
struct CircleData {
  Vector3 center;
  double radius = 0.0;
  UnitVector3 plane_normal;
};

inline CircleData trajectory_circle(const NormalFormData& nf, const UnitVector3& s0, double u,
                                    double tol = kDefaultTol) {
  const SkewMatrix3 c = control_matrix(nf, u);
  const double b = axis_norm(c);
  if (!(b > tol)) throw DegenerateRotation();
  // Null axis of the generator; orientation is irrelevant for the circle.
  const Vector3 n = Vector3{u * nf.b3, -u * nf.b2, nf.a + u * nf.b1} / b;
  const double height = dot(s0.vec(), n);
  return {height * n, std::sqrt(std::max(0.0, 1.0 - height * height)),
          UnitVector3(n, 1e-6)};
}

// ---------------------------------------------------------------------------
// Pole maneuvers

/// A constant-control circle through an equator anchor and one pole of the
/// working frame. Riding u_star from the anchor for half_period lands exactly
/// on the pole; the latitude along the ride is hemisphere_sign*(1-cos(bt))/2.
struct PoleManeuver {
  double u_star = 0.0;
  double beta = 0.0;
  double period = 0.0;
  double half_period = 0.0;
  UnitVector3 anchor;
  UnitVector3 pole;
  int hemisphere_sign = +1;
};

/// Builds the maneuver reaching (0, 0, target_pole), target_pole = +1 or -1.
/// The control comes from the two exact cases
///   u = a/(sqrt(alpha) - b1)   when sqrt(alpha) != b1,
///   u = -a/(2 sqrt(alpha))     otherwise,
/// both of which satisfy u^2 alpha = (a + u b1)^2, so the half turn of the
/// anchor is a pole. Which pole depends on signs, so the anchor is chosen by
/// checking the ride.
inline PoleManeuver pole_maneuver(const NormalFormData& nf, int target_pole,
                                  double tol = kDefaultTol) {
  if (!(nf.alpha > tol)) throw BracketVanishes();
  if (!(std::abs(nf.b3) > tol)) throw DegenerateB3();

  const double sa = std::sqrt(nf.alpha);
  const double u = std::abs(sa - nf.b1) > tol ? nf.a / (sa - nf.b1) : -nf.a / (2 * sa);
  const double b = beta(nf, u);
  const double half = std::numbers::pi / b;

  const Vector3 base = Vector3{nf.b3, -nf.b2, 0.0} / sa;
  for (const double sign : {1.0, -1.0}) {
    const UnitVector3 anchor(sign * base, 1e-6);
    const UnitVector3 end = solve_constant_control(nf, anchor, u, half);
    if (std::abs(end.z() - target_pole) <= 1e-9) {
      return {u,
              b,
              2 * half,
              half,
              anchor,
              UnitVector3(0, 0, static_cast<double>(target_pole)),
              target_pole};
    }
  }
  throw InternalValidation("pole maneuver: neither anchor reaches the requested pole");
}

/// Latitude after riding the maneuver's control for time t from its anchor.
inline double latitude_on_pole_circle(const PoleManeuver& m, double t) {
  return m.hemisphere_sign * (1.0 - std::cos(m.beta * t)) / 2.0;
}

/// Smallest t >= 0 at which the ride reaches latitude z. The latitude must lie
/// between 0 and the maneuver's pole (inclusive). The result is in
/// [0, half_period]; the other crossing in the same period is period - t.
inline double solve_latitude(const PoleManeuver& m, double z) {
  constexpr double eps = 1e-12;
  if (z * m.hemisphere_sign < -eps || std::abs(z) > 1.0 + eps) throw LatitudeOutOfRange();
  const double zz = std::min(std::abs(z), 1.0);
  const double c = std::clamp(1.0 - 2.0 * zz, -1.0, 1.0);
  return std::acos(c) / m.beta;
}

/// The second per-period crossing of latitude z (the descending branch).
inline double solve_latitude_second(const PoleManeuver& m, double z) {
  return m.period - solve_latitude(m, z);
}

// ---------------------------------------------------------------------------
// Eigenbasis expansion
//
// Kept as a cross-check of the rotation-exponential path, not used by it.

/// Expansion of the constant-control solution in the eigenbasis of the
/// working-frame generator: s(t) = c1 v1 + (c2 cos + c3 sin) v2 +
/// (c3 cos - c2 sin) v3, with v1 the null axis (u b3, -u b2, a + u b1).
struct ClosedFormSolution {
  double u = 0.0;
  double beta = 0.0;
  Vector3 axis;  // v1; its norm equals beta
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  UnitVector3 s0;
  Vector3 basis2;
  Vector3 basis3;

  Vector3 evaluate(double t) const {
    if (beta == 0.0) return s0.vec();
    const double co = std::cos(beta * t), si = std::sin(beta * t);
    return c1 * axis + (c2 * co + c3 * si) * basis2 + (c3 * co - c2 * si) * basis3;
  }
};

inline ClosedFormSolution closed_form_solution(const NormalFormData& nf, const UnitVector3& s0,
                                               double u, double tol = kDefaultTol) {
  ClosedFormSolution sol{u, beta(nf, u), {u * nf.b3, -u * nf.b2, nf.a + u * nf.b1},
                         0.0,            0.0,         0.0,
                         s0,             {},          {}};
  if (sol.beta <= tol) {
    // Zero generator: the state is stationary.
    sol.beta = 0.0;
    sol.axis = {0, 0, 0};
    return sol;
  }
  const double g = nf.a + u * nf.b1;
  if (std::abs(u) <= tol || u * u * nf.alpha <= tol * tol) {
    // Rotation purely about the third axis at signed rate g = +-beta.
    const double sign = g >= 0 ? 1.0 : -1.0;
    sol.basis2 = {0, 1, 0};
    sol.basis3 = {-sign, 0, 0};
    sol.c1 = s0.z() / g;
    sol.c2 = s0.y();
    sol.c3 = -sign * s0.x();
    return sol;
  }
  const double ua = u * nf.alpha;
  sol.basis2 = {-nf.b3 * g / ua, nf.b2 * g / ua, 1.0};
  sol.basis3 = {-nf.b2 * sol.beta / ua, -nf.b3 * sol.beta / ua, 0.0};
  const Vector3 c = solve(Matrix3::from_columns(sol.axis, sol.basis2, sol.basis3), s0.vec());
  sol.c1 = c.x;
  sol.c2 = c.y;
  sol.c3 = c.z;
  return sol;
}

}  // namespace s2steer
