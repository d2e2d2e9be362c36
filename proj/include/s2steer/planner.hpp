#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "s2steer/dynamics.hpp"
#include "s2steer/linalg3.hpp"
#include "s2steer/normal_form.hpp"

namespace s2steer {

struct ControlSegment {
  double u = 0.0;
  double duration = 0.0;
};

/// A finite schedule of constant-control segments whose concatenated flows
/// carry waypoints[0] to waypoints[last]; always one more waypoint than
/// segments. Waypoints are in the same coordinates as the endpoints handed to
/// the planner; controls and durations are frame-invariant.
struct SteeringPlan {
  std::vector<ControlSegment> segments;
  std::vector<UnitVector3> waypoints;
  double total_time = 0.0;
  NormalFormData frame;

  const UnitVector3& start() const { return waypoints.front(); }
  const UnitVector3& target() const { return waypoints.back(); }
};

namespace detail {

inline double azimuth(const Vector3& p) { return std::atan2(p.y, p.x); }

inline double wrap_2pi(double x) {
  constexpr double tau = 2 * std::numbers::pi;
  double r = std::fmod(x, tau);
  if (r < 0) r += tau;
  if (tau - r <= 1e-12) r = 0;  // a hair short of a full loop is no loop
  return r;
}

class PlanBuilder {
 public:
  PlanBuilder(const NormalFormData& nf, const UnitVector3& start, double tol)
      : nf_(nf), tol_(tol), cur_(start) {
    plan_.frame = nf;
    plan_.waypoints.push_back(start);
  }

  const UnitVector3& current() const { return cur_; }

  /// Appends a segment unless its rotation angle is negligible.
  void push(double u, double duration, double rate) {
    if (!(duration > 0) || duration * rate <= tol_) return;
    cur_ = solve_constant_control(nf_, cur_, u, duration);
    plan_.segments.push_back({u, duration});
    plan_.waypoints.push_back(cur_);
    plan_.total_time += duration;
  }

  /// Drift segment to a point of (numerically) the same latitude. The drift
  /// decreases azimuth at rate a, so the gap is taken in that direction.
  void drift_to(const Vector3& point) {
    if (distance(cur_.vec(), point) <= tol_) return;
    const double gap = wrap_2pi(azimuth(cur_.vec()) - azimuth(point));
    push(0.0, gap / nf_.a, nf_.a);
  }

  SteeringPlan take() { return std::move(plan_); }

 private:
  const NormalFormData& nf_;
  double tol_;
  UnitVector3 cur_;
  SteeringPlan plan_;
};

}  // namespace detail

/// Steering construction in the working frame. At most five segments,
/// alternating drifts with rides on the two pole circles:
///   Leg A leaves the start latitude and lands on an equator anchor,
///   Leg B drifts along the equator between anchors,
///   Leg C climbs to the target latitude and drifts onto the target.
/// Degenerate legs are dropped.
inline SteeringPlan plan_normal_form(const NormalFormData& nf, const UnitVector3& s0,
                                     const UnitVector3& s1, double tol = kDefaultTol) {
  if (!(nf.alpha > tol)) throw BracketVanishes();
  if (!(std::abs(nf.b3) > tol)) throw DegenerateB3();
  const double plan_tol = std::max(tol, 1e-9);

  detail::PlanBuilder builder(nf, s0, tol);
  if (distance(s0, s1) <= plan_tol) return builder.take();

  // Leg A
  const double z0 = s0.z();
  const int h0 = z0 >= 0 ? +1 : -1;
  if (std::abs(z0) > 0.5 * tol) {
    const PoleManeuver m0 = pole_maneuver(nf, h0, tol);
    if (distance(s0, m0.pole) <= tol) {
      // The start is the pole itself, a drift equilibrium sitting half a
      // period into the circle; ride the rest of the way to the anchor.
      builder.push(m0.u_star, m0.half_period, m0.beta);
    } else {
      // Of the two crossings of the start latitude per period, the later one
      // leaves the shorter ride down to the anchor.
      const double t0 = solve_latitude(m0, z0);
      const UnitVector3 q0 =
          solve_constant_control(nf, m0.anchor, m0.u_star, solve_latitude_second(m0, z0));
      builder.drift_to(q0.vec());
      builder.push(m0.u_star, t0, m0.beta);
    }
  }

  // Legs B and C
  const double z1 = s1.z();
  const int h1 = z1 >= 0 ? +1 : -1;
  if (std::abs(z1) > 0.5 * tol) {
    const PoleManeuver m1 = pole_maneuver(nf, h1, tol);
    builder.drift_to(m1.anchor.vec());
    builder.push(m1.u_star, solve_latitude(m1, z1), m1.beta);
    builder.drift_to(s1.vec());  // skipped when the target is the pole itself
  } else {
    builder.drift_to(s1.vec());
  }

  if (distance(builder.current(), s1) > plan_tol) {
    throw InternalValidation("planner missed the target beyond tolerance");
  }
  return builder.take();
}

/// Full pipeline for a skew pair in arbitrary coordinates: reduce, fix up b3,
/// plan in the working frame, and map the waypoints back. Controls and
/// durations need no mapping.
inline SteeringPlan plan(const SkewMatrix3& a, const SkewMatrix3& b, const UnitVector3& start,
                         const UnitVector3& target, double tol = kDefaultTol) {
  const NormalFormData nf = ensure_b3_nonzero(reduce_system(a, b, tol), tol);
  const Matrix3 r = nf.conjugator();
  const Matrix3 rt = transpose(r);
  SteeringPlan p = plan_normal_form(nf, UnitVector3(rt * start.vec(), 1e-6),
                                    UnitVector3(rt * target.vec(), 1e-6), tol);
  for (UnitVector3& w : p.waypoints) w = UnitVector3(r * w.vec(), 1e-6);
  return p;
}

/// Replays every segment with the exact rotation flow in the plan's own
/// coordinates and reports the largest deviation from the stored waypoints.
inline double validate_plan(const SteeringPlan& plan, const SkewMatrix3& a, const SkewMatrix3& b) {
  if (plan.waypoints.size() != plan.segments.size() + 1) {
    throw Error("malformed plan: need one more waypoint than segments");
  }
  double err = 0.0;
  for (std::size_t k = 0; k < plan.segments.size(); ++k) {
    const UnitVector3 next = solve_constant_control(a, b, plan.waypoints[k], plan.segments[k].u,
                                                    plan.segments[k].duration);
    err = std::max(err, distance(next, plan.waypoints[k + 1]));
  }
  return err;
}

}  // namespace s2steer
