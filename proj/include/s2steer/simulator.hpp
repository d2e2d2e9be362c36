#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "s2steer/induced_fields.hpp"
#include "s2steer/linalg3.hpp"
#include "s2steer/planner.hpp"

namespace s2steer {

/// Numerically integrated trajectory. States are stored as raw vectors so
/// that norm drift remains observable when renormalization is off.
struct Trajectory {
  struct Sample {
    double t = 0.0;
    Vector3 s;
    double u = 0.0;
  };
  std::vector<Sample> samples;
  bool renormalized = false;

  const Vector3& endpoint() const { return samples.back().s; }
};

namespace detail {

/// Classical RK4 over one constant-control segment. The last step is shrunk
/// to land exactly on the segment boundary. `record` is called after every
/// accepted step with (t, state).
template <class Rhs, class Record>
Vector3 rk4_segment(const Rhs& rhs, Vector3 s, double t_begin, double duration, double step,
                    bool renormalize, Record&& record) {
  const auto steps = static_cast<long long>(std::floor(duration / step));
  const double remainder = duration - static_cast<double>(steps) * step;
  auto advance = [&](double t, double h) {
    const Vector3 k1 = rhs(s);
    const Vector3 k2 = rhs(s + (h / 2) * k1);
    const Vector3 k3 = rhs(s + (h / 2) * k2);
    const Vector3 k4 = rhs(s + h * k3);
    s = s + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    if (renormalize) s = s / norm(s);
    if (!is_finite(s) || norm_sq(s) > 100.0) throw NonFiniteState();
    record(t + h, s);
  };
  for (long long i = 0; i < steps; ++i) advance(t_begin + i * step, step);
  if (remainder > step * 1e-12) advance(t_begin + steps * step, remainder);
  return s;
}

/// Runs the whole schedule; `record` receives (t, state, active control).
template <class Record>
Vector3 run_schedule(const SystemPair& sys, const Vector3& s0,
                     std::span<const ControlSegment> schedule, double step, bool renormalize,
                     Record&& record) {
  if (!(step > 0)) throw Error("integration step must be positive");
  Vector3 s = s0;
  double t = 0.0;
  for (const ControlSegment& seg : schedule) {
    const Matrix3 m = sys.A + seg.u * sys.B;
    auto record_u = [&](double tt, const Vector3& ss) { record(tt, ss, seg.u); };
    if (sys.skew) {
      s = rk4_segment([&m](const Vector3& x) { return m * x; }, s, t, seg.duration, step,
                      renormalize, record_u);
    } else {
      s = rk4_segment([&m](const Vector3& x) { return ambient_field(m, x); }, s, t, seg.duration,
                      step, renormalize, record_u);
    }
    t += seg.duration;
  }
  return s;
}

}  // namespace detail

/// Fixed-step RK4 over a schedule of constant-control segments, recording
/// every accepted state. Renormalization projects each state back to the
/// sphere; for skew systems the exact flow already preserves the norm, so the
/// drift of an unrenormalized run is a useful error signal.
inline Trajectory integrate(const SystemPair& sys, const UnitVector3& s0,
                            std::span<const ControlSegment> schedule, double step,
                            bool renormalize) {
  Trajectory traj;
  traj.renormalized = renormalize;
  traj.samples.push_back({0.0, s0.vec(), schedule.empty() ? 0.0 : schedule.front().u});
  detail::run_schedule(sys, s0.vec(), schedule, step, renormalize,
                       [&traj](double t, const Vector3& s, double u) {
                         traj.samples.push_back({t, s, u});
                       });
  return traj;
}

/// Default renormalization policy: on for general systems, off for skew ones.
inline Trajectory integrate(const SystemPair& sys, const UnitVector3& s0,
                            std::span<const ControlSegment> schedule, double step) {
  return integrate(sys, s0, schedule, step, !sys.skew);
}

/// Endpoint of the integrated schedule without storing intermediate states.
inline Vector3 integrate_endpoint(const SystemPair& sys, const UnitVector3& s0,
                                  std::span<const ControlSegment> schedule, double step) {
  return detail::run_schedule(sys, s0.vec(), schedule, step, !sys.skew,
                              [](double, const Vector3&, double) {});
}

/// Distance between the integrated endpoint of a plan and its stored target.
inline double endpoint_error(const SystemPair& sys, const SteeringPlan& plan, double step) {
  return norm(integrate_endpoint(sys, plan.start(), plan.segments, step) -
              plan.target().vec());
}

}  // namespace s2steer
