// Acceptance suite: one criterion per section, each printed as a PASS/FAIL
// line with its runtime. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace s2steer;
using testsupport::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<void(std::vector<std::string>&)> run;
};

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
  if (!ok) failures.push_back(what);
}

void expect_le(std::vector<std::string>& failures, double value, double bound,
               const std::string& what) {
  if (!(value <= bound)) {
    failures.push_back(what + ": " + std::to_string(value) + " > " + std::to_string(bound));
  }
}

// --------------------------------------------------------------------------
// 1. Axis-drift/axis-control pair: exact bracket, satisfied rank condition,
//    and the bracket field (s3, 0, -s1).
void criterion_1(std::vector<std::string>& f) {
  const SystemPair sys = testsupport::example1_pair();
  const Matrix3 expected{{0, 0, 1, 0, 0, 0, -1, 0, 0}};
  expect(f, max_abs(matrix_bracket(sys.A, sys.B) - expected) == 0.0, "bracket not exact");

  expect(f, larc_skew(testsupport::example1_A(), testsupport::example1_B()),
         "algebraic rank condition not satisfied");
  const LarcReport report = larc_global(sys, 2000);
  expect(f, report.verdict == LarcVerdict::SatisfiedSampled, "sampled rank condition failed");

  Rng rng(101);
  const Matrix3 bracket = matrix_bracket(sys.A, sys.B);
  for (int i = 0; i < 100; ++i) {
    const UnitVector3 s = rng.unit_vector();
    expect_le(f, distance(induced_field(bracket, s), {s.z(), 0, -s.x()}), 1e-12,
              "bracket field mismatch");
  }
}

// --------------------------------------------------------------------------
// 2. Commuting shear pair: zero bracket and a rank-condition failure at the
//    shared zero (1, 0, 0) where both induced fields vanish.
void criterion_2(std::vector<std::string>& f) {
  const SystemPair sys = testsupport::example2_pair();
  expect(f, max_abs(matrix_bracket(sys.A, sys.B)) == 0.0, "bracket not exactly zero");

  const LarcReport report = larc_global(sys, 2000);
  expect(f, report.verdict == LarcVerdict::Failed, "sampled check did not fail");
  const UnitVector3 witness(1, 0, 0);
  bool found = false;
  for (const auto& [point, rank] : report.deficient_points) {
    found |= distance(point, witness) <= 1e-12;
  }
  expect(f, found, "witness (1,0,0) missing from the report");
  expect_le(f, norm(induced_field(sys.A, witness)), 1e-15, "drift field nonzero at witness");
  expect_le(f, norm(induced_field(sys.B, witness)), 1e-15, "control field nonzero at witness");
}

// --------------------------------------------------------------------------
// 3. Worked steering system: closed-form endpoints at u = +-1, the RK4
//    endpoint at step 1e-4, and the two circle centers with squared radius 2/3.
void criterion_3(std::vector<std::string>& f) {
  const SkewMatrix3 a = testsupport::steering_A();
  const SkewMatrix3 b = testsupport::steering_B();
  const NormalFormData nf = testsupport::steering_nf();
  const UnitVector3 s0(0, 1, 0);
  const double t = 2 * kPi / (3 * std::sqrt(3.0));

  expect_le(f, distance(solve_constant_control(nf, s0, 1.0, t), UnitVector3(0, 0, -1)), 1e-12,
            "closed-form endpoint at u = +1");
  expect_le(f, distance(solve_constant_control(nf, s0, -1.0, t), UnitVector3(0, 0, 1)), 1e-12,
            "closed-form endpoint at u = -1");

  const SystemPair sys = SystemPair::make(skew_materialize(a), skew_materialize(b));
  const std::vector<ControlSegment> ride{{1.0, t}};
  expect_le(f, distance(integrate_endpoint(sys, s0, ride, 1e-4), {0, 0, -1}), 1e-6,
            "RK4 endpoint at u = +1");
  const std::vector<ControlSegment> ride_back{{-1.0, t}};
  expect_le(f, distance(integrate_endpoint(sys, s0, ride_back, 1e-4), {0, 0, 1}), 1e-6,
            "RK4 endpoint at u = -1");

  const CircleData down = trajectory_circle(nf, s0, 1.0);
  expect_le(f, distance(down.center, {-1.0 / 3, 1.0 / 3, -1.0 / 3}), 1e-12, "center at u = +1");
  expect_le(f, std::abs(down.radius * down.radius - 2.0 / 3), 1e-12, "radius^2 at u = +1");
  const CircleData up = trajectory_circle(nf, s0, -1.0);
  expect_le(f, distance(up.center, {-1.0 / 3, 1.0 / 3, 1.0 / 3}), 1e-12, "center at u = -1");
  expect_le(f, std::abs(up.radius * up.radius - 2.0 / 3), 1e-12, "radius^2 at u = -1");
}

// --------------------------------------------------------------------------
// 4. Pole-reaching controls on 500 randomized reduced systems: the generic
//    control lands both anchors on opposite poles, and the matched-coefficient
//    control reaches the opposite pole, all at T = pi/beta.
void criterion_4(std::vector<std::string>& f) {
  Rng rng(104);
  for (int i = 0; i < 500; ++i) {
    const NormalFormData nf = rng.normal_form();
    const double sa = std::sqrt(nf.alpha);
    const UnitVector3 anchor_pos(nf.b3 / sa, -nf.b2 / sa, 0, 1e-6);
    const UnitVector3 anchor_neg(-nf.b3 / sa, nf.b2 / sa, 0, 1e-6);

    {
      const double u = nf.a / (sa - nf.b1);
      const double half = kPi / beta(nf, u);
      expect_le(f, std::abs(solve_constant_control(nf, anchor_pos, u, half).z() - 1.0), 1e-9,
                "generic control misses the north pole");
      expect_le(f, std::abs(solve_constant_control(nf, anchor_neg, u, half).z() + 1.0), 1e-9,
                "generic control misses the south pole");
    }
    {
      NormalFormData matched = nf;
      matched.b1 = sa;  // switches the control formula
      const double u = -matched.a / (2 * sa);
      const double half = kPi / beta(matched, u);
      expect_le(f, std::abs(solve_constant_control(matched, anchor_pos, u, half).z() + 1.0), 1e-9,
                "matched control misses the south pole");
      expect_le(f, std::abs(solve_constant_control(matched, anchor_neg, u, half).z() - 1.0), 1e-9,
                "matched control misses the north pole");
    }
  }
}

// --------------------------------------------------------------------------
// 5. Planner soundness over 1000 randomized systems and endpoint pairs.
void criterion_5(std::vector<std::string>& f) {
  Rng rng(105);
  for (int i = 0; i < 1000; ++i) {
    const NormalFormData gen = rng.normal_form();
    const Matrix3 r = rng.rotation();
    const SkewMatrix3 a =
        skew_extract(r * skew_materialize(gen.drift()) * transpose(r), 1e-12);
    const SkewMatrix3 b =
        skew_extract(r * skew_materialize(gen.control()) * transpose(r), 1e-12);
    const UnitVector3 s0 = rng.unit_vector();
    const UnitVector3 s1 = rng.unit_vector();

    const SteeringPlan p = plan(a, b, s0, s1);
    expect(f, p.segments.size() <= 5, "more than five segments");
    for (const auto& seg : p.segments) {
      expect(f, seg.duration >= 0.0, "negative duration");
    }
    expect_le(f, distance(p.waypoints.back(), s1), 1e-9, "final waypoint misses the target");
    expect_le(f, validate_plan(p, a, b), 1e-9, "closed-form playback error");

    const SystemPair sys = SystemPair::make(skew_materialize(a), skew_materialize(b));
    expect_le(f, endpoint_error(sys, p, 1e-4), 1e-6, "RK4 endpoint error");
    if (f.size() > 8) {
      f.push_back("stopping after trial " + std::to_string(i));
      return;
    }
  }
}

// --------------------------------------------------------------------------
// 6. Finite-difference field bracket agrees with the matrix-bracket field on
//    500 random triples, skew and non-skew alike.
void criterion_6(std::vector<std::string>& f) {
  Rng rng(106);
  for (int i = 0; i < 500; ++i) {
    const bool skew_case = i % 2 == 0;
    const Matrix3 a = skew_case ? skew_materialize(rng.skew()) : rng.matrix();
    const Matrix3 b = skew_case ? skew_materialize(rng.skew()) : rng.matrix();
    expect_le(f, field_bracket_check(a, b, rng.unit_vector()), 1e-7,
              "finite-difference bracket residual");
  }
}

// --------------------------------------------------------------------------
// 7. Skew normal form on 1000 random nonzero matrices: orthogonal conjugator
//    and the canonical block at rate sqrt(a1^2 + a2^2 + a3^2).
void criterion_7(std::vector<std::string>& f) {
  Rng rng(107);
  for (int i = 0; i < 1000; ++i) {
    const SkewMatrix3 s = rng.nonzero_skew(2.0);
    const auto [a, p] = skew_normal_form(s);
    expect(f, a == std::sqrt(s.p1 * s.p1 + s.p2 * s.p2 + s.p3 * s.p3), "rate is not the norm");
    expect_le(f, max_abs(transpose(p) * p - Matrix3::identity()), 1e-10, "P not orthogonal");
    expect_le(f, max_abs(transpose(p) * skew_materialize(s) * p - skew_materialize({a, 0, 0})),
              1e-10, "conjugation misses the canonical block");
  }
}

// --------------------------------------------------------------------------
// 8. The projection is a homomorphism with the identity in its kernel, and
//    its zeros are exactly the eigenvector directions.
void criterion_8(std::vector<std::string>& f) {
  Rng rng(108);

  // Exact linearity on integer data, where no rounding occurs.
  for (int i = 0; i < 200; ++i) {
    Matrix3 a, b;
    for (double& v : a.m) v = std::floor(rng.uniform(-4, 4));
    for (double& v : b.m) v = std::floor(rng.uniform(-4, 4));
    const double u = std::floor(rng.uniform(-3, 3));
    for (const UnitVector3& s : axis_poles()) {
      const Vector3 lhs = induced_field(a + u * b, s);
      const Vector3 rhs = induced_field(a, s) + u * induced_field(b, s);
      expect(f, lhs.x == rhs.x && lhs.y == rhs.y && lhs.z == rhs.z, "homomorphism not exact");
    }
  }

  for (int i = 0; i < 200; ++i) {
    expect_le(f, norm(induced_field(Matrix3::identity(), rng.unit_vector())), 1e-15,
              "identity field not zero");
  }

  const auto outer = [](const Vector3& p, const Vector3& q) {
    return Matrix3{{p.x * q.x, p.x * q.y, p.x * q.z, p.y * q.x, p.y * q.y, p.y * q.z, p.z * q.x,
                    p.z * q.y, p.z * q.z}};
  };
  for (int i = 0; i < 200; ++i) {
    const UnitVector3 v = rng.unit_vector();
    const Vector3 vv = v.vec();
    const Matrix3 m = rng.uniform(-2, 2) * outer(vv, vv) +
                      rng.matrix() * (Matrix3::identity() - outer(vv, vv));
    // Zero field and zero cross at the eigenvector...
    expect_le(f, norm(induced_field(m, v)), 1e-12, "field nonzero at an eigenvector");
    expect_le(f, norm(cross(m * vv, vv)), 1e-12, "cross nonzero at an eigenvector");
    // ...and the two magnitudes agree everywhere else.
    const UnitVector3 s = rng.unit_vector();
    expect_le(f, std::abs(norm(induced_field(m, s)) - norm(cross(m * s.vec(), s.vec()))), 1e-12,
              "field and cross magnitudes differ");
  }
}

// --------------------------------------------------------------------------
// 9. RK4 converges at order 4 +- 0.3 against the exact rotation flow.
void criterion_9(std::vector<std::string>& f) {
  Rng rng(109);
  const SkewMatrix3 a = rng.nonzero_skew();
  const SkewMatrix3 b = rng.skew();
  const SystemPair sys = SystemPair::make(skew_materialize(a), skew_materialize(b));
  const double u = 0.9, t = 4.0;
  const UnitVector3 s0 = rng.unit_vector();
  const Vector3 exact = rotation_exp(a + u * b, t) * s0.vec();

  std::vector<double> errors;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const std::vector<ControlSegment> ride{{u, t}};
    errors.push_back(norm(integrate_endpoint(sys, s0, ride, h) - exact));
  }
  for (int k = 0; k < 2; ++k) {
    expect(f, errors[k + 1] > 0, "error vanished; cannot measure order");
    const double slope = std::log2(errors[k] / errors[k + 1]);
    expect(f, slope >= 3.7 && slope <= 4.3,
           "convergence slope " + std::to_string(slope) + " outside 4 +- 0.3");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"axis-drift/axis-control pair: exact bracket, rank verdicts, bracket field", 1.0,
       criterion_1},
      {"commuting shear pair: rank condition fails at the shared zero", 1.0, criterion_2},
      {"worked steering system: endpoints and circle geometry", 1.0, criterion_3},
      {"pole-reaching controls on 500 randomized systems", 5.0, criterion_4},
      {"planner soundness on 1000 randomized systems", 60.0, criterion_5},
      {"finite-difference field bracket on 500 samples", 5.0, criterion_6},
      {"skew normal form on 1000 random matrices", 5.0, criterion_7},
      {"projection homomorphism and zero-field characterization", 2.0, criterion_8},
      {"RK4 convergence order", 5.0, criterion_9},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::vector<std::string> failures;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(failures);
    } catch (const std::exception& e) {
      failures.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criteria[i].time_limit_s) {
      failures.push_back("runtime " + std::to_string(elapsed) + " s exceeds " +
                         std::to_string(criteria[i].time_limit_s) + " s");
    }
    const bool ok = failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s  %zu. %s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(),
                elapsed);
    for (const std::string& msg : failures) {
      std::printf("      - %s\n", msg.c_str());
    }
  }
  if (failed > 0) {
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
