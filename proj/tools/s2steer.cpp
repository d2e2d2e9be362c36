// Command-line front end: rank-condition checks, normal forms, steering plans,
// and numerical replay for bilinear systems induced on the unit sphere.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s2steer/s2steer.hpp"

namespace {

using namespace s2steer;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFailed = 2;

UnitVector3 parse_point(const std::string& text) {
  double x = 0, y = 0, z = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &x, &y, &z, &tail) != 3) {
    throw Error("expected a point as x,y,z: \"" + text + "\"");
  }
  // Accept small normalization slack from hand-typed coordinates.
  return UnitVector3(x, y, z, 1e-6);
}

struct LarcOptions {
  std::string system_path;
  int samples = 2000;
  int depth = 3;
  double tol = kDefaultTol;
};

int run_larc(const LarcOptions& opt) {
  const SystemFile file = load_system_file(opt.system_path);
  const SystemPair sys = file.pair(opt.tol);
  LarcReport report;
  if (sys.skew) {
    report = larc_skew_report(skew_extract(sys.A, opt.tol), skew_extract(sys.B, opt.tol), opt.tol);
  } else {
    report = larc_global(sys, opt.samples, opt.depth, opt.tol);
  }
  std::cout << to_json(report);
  return is_satisfied(report.verdict) ? kExitOk : kExitFailed;
}

struct NormalFormOptions {
  std::string system_path;
  double tol = kDefaultTol;
};

int run_normal_form(const NormalFormOptions& opt) {
  const SystemFile file = load_system_file(opt.system_path);
  const SkewMatrix3 a = skew_extract(file.A, opt.tol);
  const SkewMatrix3 b = skew_extract(file.B, opt.tol);
  const NormalFormData nf = ensure_b3_nonzero(reduce_system(a, b, opt.tol), opt.tol);
  std::cout << to_json(nf);
  return kExitOk;
}

struct PlanOptions {
  std::string system_path;
  std::string from;
  std::string to;
  double tol = kDefaultTol;
};

int run_plan(const PlanOptions& opt) {
  const SystemFile file = load_system_file(opt.system_path);
  const SkewMatrix3 a = skew_extract(file.A, opt.tol);
  const SkewMatrix3 b = skew_extract(file.B, opt.tol);
  const SteeringPlan result = plan(a, b, parse_point(opt.from), parse_point(opt.to), opt.tol);
  std::cout << to_json(result);
  return kExitOk;
}

struct SimulateOptions {
  std::string system_path;
  std::string plan_path;
  double step = 1e-3;
  std::string csv_path;
};

int run_simulate(const SimulateOptions& opt) {
  const SystemFile file = load_system_file(opt.system_path);
  const SystemPair sys = file.pair();
  const SteeringPlan plan = load_plan(opt.plan_path);
  if (opt.csv_path.empty()) {
    const Vector3 end = integrate_endpoint(sys, plan.start(), plan.segments, opt.step);
    const double error = norm(end - plan.target().vec());
    std::cout << simulate_report_json(end, error, opt.step);
  } else {
    const Trajectory traj = integrate(sys, plan.start(), plan.segments, opt.step);
    write_file(opt.csv_path, to_csv(traj));
    const double error = norm(traj.endpoint() - plan.target().vec());
    std::cout << simulate_report_json(traj.endpoint(), error, opt.step);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controllability tools for bilinear systems induced on the unit sphere"};
  app.require_subcommand(1);

  LarcOptions larc_opt;
  CLI::App* larc_cmd = app.add_subcommand("larc", "Check the Lie algebra rank condition");
  larc_cmd->add_option("--system", larc_opt.system_path, "System JSON file")->required();
  larc_cmd->add_option("--samples", larc_opt.samples, "Sphere sample count (non-skew systems)");
  larc_cmd->add_option("--depth", larc_opt.depth, "Bracket closure depth");
  larc_cmd->add_option("--tol", larc_opt.tol, "Numerical tolerance");

  NormalFormOptions nf_opt;
  CLI::App* nf_cmd = app.add_subcommand("normal-form", "Reduce a skew pair to the working frame");
  nf_cmd->add_option("--system", nf_opt.system_path, "System JSON file")->required();
  nf_cmd->add_option("--tol", nf_opt.tol, "Numerical tolerance");

  PlanOptions plan_opt;
  CLI::App* plan_cmd = app.add_subcommand("plan", "Construct a steering schedule between points");
  plan_cmd->add_option("--system", plan_opt.system_path, "System JSON file")->required();
  plan_cmd->add_option("--from", plan_opt.from, "Start point x,y,z on the unit sphere")->required();
  plan_cmd->add_option("--to", plan_opt.to, "Target point x,y,z on the unit sphere")->required();
  plan_cmd->add_option("--tol", plan_opt.tol, "Numerical tolerance");

  SimulateOptions sim_opt;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Replay a plan with fixed-step RK4");
  sim_cmd->add_option("--system", sim_opt.system_path, "System JSON file")->required();
  sim_cmd->add_option("--plan", sim_opt.plan_path, "Plan JSON file")->required();
  sim_cmd->add_option("--step", sim_opt.step, "Integration step");
  sim_cmd->add_option("--csv", sim_opt.csv_path, "Write the trajectory as CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (larc_cmd->parsed()) return run_larc(larc_opt);
    if (nf_cmd->parsed()) return run_normal_form(nf_opt);
    if (plan_cmd->parsed()) return run_plan(plan_opt);
    if (sim_cmd->parsed()) return run_simulate(sim_opt);
  } catch (const BracketVanishes& e) {
    std::cerr << "error: " << e.what()
              << "; controllability is not guaranteed for commuting pairs\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
