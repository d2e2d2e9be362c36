#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "s2steer/larc.hpp"
#include "s2steer/linalg3.hpp"
#include "s2steer/normal_form.hpp"
#include "s2steer/planner.hpp"
#include "s2steer/simulator.hpp"

namespace s2steer {

/// On-disk description of a system: {"A": [[...]x3], "B": [[...]x3], "label": "..."}.
struct SystemFile {
  Matrix3 A;
  Matrix3 B;
  std::optional<std::string> label;

  SystemPair pair(double tol = kDefaultTol) const { return SystemPair::make(A, B, tol); }
};

// ---------------------------------------------------------------------------
// Formatting. All emitted JSON has byte-sorted keys and fixed 17-significant-
// digit floats, so identical inputs produce byte-identical documents.

inline std::string fmt_real(double x) {
  if (x == 0.0) return "0";  // also normalizes -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string json_vector3(const Vector3& v) {
  return "[" + fmt_real(v.x) + ", " + fmt_real(v.y) + ", " + fmt_real(v.z) + "]";
}

inline std::string json_matrix3(const Matrix3& m) {
  std::string out = "[";
  for (int r = 0; r < 3; ++r) {
    out += (r == 0 ? "[" : ", [");
    for (int c = 0; c < 3; ++c) {
      out += (c == 0 ? "" : ", ") + fmt_real(m(r, c));
    }
    out += "]";
  }
  return out + "]";
}

inline std::string json_frame(const NormalFormData& nf, const std::string& indent) {
  std::ostringstream out;
  out << "{\n";
  out << indent << "  \"P\": " << json_matrix3(nf.P) << ",\n";
  out << indent << "  \"Q\": " << json_matrix3(nf.Q) << ",\n";
  out << indent << "  \"a\": " << fmt_real(nf.a) << ",\n";
  out << indent << "  \"alpha\": " << fmt_real(nf.alpha) << ",\n";
  out << indent << "  \"b1\": " << fmt_real(nf.b1) << ",\n";
  out << indent << "  \"b2\": " << fmt_real(nf.b2) << ",\n";
  out << indent << "  \"b3\": " << fmt_real(nf.b3) << "\n";
  out << indent << "}";
  return out.str();
}

}  // namespace detail

inline std::string to_json(const NormalFormData& nf) { return detail::json_frame(nf, "") + "\n"; }

inline std::string to_json(const LarcReport& report) {
  std::ostringstream out;
  out << "{\n  \"deficient_points\": [";
  for (std::size_t i = 0; i < report.deficient_points.size(); ++i) {
    const auto& [point, rank] = report.deficient_points[i];
    out << (i == 0 ? "\n" : ",\n") << "    {\"point\": " << detail::json_vector3(point.vec())
        << ", \"rank\": " << rank << "}";
  }
  out << (report.deficient_points.empty() ? "]" : "\n  ]") << ",\n";
  out << "  \"depth\": " << report.depth << ",\n";
  out << "  \"min_rank\": " << report.min_rank << ",\n";
  out << "  \"sample_count\": " << report.sample_count << ",\n";
  out << "  \"verdict\": \"" << to_string(report.verdict) << "\"\n}\n";
  return out.str();
}

inline std::string to_json(const SteeringPlan& plan) {
  std::ostringstream out;
  out << "{\n  \"frame\": " << detail::json_frame(plan.frame, "  ") << ",\n";
  out << "  \"segments\": [";
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "    {\"duration\": " << fmt_real(plan.segments[i].duration)
        << ", \"u\": " << fmt_real(plan.segments[i].u) << "}";
  }
  out << (plan.segments.empty() ? "]" : "\n  ]") << ",\n";
  out << "  \"total_time\": " << fmt_real(plan.total_time) << ",\n";
  out << "  \"waypoints\": [";
  for (std::size_t i = 0; i < plan.waypoints.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "    " << detail::json_vector3(plan.waypoints[i].vec());
  }
  out << (plan.waypoints.empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

inline std::string simulate_report_json(const Vector3& endpoint, double error, double step) {
  std::ostringstream out;
  out << "{\n  \"endpoint\": " << detail::json_vector3(endpoint) << ",\n";
  out << "  \"endpoint_error\": " << fmt_real(error) << ",\n";
  out << "  \"step\": " << fmt_real(step) << "\n}\n";
  return out.str();
}

/// CSV columns t,x,y,z,u; 17 significant digits; LF line endings.
inline std::string to_csv(const Trajectory& traj) {
  std::string out = "t,x,y,z,u\n";
  for (const Trajectory::Sample& sample : traj.samples) {
    out += fmt_real(sample.t) + "," + fmt_real(sample.s.x) + "," + fmt_real(sample.s.y) + "," +
           fmt_real(sample.s.z) + "," + fmt_real(sample.u) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline Matrix3 parse_matrix3(const nlohmann::json& j, const std::string& name) {
  if (!j.contains(name)) throw Error("missing \"" + name + "\" matrix");
  const nlohmann::json& rows = j.at(name);
  if (!rows.is_array() || rows.size() != 3) throw Error("\"" + name + "\" must be a 3x3 array");
  Matrix3 m;
  for (int r = 0; r < 3; ++r) {
    const nlohmann::json& row = rows.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != 3) throw Error("\"" + name + "\" must be a 3x3 array");
    for (int c = 0; c < 3; ++c) {
      const nlohmann::json& v = row.at(static_cast<std::size_t>(c));
      if (!v.is_number()) throw Error("\"" + name + "\" entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  if (!is_finite(m)) throw Error("\"" + name + "\" entries must be finite");
  return m;
}

inline nlohmann::json parse_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error("invalid JSON");
  return j;
}

}  // namespace detail

inline SystemFile parse_system_file(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw Error("system file must be a JSON object");
  SystemFile f;
  f.A = detail::parse_matrix3(j, "A");
  f.B = detail::parse_matrix3(j, "B");
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw Error("\"label\" must be a string");
    f.label = j.at("label").get<std::string>();
  }
  return f;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline SystemFile load_system_file(const std::filesystem::path& path) {
  return parse_system_file(read_file(path));
}

inline SteeringPlan parse_plan(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text);
  if (!j.is_object()) throw Error("plan file must be a JSON object");
  SteeringPlan plan;
  if (!j.contains("segments") || !j.at("segments").is_array()) {
    throw Error("plan needs a \"segments\" array");
  }
  for (const nlohmann::json& seg : j.at("segments")) {
    if (!seg.is_object() || !seg.contains("u") || !seg.contains("duration")) {
      throw Error("each segment needs \"u\" and \"duration\"");
    }
    const double u = seg.at("u").get<double>();
    const double duration = seg.at("duration").get<double>();
    if (!std::isfinite(u) || !std::isfinite(duration) || duration < 0) {
      throw Error("segment values must be finite with duration >= 0");
    }
    plan.segments.push_back({u, duration});
  }
  if (!j.contains("waypoints") || !j.at("waypoints").is_array()) {
    throw Error("plan needs a \"waypoints\" array");
  }
  for (const nlohmann::json& w : j.at("waypoints")) {
    if (!w.is_array() || w.size() != 3) throw Error("waypoints must be [x, y, z] triples");
    plan.waypoints.emplace_back(w.at(0).get<double>(), w.at(1).get<double>(),
                                w.at(2).get<double>(), 1e-6);
  }
  if (plan.waypoints.size() != plan.segments.size() + 1) {
    throw Error("plan needs one more waypoint than segments");
  }
  plan.total_time = j.contains("total_time") ? j.at("total_time").get<double>() : 0.0;
  if (j.contains("frame") && j.at("frame").is_object()) {
    const nlohmann::json& fr = j.at("frame");
    plan.frame.P = detail::parse_matrix3(fr, "P");
    plan.frame.Q = detail::parse_matrix3(fr, "Q");
    plan.frame.a = fr.at("a").get<double>();
    plan.frame.alpha = fr.at("alpha").get<double>();
    plan.frame.b1 = fr.at("b1").get<double>();
    plan.frame.b2 = fr.at("b2").get<double>();
    plan.frame.b3 = fr.at("b3").get<double>();
  }
  return plan;
}

inline SteeringPlan load_plan(const std::filesystem::path& path) {
  return parse_plan(read_file(path));
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out << content;
}

}  // namespace s2steer
