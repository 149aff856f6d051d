#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kawahara/harness/config.hpp"
#include "kawahara/harness/csv.hpp"

namespace kawahara::harness {

inline constexpr const char* kVersion = "kawahara 0.1.0";

/// One pass/fail assertion: measured <relation> bound.
struct Check {
  std::string name;
  double measured;
  std::string relation;  // "<=", ">=", "<", ">", "==", "in", "info"
  double bound;
  bool passed;
};

inline Check check_le(std::string name, double measured, double bound) {
  return {std::move(name), measured, "<=", bound, measured <= bound};
}
inline Check check_ge(std::string name, double measured, double bound) {
  return {std::move(name), measured, ">=", bound, measured >= bound};
}
inline Check check_lt(std::string name, double measured, double bound) {
  return {std::move(name), measured, "<", bound, measured < bound};
}
inline Check check_gt(std::string name, double measured, double bound) {
  return {std::move(name), measured, ">", bound, measured > bound};
}
inline Check check_true(std::string name, bool ok) { return {std::move(name), ok ? 1.0 : 0.0, "==", 1.0, ok}; }

struct Report {
  Experiment kind;
  std::string config_hash;
  std::vector<std::pair<std::string, CsvTable>> tables;  // file stem -> table
  std::vector<Check> checks;
  std::vector<std::string> artifacts;  // file names relative to the output directory

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const CsvTable& table(std::string_view stem) const {
    for (const auto& [name, t] : tables)
      if (name == stem) return t;
    throw InvalidArgument("no table " + std::string(stem));
  }

  CsvTable checks_table() const {
    CsvTable t({"check", "measured", "relation", "bound", "pass", "config_hash"});
    for (const auto& c : checks)
      t.add_row({c.name, c.measured, c.relation, c.bound, std::string(c.passed ? "PASS" : "FAIL"), config_hash});
    return t;
  }

  CsvTable meta_table() const {
    CsvTable t({"key", "value"});
    t.add_row({std::string("experiment"), std::string(to_string(kind))});
    t.add_row({std::string("config_hash"), config_hash});
    t.add_row({std::string("version"), std::string(kVersion)});
    for (const auto& a : artifacts) t.add_row({std::string("artifact"), a});
    return t;
  }
};

/// Writes every table as <stem>.csv plus <kind>_checks.csv and <kind>_meta.csv. Returns the written paths.
inline std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  auto put = [&](const std::string& stem, const CsvTable& t) {
    const auto p = dir / (stem + ".csv");
    write_file_atomic(p, t.str());
    out.push_back(p);
  };
  for (const auto& [stem, t] : r.tables) put(stem, t);
  put(std::string(to_string(r.kind)) + "_checks", r.checks_table());
  put(std::string(to_string(r.kind)) + "_meta", r.meta_table());
  return out;
}

/// Canonical text of every effective setting; its FNV-1a hash identifies a run.
inline std::string canonical_text(const ExperimentConfig& c, Experiment kind) {
  std::string s;
  auto kv = [&](const char* k, const std::string& v) {
    s += k;
    s += '=';
    s += v;
    s += '\n';
  };
  auto list = [](const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_real(v[i]);
    return out;
  };
  kv("experiment", to_string(kind));
  kv("n", std::to_string(c.n));
  kv("length", format_real(c.length));
  kv("t_end", format_real(c.t_end));
  kv("dt", format_real(c.dt));
  kv("sample_every", std::to_string(c.sample_every));
  kv("eps", list(c.eps));
  kv("s", list(c.s_list));
  kv("seed", std::to_string(c.seed));
  kv("data", c.data);
  kv("amplitude", format_real(c.amplitude));
  kv("width", format_real(c.width));
  kv("center", format_real(c.center));
  kv("speed", format_real(c.speed));
  kv("slope_min", format_real(c.slope_min));
  kv("slope_max", format_real(c.slope_max));
  kv("assert_slope", c.assert_slope ? "true" : "false");
  kv("uniform_bound", format_real(c.uniform_bound));
  kv("deltas", list(c.deltas));
  kv("bump_width", format_real(c.bump_width));
  kv("bump_center", format_real(c.bump_center));
  kv("lipschitz_bound", format_real(c.lipschitz_bound));
  kv("lambda", format_real(c.lambda));
  kv("scaling_tolerance", format_real(c.scaling_tolerance));
  kv("probe_times", std::to_string(c.probe_times));
  kv("probe_width", format_real(c.probe_width));
  kv("packet_eps", format_real(c.packet_eps));
  kv("probe_spread", format_real(c.probe_spread));
  kv("packet_gain", format_real(c.packet_gain));
  kv("region_samples", std::to_string(c.region_samples));
  kv("vanishing_eps", format_real(c.vanishing_eps));
  kv("b", list(c.b_list));
  kv("factorization_tolerance", format_real(c.factorization_tolerance));
  return s;
}

inline std::string config_hash(const ExperimentConfig& c, Experiment kind) {
  return hex64(fnv1a(canonical_text(c, kind)));
}

}  // namespace kawahara::harness
