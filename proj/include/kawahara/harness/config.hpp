#pragma once

// Flat "key = value" experiment configuration. '#' starts a comment, lists are
// comma separated, reals accept a trailing "pi" factor ("64pi", "16*pi", "pi").

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kawahara/error.hpp"
#include "kawahara/projectors.hpp"
#include "kawahara/spectral_core.hpp"

namespace kawahara::harness {

/// Bad configuration (maps to exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { simulate, converge, equicont, scaling, strichartz, regions, xsb };

inline const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::simulate: return "simulate";
    case Experiment::converge: return "converge";
    case Experiment::equicont: return "equicont";
    case Experiment::scaling: return "scaling";
    case Experiment::strichartz: return "strichartz";
    case Experiment::regions: return "regions";
    case Experiment::xsb: return "xsb";
  }
  return "?";
}

inline Experiment parse_experiment(std::string_view s) {
  for (auto e : {Experiment::simulate, Experiment::converge, Experiment::equicont, Experiment::scaling,
                 Experiment::strichartz, Experiment::regions, Experiment::xsb})
    if (s == to_string(e)) return e;
  throw ConfigError("unknown experiment '" + std::string(s) + "'");
}

struct ExperimentConfig {
  // grid and time stepping
  std::size_t n = 2048;
  double length = 64.0 * std::numbers::pi;
  double t_end = 1.0;
  double dt = 5e-4;
  std::size_t sample_every = 20;
  std::vector<double> eps = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
  std::vector<double> s_list = {0.0, 1.0};
  std::uint64_t seed = 20240101;

  // initial data: gaussian a exp(-((x - x0)/w)^2) or soliton 3c sech^2(sqrt(c)/2 (x - x0))
  std::string data = "gaussian";
  double amplitude = 0.5;
  double width = 4.0;
  double center = 0.0;
  double speed = 1.0;

  // converge / uniform bound
  double slope_min = 0.9;
  double slope_max = 1.1;
  bool assert_slope = true;
  double uniform_bound = 2.0;

  // equicont: phi + delta b with b a unit gaussian bump
  std::vector<double> deltas = {1e-1, 1e-2, 1e-3};
  double bump_width = 2.0;
  double bump_center = 3.0;
  double lipschitz_bound = 2.0;

  // scaling
  double lambda = 2.0;
  double scaling_tolerance = 1e-5;

  // strichartz probes
  std::size_t probe_times = 256;
  double probe_width = 0.1;
  double packet_eps = 1e-3;
  double probe_spread = 4.0;
  double packet_gain = 4.0;

  // regions
  std::size_t region_samples = 1'000'000;
  double vanishing_eps = 1e-9;

  // xsb
  std::vector<double> b_list = {0.5, 1.0};
  double factorization_tolerance = 0.05;

  Grid grid() const { return Grid(n, length); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_real(const std::string& key, std::string_view text) {
  std::string t = trim(text);
  double factor = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    t.resize(t.size() - 2);
    if (!t.empty() && t.back() == '*') t.pop_back();
    t = trim(t);
    if (t.empty()) return factor;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError("key '" + key + "': not a number: '" + std::string(text) + "'");
  return v * factor;
}

inline std::uint64_t parse_count(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError("key '" + key + "': not a non-negative integer: '" + std::string(text) + "'");
  return v;
}

inline bool parse_bool(const std::string& key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + t + "'");
}

inline std::vector<double> parse_list(const std::string& key, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_real(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

inline void validate(const ExperimentConfig& c) {
  try {
    (void)c.grid();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (!(c.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (!(c.dt > 0.0) || c.dt > c.t_end) throw ConfigError("dt must satisfy 0 < dt <= t_end");
  if (c.sample_every == 0) throw ConfigError("sample_every must be positive");
  if (c.eps.empty()) throw ConfigError("eps list is empty");
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    if (!(c.eps[i] > 0.0)) throw ConfigError("eps values must be positive (the eps = 0 reference is implicit)");
    if (i > 0 && !(c.eps[i] < c.eps[i - 1])) throw ConfigError("eps list must be strictly decreasing");
  }
  if (c.s_list.empty()) throw ConfigError("s list is empty");
  if (c.data != "gaussian" && c.data != "soliton") throw ConfigError("data must be gaussian or soliton");
  if (!(c.width > 0.0) || !(c.speed > 0.0) || !(c.bump_width > 0.0)) throw ConfigError("widths and speed must be positive");
  for (double d : c.deltas)
    if (!(d >= 0.0)) throw ConfigError("deltas must be non-negative");
  if (c.probe_times < 64) throw ConfigError("probe_times must be at least 64");
  if (!(c.packet_eps > 0.0) || !(c.vanishing_eps > 0.0)) throw ConfigError("packet_eps and vanishing_eps must be positive");
  if (c.region_samples == 0) throw ConfigError("region_samples must be positive");
  try {
    projectors::check_resolution(c.grid(), dispersion::DispersionParams(c.eps.back()));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

/// Parses the text of a config file on top of the defaults; unknown keys are errors.
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  using Setter = std::function<void(const std::string&, std::string_view)>;
  auto real = [](double& f) { return Setter([&f](const std::string& k, std::string_view v) { f = detail::parse_real(k, v); }); };
  auto count = [](std::size_t& f) {
    return Setter([&f](const std::string& k, std::string_view v) { f = detail::parse_count(k, v); });
  };
  auto list = [](std::vector<double>& f) {
    return Setter([&f](const std::string& k, std::string_view v) { f = detail::parse_list(k, v); });
  };
  const std::map<std::string, Setter, std::less<>> keys{
      {"n", count(c.n)},
      {"length", real(c.length)},
      {"t_end", real(c.t_end)},
      {"dt", real(c.dt)},
      {"sample_every", count(c.sample_every)},
      {"eps", list(c.eps)},
      {"s", list(c.s_list)},
      {"seed", [&](const std::string& k, std::string_view v) { c.seed = detail::parse_count(k, v); }},
      {"data", [&](const std::string&, std::string_view v) { c.data = detail::trim(v); }},
      {"amplitude", real(c.amplitude)},
      {"width", real(c.width)},
      {"center", real(c.center)},
      {"speed", real(c.speed)},
      {"slope_min", real(c.slope_min)},
      {"slope_max", real(c.slope_max)},
      {"assert_slope", [&](const std::string& k, std::string_view v) { c.assert_slope = detail::parse_bool(k, v); }},
      {"uniform_bound", real(c.uniform_bound)},
      {"deltas", list(c.deltas)},
      {"bump_width", real(c.bump_width)},
      {"bump_center", real(c.bump_center)},
      {"lipschitz_bound", real(c.lipschitz_bound)},
      {"lambda", real(c.lambda)},
      {"scaling_tolerance", real(c.scaling_tolerance)},
      {"probe_times", count(c.probe_times)},
      {"probe_width", real(c.probe_width)},
      {"packet_eps", real(c.packet_eps)},
      {"probe_spread", real(c.probe_spread)},
      {"packet_gain", real(c.packet_gain)},
      {"region_samples", count(c.region_samples)},
      {"vanishing_eps", real(c.vanishing_eps)},
      {"b", list(c.b_list)},
      {"factorization_tolerance", real(c.factorization_tolerance)},
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(std::string_view(t).substr(0, eq));
    const auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second(key, std::string_view(t).substr(eq + 1));
  }
  validate(c);
  return c;
}

inline ExperimentConfig parse_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in);
}

}  // namespace kawahara::harness
