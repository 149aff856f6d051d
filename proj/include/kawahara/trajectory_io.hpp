#pragma once

// Binary trajectory format, all fields little-endian 64-bit:
//   "KWTRJ1"  n:int64  L:double  eps:double  dt:double  sample_every:int64  sample_count:int64
//   then sample_count blocks of n doubles (u(x_0) .. u(x_{n-1}) at each sampled time).

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "kawahara/error.hpp"
#include "kawahara/evolve.hpp"

namespace kawahara::io {

inline constexpr std::array<char, 6> kTrajectoryMagic{'K', 'W', 'T', 'R', 'J', '1'};

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(b.data(), 8);
}
inline void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

inline std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 8)) throw FormatError("truncated trajectory stream");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}
inline double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace detail

inline void write_trajectory(std::ostream& os, const evolve::Trajectory& traj) {
  const auto& c = traj.config();
  os.write(kTrajectoryMagic.data(), kTrajectoryMagic.size());
  detail::put_u64(os, c.grid.size());
  detail::put_f64(os, c.grid.length());
  detail::put_f64(os, c.eps);
  detail::put_f64(os, c.dt);
  detail::put_u64(os, c.sample_every);
  detail::put_u64(os, traj.size());
  for (const auto& s : traj.states())
    for (double v : s.values()) detail::put_f64(os, v);
  if (!os) throw FormatError("failed writing trajectory");
}

/// Fields not stored in the header are derived: t_end from the sample count, nonlinear = true.
inline evolve::Trajectory read_trajectory(std::istream& is) {
  std::array<char, 6> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kTrajectoryMagic)
    throw FormatError("not a KWTRJ1 trajectory");
  const auto n = detail::get_u64(is);
  const double length = detail::get_f64(is);
  const double eps = detail::get_f64(is);
  const double dt = detail::get_f64(is);
  const auto sample_every = detail::get_u64(is);
  const auto count = detail::get_u64(is);
  if (count == 0 || n > (1u << 26)) throw FormatError("implausible trajectory header");

  evolve::SolverConfig cfg;
  try {
    cfg.grid = Grid(n, length);
    cfg.eps = eps;
    cfg.dt = dt;
    cfg.sample_every = sample_every;
    cfg.t_end = count > 1 ? static_cast<double>(count - 1) * dt * static_cast<double>(sample_every) : dt;
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid trajectory header: ") + e.what());
  }

  std::vector<RealField> states;
  states.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    std::vector<double> v(n);
    for (auto& x : v) x = detail::get_f64(is);
    states.emplace_back(cfg.grid, std::move(v));
  }
  return evolve::Trajectory(cfg, std::move(states));
}

inline void save_trajectory(const std::filesystem::path& path, const evolve::Trajectory& traj) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open " + tmp.string());
    write_trajectory(os, traj);
  }
  std::filesystem::rename(tmp, path);
}

inline evolve::Trajectory load_trajectory(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  return read_trajectory(is);
}

}  // namespace kawahara::io
