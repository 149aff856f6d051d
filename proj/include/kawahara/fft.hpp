#pragma once

// Thin wrapper over FFTW's complex 1-D transforms. Plans are created once per
// (size, direction) and shared; fftw_execute_dft on distinct buffers is
// thread-safe, plan creation is serialized.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace kawahara::fft {

enum class Direction { forward, backward };

namespace detail {

// FFTW requires the in-place-ness of an execution to match its plan.
inline fftw_plan plan_for(std::size_t n, Direction dir, bool inplace) {
  static std::mutex mutex;
  static std::map<std::tuple<std::size_t, int, bool>, fftw_plan> plans;
  const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard lock(mutex);
  const auto key = std::tuple{n, sign, inplace};
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  std::vector<std::complex<double>> a(n), b(n);
  auto* in = reinterpret_cast<fftw_complex*>(a.data());
  auto* out = inplace ? in : reinterpret_cast<fftw_complex*>(b.data());
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(key, p);
  return p;
}

}  // namespace detail

/// Unnormalized DFT: out_k = sum_j in_j exp(-+ 2 pi i jk/n). `in` and `out` may alias.
inline void transform(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
                      Direction dir) {
  const bool inplace = static_cast<const void*>(in.data()) == static_cast<const void*>(out.data());
  fftw_plan p = detail::plan_for(in.size(), dir, inplace);
  // FFTW never writes to the input of an out-of-place complex plan.
  auto* src = const_cast<std::complex<double>*>(in.data());
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(src),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

inline void transform_inplace(std::span<std::complex<double>> data, Direction dir) {
  transform(data, data, dir);
}

}  // namespace kawahara::fft
