#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "kawahara/trajectory_io.hpp"

using namespace kawahara;

namespace {

evolve::Trajectory small_trajectory() {
  evolve::SolverConfig c;
  c.grid = Grid(64, 8.0 * std::numbers::pi);
  c.eps = 1e-2;
  c.t_end = 0.1;
  c.dt = 1e-2;
  c.sample_every = 2;
  return evolve::solve(evolve::gaussian(c.grid, 0.7, 2.0), c);
}

}  // namespace

TEST(TrajectoryIo, RoundTripIsBitExact) {
  const auto tr = small_trajectory();
  std::stringstream ss;
  io::write_trajectory(ss, tr);
  EXPECT_EQ(ss.str().size(), 6 + 6 * 8 + tr.size() * 64 * 8);
  const auto back = io::read_trajectory(ss);
  EXPECT_TRUE(back.grid() == tr.grid());
  EXPECT_EQ(back.config().eps, tr.config().eps);
  EXPECT_EQ(back.config().dt, tr.config().dt);
  EXPECT_EQ(back.config().sample_every, tr.config().sample_every);
  ASSERT_EQ(back.size(), tr.size());
  for (std::size_t m = 0; m < tr.size(); ++m)
    EXPECT_EQ(std::memcmp(back.state(m).values().data(), tr.state(m).values().data(), 64 * sizeof(double)), 0);
  EXPECT_NEAR(back.times().back(), tr.times().back(), 1e-15);
}

TEST(TrajectoryIo, HeaderIsLittleEndian) {
  std::stringstream ss;
  io::write_trajectory(ss, small_trajectory());
  const std::string s = ss.str();
  EXPECT_EQ(s.substr(0, 6), "KWTRJ1");
  EXPECT_EQ(static_cast<unsigned char>(s[6]), 64u);
  for (int i = 7; i < 14; ++i) EXPECT_EQ(s[i], '\0');
}

TEST(TrajectoryIo, RejectsBadMagic) {
  std::stringstream ss;
  io::write_trajectory(ss, small_trajectory());
  std::string s = ss.str();
  s[5] = '2';
  std::stringstream bad(s);
  EXPECT_THROW(io::read_trajectory(bad), FormatError);
}

TEST(TrajectoryIo, RejectsTruncation) {
  std::stringstream ss;
  io::write_trajectory(ss, small_trajectory());
  const std::string s = ss.str();
  for (std::size_t cut : {std::size_t{3}, std::size_t{20}, s.size() - 1}) {
    std::stringstream bad(s.substr(0, cut));
    EXPECT_THROW(io::read_trajectory(bad), FormatError) << "cut at " << cut;
  }
}

TEST(TrajectoryIo, RejectsInvalidHeader) {
  std::stringstream ss;
  io::write_trajectory(ss, small_trajectory());
  std::string s = ss.str();
  s[6] = 63;  // grid size no longer a power of two
  std::stringstream bad(s);
  EXPECT_THROW(io::read_trajectory(bad), FormatError);
}

TEST(TrajectoryIo, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "kawahara_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "t.kwt";
  const auto tr = small_trajectory();
  io::save_trajectory(path, tr);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  const auto back = io::load_trajectory(path);
  EXPECT_EQ(max_abs_difference(back.states().back(), tr.states().back()), 0.0);
  EXPECT_THROW(io::load_trajectory(dir / "missing.kwt"), FormatError);
  std::filesystem::remove_all(dir);
}
