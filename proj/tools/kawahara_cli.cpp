// kawahara_cli: config-driven experiment runner.
//
//   kawahara_cli <simulate|converge|equicont|scaling|strichartz|regions|xsb>
//                [--config PATH] [--out DIR] [--seed N] [--threads N] [--plot]
//
// Exit status: 0 all checks pass, 1 a check failed or a solve aborted, 2 bad configuration.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "kawahara/harness/config.hpp"
#include "kawahara/harness/experiments.hpp"
#include "kawahara/harness/plot.hpp"
#include "kawahara/harness/report.hpp"

namespace kh = kawahara::harness;

namespace {

// x column used for the --plot output of each table.
std::string plot_axis(const std::string& stem) {
  if (stem == "simulate_conserved") return "t";
  if (stem == "converge_slopes") return "s";
  if (stem == "equicont_summary") return "delta";
  if (stem == "xsb_modulation") return "sigma_shell";
  return "eps";
}

int run(kh::Experiment kind, const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
        unsigned threads, bool plot) {
  kh::ExperimentConfig cfg = config_path.empty() ? kh::ExperimentConfig{} : kh::load_config(config_path);
  if (seed) cfg.seed = *seed;
  kh::validate(cfg);

  const std::filesystem::path dir(out);
  const auto report = kh::run(kind, cfg, {dir, threads});
  const auto files = kh::write_report(report, dir);
  if (plot)
    for (const auto& [stem, table] : report.tables)
      try {
        kh::write_file_atomic(dir / (stem + ".svg"), kh::svg_plot(table, plot_axis(stem), stem));
      } catch (const std::exception& e) {
        std::cerr << "plot " << stem << ": " << e.what() << "\n";
      }

  std::cout << kh::to_string(kind) << "  config " << report.config_hash << "\n";
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << "  " << kh::format_real(c.measured) << " "
              << c.relation << " " << kh::format_real(c.bound) << "\n";
  for (const auto& f : files) std::cout << "  wrote " << f.string() << "\n";
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kawahara / KdV dispersive-limit experiments"};
  app.require_subcommand(1, 1);

  std::string config_path, out = "out";
  std::optional<std::uint64_t> seed;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool plot = false;

  for (auto kind : {kh::Experiment::simulate, kh::Experiment::converge, kh::Experiment::equicont,
                    kh::Experiment::scaling, kh::Experiment::strichartz, kh::Experiment::regions,
                    kh::Experiment::xsb}) {
    auto* sub = app.add_subcommand(kh::to_string(kind));
    sub->add_option("--config", config_path, "key = value config file (defaults: pinned Gaussian scenario)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    sub->add_flag("--plot", plot, "also write SVG line plots of the CSV tables");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  kh::Experiment kind = kh::Experiment::simulate;
  for (auto* sub : app.get_subcommands()) kind = kh::parse_experiment(sub->get_name());

  try {
    return run(kind, config_path, out, seed, threads, plot);
  } catch (const kh::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const kawahara::InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const kawahara::SolverError& e) {
    std::cerr << "solver aborted at t = " << e.time() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
