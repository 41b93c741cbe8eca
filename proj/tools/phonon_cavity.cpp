// Command-line driver: runs h-sweeps, photon/phonon comparisons and the
// Galilean-limit report from a JSON scenario config.
//
// Exit codes: 0 success, 2 config error, 3 numeric failure, 4 comparison mismatch.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "phonon/scenario.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericFailure = 3;
constexpr int kMismatch = 4;

void print_rows(const phonon::SweepResult& result) {
  std::printf("%-14s %-14s %-12s %-12s %s\n", "h", "total_N", "res_canon", "res_sym", "trusted");
  for (const auto& row : result.rows)
    std::printf("%-14.6g %-14.6g %-12.3g %-12.3g %ld\n", row.h, row.total_particles, row.residual_canonical,
                row.residual_symmetry, static_cast<long>(row.trusted_block));
  if (result.particle_slope) std::printf("log-log slope of total_N vs h: %.6f\n", *result.particle_slope);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bogoliubov coefficients for a suddenly accelerated cavity (photons or phonons)"};
  std::string config_path;
  std::optional<std::string> sweep;
  std::optional<long> cutoff;
  std::optional<double> tol;
  std::optional<std::string> out;
  std::optional<std::string> compare_path;
  std::optional<std::string> galilean;
  std::optional<unsigned> threads;

  app.add_option("--config", config_path, "scenario JSON")->required();
  app.add_option("--sweep", sweep, "log-spaced h range LO:HI:N");
  app.add_option("--cutoff", cutoff, "mode cutoff N");
  app.add_option("--tol", tol, "quadrature absolute tolerance");
  app.add_option("--out", out, "output directory");
  app.add_option("--compare", compare_path, "second scenario JSON to compare against");
  app.add_option("--galilean", galilean, "Galilean-limit report over log-spaced epsilon LO:HI:N");
  app.add_option("--threads", threads, "worker threads for matrix assembly (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  auto apply_overrides = [&](phonon::ScenarioConfig& config) {
    if (sweep) config.sweep = phonon::parse_sweep(*sweep);
    if (cutoff) config.cutoff = *cutoff;
    if (tol) config.tol = *tol;
    if (out) config.out_dir = *out;
    if (threads) config.threads = *threads;
    phonon::validate(config);
  };

  phonon::ScenarioConfig config;
  std::optional<phonon::ScenarioConfig> other;
  std::vector<double> epsilons;
  try {
    config = phonon::load_config(config_path);
    apply_overrides(config);
    if (compare_path) {
      other = phonon::load_config(*compare_path);
      apply_overrides(*other);
      if (other->cutoff != config.cutoff) throw phonon::ConfigError("cutoff", "compared configs use different cutoffs");
    }
    if (galilean) epsilons = phonon::parse_sweep(*galilean);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (galilean) {
      const auto report = phonon::galilean_report(config, epsilons);
      std::printf("%-12s %-14s %-14s %-14s\n", "epsilon", "tau_s", "dt_s", "dx_m");
      for (const auto& row : report.rows)
        std::printf("%-12.6g %-14.6g %-14.6g %-14.6g\n", row.epsilon, row.tau, row.time_residual,
                    row.position_residual);
      std::printf("time residual order %.4f, position residual order %.4f (%s)\n", report.time_slope,
                  report.position_slope, report.orders_confirmed ? "3 and 4 confirmed" : "orders NOT confirmed");
      for (const auto& [h, total] : report.particle_trend)
        std::printf("h = %-10.3g total_N = %.6g%s\n", h, total, h == 0.0 ? "  (Galilean transformation)" : "");
      return 0;
    }

    const auto result = phonon::run(config);
    print_rows(result);
    phonon::write_outputs(result, config, config.out_dir);

    if (other) {
      const auto result_b = phonon::run(*other);
      phonon::write_outputs(result_b, *other, config.out_dir / "compare");
      const auto report = phonon::compare(result, result_b);
      for (const auto& row : report.rows)
        std::printf("h %.6g vs %.6g: |d alpha| %.3g  |d beta| %.3g  |d N| %.3g\n", row.h_a, row.h_b, row.alpha_diff,
                    row.beta_diff, row.particle_diff);
      std::printf("comparison: %s\n", report.matching ? "MATCH" : "MISMATCH");
      if (!report.matching) return kMismatch;
    }
  } catch (const phonon::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  return 0;
}
