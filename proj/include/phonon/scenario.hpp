#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "phonon/acoustic_metric.hpp"
#include "phonon/bogoliubov.hpp"

namespace phonon {

/// Invalid run description; `field` names the offending key.
class ConfigError : public InputError {
 public:
  ConfigError(std::string field, const std::string& message)
      : InputError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Numeric failure while computing the sweep point at `h`.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(double h, const std::string& message)
      : std::runtime_error("h = " + std::to_string(h) + ": " + message), h_(h) {}
  double h() const noexcept { return h_; }

 private:
  double h_;
};

enum class Medium { photon, phonon };

struct ScenarioConfig {
  Medium medium = Medium::photon;
  /// Proper acceleration of the cavity centre (m/s^2). Unused when a sweep is given.
  std::optional<double> acceleration;
  double length = 1e-6;
  /// Photon: vacuum light speed. Phonon: sound speed, unless `background` is set.
  std::optional<double> c;
  std::optional<BackgroundState> background;
  Eigen::Index cutoff = 20;
  double tol = 1e-10;
  /// Explicit h values; empty means the single h = a L / c_eff^2.
  std::vector<double> sweep;
  std::filesystem::path out_dir = "phonon-out";
  unsigned threads = 0;

  /// c for photons; c_s (given, or derived from the background) for phonons.
  double signal_speed() const;
  /// Sorted h values this config runs.
  std::vector<double> h_values() const;
};

/// Throws ConfigError with a field-level message on any violated invariant,
/// including h outside (0, 2).
void validate(const ScenarioConfig& config);

ScenarioConfig config_from_json(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

/// "LO:HI:N", log-spaced inclusive.
std::vector<double> parse_sweep(const std::string& spec);

struct SweepRow {
  double h = 0.0;
  double total_particles = 0.0;
  std::vector<double> per_mode;
  double residual_canonical = 0.0;
  double residual_symmetry = 0.0;
  Eigen::Index trusted_block = 0;
  double runtime_s = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<BogoliubovPair> pairs;
  /// Log-log slope of total particle number against h, when >= 2 rows.
  std::optional<double> particle_slope;
};

/// Computes every h of the config in ascending order. Throws ConfigError for
/// invalid configs and NumericFailure carrying the offending h otherwise.
SweepResult run(const ScenarioConfig& config);

/// Header "h,total_N,residual_canonical,residual_symmetry,trusted_block,runtime_s"
/// and one row per h, floats in shortest round-trip form.
std::string format_csv(const SweepResult& result);

/// Shortest decimal string that parses back to the same double.
std::string shortest_decimal(double value);

/// sweep.csv, pair_NNN.json per row, and summary.json (which alone carries
/// the timestamp) under `dir`.
void write_outputs(const SweepResult& result, const ScenarioConfig& config, const std::filesystem::path& dir);

struct ComparisonRow {
  double h_a = 0.0;
  double h_b = 0.0;
  double alpha_diff = 0.0;
  double beta_diff = 0.0;
  double particle_diff = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double max_alpha_diff = 0.0;
  double max_beta_diff = 0.0;
  double max_particle_diff = 0.0;
  bool h_match = false;
  /// h values agree and every difference is below 1e-10.
  bool matching = false;
};

inline constexpr double kComparisonTolerance = 1e-10;

ComparisonReport compare(const SweepResult& a, const SweepResult& b);
/// Runs both configs. Throws ConfigError on mismatched cutoffs or sweep lengths.
ComparisonReport compare(const ScenarioConfig& a, const ScenarioConfig& b);

struct GalileanRow {
  double epsilon = 0.0;
  double tau = 0.0;
  double time_residual = 0.0;
  double position_residual = 0.0;
};

struct GalileanReport {
  std::vector<GalileanRow> rows;
  double time_slope = 0.0;
  double position_slope = 0.0;
  /// (h, total particle number) for shrinking h, ending with the Galilean row h = 0.
  std::vector<std::pair<double, double>> particle_trend;
  bool orders_confirmed = false;
};

/// Residuals of the Galilean expansion for the config's chart and acceleration
/// at each epsilon = a tau / c_eff in (0, 0.5), their log-log slopes, and the
/// particle number at h = 1e-1, 1e-2, 1e-3 and in the Galilean limit.
GalileanReport galilean_report(const ScenarioConfig& config, const std::vector<double>& epsilons);

}  // namespace phonon
