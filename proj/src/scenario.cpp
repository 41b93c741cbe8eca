#include "phonon/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phonon/charts.hpp"
#include "phonon/fit.hpp"

namespace phonon {

namespace {

using nlohmann::json;

double positive(const json& doc, const std::string& key) {
  if (!doc.at(key).is_number()) throw ConfigError(key, "must be a number");
  const double v = doc.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be positive and finite");
  return v;
}

std::vector<double> sweep_from_json(const json& doc) {
  if (doc.is_string()) return parse_sweep(doc.get<std::string>());
  if (doc.is_array()) {
    std::vector<double> out;
    for (const auto& v : doc) {
      if (!v.is_number()) throw ConfigError("sweep", "list entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (doc.is_object()) {
    try {
      return log_space(doc.at("lo").get<double>(), doc.at("hi").get<double>(), doc.at("n").get<int>());
    } catch (const json::exception& e) {
      throw ConfigError("sweep", e.what());
    } catch (const InputError& e) {
      throw ConfigError("sweep", e.what());
    }
  }
  throw ConfigError("sweep", "expected \"LO:HI:N\", a list of h values or {lo, hi, n}");
}

double max_abs_diff(const BogoliubovPair::Matrix& a, const BogoliubovPair::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

double ScenarioConfig::signal_speed() const {
  if (medium == Medium::phonon && background) return speed_of_sound(*background);
  if (!c) throw ConfigError(medium == Medium::photon ? "c" : "c_s", "signal speed is required");
  return *c;
}

std::vector<double> ScenarioConfig::h_values() const {
  if (!sweep.empty()) {
    std::vector<double> out = sweep;
    std::sort(out.begin(), out.end());
    return out;
  }
  if (!acceleration) throw ConfigError("a", "required when no sweep is given");
  return {h_parameter(*acceleration, length, signal_speed())};
}

void validate(const ScenarioConfig& config) {
  if (!(config.length > 0.0)) throw ConfigError("L", "must be positive");
  if (config.cutoff < 1) throw ConfigError("cutoff", "must be >= 1");
  if (!(config.tol > 0.0)) throw ConfigError("tol", "must be positive");
  if (config.acceleration && !(*config.acceleration > 0.0)) throw ConfigError("a", "must be positive");
  if (config.medium == Medium::phonon && config.background && config.c)
    throw ConfigError("c_s", "give either c_s or background, not both");
  double c_eff = 0.0;
  try {
    c_eff = config.signal_speed();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("background", e.what());
  }
  if (!(c_eff > 0.0)) throw ConfigError(config.medium == Medium::photon ? "c" : "c_s", "must be positive");
  for (double h : config.h_values()) {
    if (!(h > 0.0)) throw ConfigError("sweep", "h values must be positive");
    if (!(h < 2.0)) {
      std::ostringstream msg;
      msg << "h = " << h << " is outside (0, 2): a L / c_eff^2 >= 2 puts the acceleration horizon "
          << "(chi = 0) inside the cavity";
      throw ConfigError(config.sweep.empty() ? "a" : "sweep", msg.str());
    }
  }
}

std::vector<double> parse_sweep(const std::string& spec) {
  std::istringstream in(spec);
  std::string lo, hi, n;
  if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') || !std::getline(in, n) || lo.empty() || hi.empty() ||
      n.empty())
    throw ConfigError("sweep", "expected LO:HI:N, got '" + spec + "'");
  try {
    std::size_t used = 0;
    const double lo_v = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    const double hi_v = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    const int n_v = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
    return log_space(lo_v, hi_v, n_v);
  } catch (const InputError& e) {
    throw ConfigError("sweep", e.what());
  } catch (const std::exception&) {
    throw ConfigError("sweep", "expected LO:HI:N, got '" + spec + "'");
  }
}

ScenarioConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "must be a JSON object");
  ScenarioConfig config;
  try {
    const std::string medium = doc.value("medium", std::string("photon"));
    if (medium == "photon") config.medium = Medium::photon;
    else if (medium == "phonon") config.medium = Medium::phonon;
    else throw ConfigError("medium", "must be \"photon\" or \"phonon\", got \"" + medium + "\"");

    if (doc.contains("a")) config.acceleration = positive(doc, "a");
    if (doc.contains("L")) config.length = positive(doc, "L");
    else throw ConfigError("L", "is required");

    if (config.medium == Medium::photon) {
      config.c = doc.contains("c") ? positive(doc, "c") : 299792458.0;
    } else {
      if (doc.contains("c_s")) config.c = positive(doc, "c_s");
      if (doc.contains("background")) {
        try {
          config.background = background_from_json(doc.at("background"));
        } catch (const std::exception& e) {
          throw ConfigError("background", e.what());
        }
      }
      if (!config.c && !config.background) throw ConfigError("c_s", "phonon configs need c_s or background");
    }

    if (doc.contains("cutoff")) {
      if (!doc.at("cutoff").is_number_integer()) throw ConfigError("cutoff", "must be an integer");
      config.cutoff = doc.at("cutoff").get<Eigen::Index>();
    }
    if (doc.contains("tol")) config.tol = positive(doc, "tol");
    if (doc.contains("sweep")) config.sweep = sweep_from_json(doc.at("sweep"));
    if (doc.contains("out")) config.out_dir = doc.at("out").get<std::string>();
    if (doc.contains("threads")) config.threads = doc.at("threads").get<unsigned>();
  } catch (const json::exception& e) {
    throw ConfigError("config", e.what());
  }
  validate(config);
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config", path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

SweepResult run(const ScenarioConfig& config) {
  validate(config);
  const double c_eff = config.signal_speed();
  const Cavity cavity(1.0 * config.length, 2.0 * config.length, c_eff);
  CoefficientOptions options;
  options.tol = config.tol;
  options.threads = config.threads;

  SweepResult result;
  for (double h : config.h_values()) {
    const auto start = std::chrono::steady_clock::now();
    BogoliubovPair pair;
    try {
      pair = compute_coefficients(cavity, h, config.cutoff, options);
    } catch (const ToleranceError& e) {
      std::ostringstream msg;
      msg << e.what() << " (achieved estimate " << e.estimate() << ", error " << e.error() << ")";
      throw NumericFailure(h, msg.str());
    } catch (const std::exception& e) {
      throw NumericFailure(h, e.what());
    }
    const auto stop = std::chrono::steady_clock::now();

    SweepRow row;
    row.h = h;
    const ParticleNumbers numbers = particle_number(pair);
    row.total_particles = numbers.total;
    row.per_mode = numbers.per_mode;
    // An empty trusted block still reports the 1 x 1 residual.
    const Eigen::Index block = std::max<Eigen::Index>(pair.trusted_block, 1);
    row.residual_canonical = canonical_residual(pair, block);
    row.residual_symmetry = symmetry_residual(pair, block);
    row.trusted_block = pair.trusted_block;
    row.runtime_s = std::chrono::duration<double>(stop - start).count();
    result.rows.push_back(std::move(row));
    result.pairs.push_back(std::move(pair));
  }

  if (result.rows.size() >= 2) {
    std::vector<double> hs, totals;
    for (const auto& row : result.rows) {
      if (!(row.total_particles > 0.0)) {
        hs.clear();
        break;
      }
      hs.push_back(row.h);
      totals.push_back(row.total_particles);
    }
    if (!hs.empty()) result.particle_slope = log_log_slope(hs, totals);
  }
  return result;
}

std::string shortest_decimal(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buffer, end);
}

std::string format_csv(const SweepResult& result) {
  std::string out = "h,total_N,residual_canonical,residual_symmetry,trusted_block,runtime_s\n";
  for (const auto& row : result.rows) {
    out += shortest_decimal(row.h) + ',' + shortest_decimal(row.total_particles) + ',' +
           shortest_decimal(row.residual_canonical) + ',' + shortest_decimal(row.residual_symmetry) + ',' +
           std::to_string(row.trusted_block) + ',' + shortest_decimal(row.runtime_s) + '\n';
  }
  return out;
}

void write_outputs(const SweepResult& result, const ScenarioConfig& config, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "sweep.csv", std::ios::binary);
    csv << format_csv(result);
  }
  json rows = json::array();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    std::ostringstream name;
    name << "pair_" << std::setw(3) << std::setfill('0') << i << ".json";
    std::ofstream pair_file(dir / name.str(), std::ios::binary);
    pair_file << to_json(result.pairs[i]).dump() << '\n';
    const auto& row = result.rows[i];
    rows.push_back({{"h", row.h},
                    {"pair", name.str()},
                    {"total_N", row.total_particles},
                    {"per_mode_N", row.per_mode},
                    {"trusted_block", row.trusted_block}});
  }

  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream stamp;
  stamp << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  json summary{{"generated", stamp.str()},
               {"medium", config.medium == Medium::photon ? "photon" : "phonon"},
               {"L", config.length},
               {"c_eff", config.signal_speed()},
               {"cutoff", config.cutoff},
               {"tol", config.tol},
               {"rows", rows}};
  if (result.particle_slope) summary["particle_slope"] = *result.particle_slope;
  std::ofstream out(dir / "summary.json", std::ios::binary);
  out << summary.dump(2) << '\n';
}

ComparisonReport compare(const SweepResult& a, const SweepResult& b) {
  if (a.rows.size() != b.rows.size()) throw ConfigError("sweep", "compared runs have different numbers of h values");
  ComparisonReport report;
  report.h_match = true;
  bool shapes_match = true;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& pa = a.pairs[i];
    const auto& pb = b.pairs[i];
    if (pa.cutoff() != pb.cutoff()) throw ConfigError("cutoff", "compared runs use different cutoffs");
    ComparisonRow row;
    row.h_a = a.rows[i].h;
    row.h_b = b.rows[i].h;
    row.alpha_diff = max_abs_diff(pa.alpha, pb.alpha);
    row.beta_diff = max_abs_diff(pa.beta, pb.beta);
    row.particle_diff = std::abs(a.rows[i].total_particles - b.rows[i].total_particles);
    const auto& na = a.rows[i].per_mode;
    const auto& nb = b.rows[i].per_mode;
    if (na.size() != nb.size()) shapes_match = false;
    for (std::size_t m = 0; m < std::min(na.size(), nb.size()); ++m)
      row.particle_diff = std::max(row.particle_diff, std::abs(na[m] - nb[m]));
    if (std::abs(row.h_a - row.h_b) > 1e-12 * std::max(row.h_a, row.h_b)) report.h_match = false;
    report.max_alpha_diff = std::max(report.max_alpha_diff, row.alpha_diff);
    report.max_beta_diff = std::max(report.max_beta_diff, row.beta_diff);
    report.max_particle_diff = std::max(report.max_particle_diff, row.particle_diff);
    report.rows.push_back(row);
  }
  report.matching = report.h_match && shapes_match && report.max_alpha_diff < kComparisonTolerance &&
                    report.max_beta_diff < kComparisonTolerance && report.max_particle_diff < kComparisonTolerance;
  return report;
}

ComparisonReport compare(const ScenarioConfig& a, const ScenarioConfig& b) {
  validate(a);
  validate(b);
  if (a.cutoff != b.cutoff) throw ConfigError("cutoff", "compared configs use different cutoffs");
  if (a.h_values().size() != b.h_values().size())
    throw ConfigError("sweep", "compared configs have different numbers of h values");
  return compare(run(a), run(b));
}

GalileanReport galilean_report(const ScenarioConfig& config, const std::vector<double>& epsilons) {
  validate(config);
  if (epsilons.size() < 2) throw ConfigError("galilean", "need at least two epsilon values");
  for (double eps : epsilons)
    if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("galilean", "epsilon values must lie in (0, 0.5)");

  const double c_eff = config.signal_speed();
  const RindlerChart<double> chart(c_eff);
  const double a =
      config.acceleration ? *config.acceleration : config.h_values().front() * c_eff * c_eff / config.length;

  GalileanReport report;
  std::vector<double> sorted = epsilons;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> dts, dxs;
  for (double eps : sorted) {
    GalileanRow row;
    row.epsilon = eps;
    row.tau = eps * c_eff / a;
    const auto residual = expansion_residual(chart, row.tau, a);
    row.time_residual = residual.t;
    row.position_residual = residual.x;
    dts.push_back(residual.t);
    dxs.push_back(residual.x);
    report.rows.push_back(row);
  }
  report.time_slope = log_log_slope(sorted, dts);
  report.position_slope = log_log_slope(sorted, dxs);
  report.orders_confirmed = std::abs(report.time_slope - 3.0) <= 0.05 && std::abs(report.position_slope - 4.0) <= 0.05;

  const Cavity cavity(config.length, 2.0 * config.length, c_eff);
  CoefficientOptions options;
  options.tol = config.tol;
  options.threads = config.threads;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    try {
      report.particle_trend.emplace_back(h, particle_number(compute_coefficients(cavity, h, config.cutoff, options)).total);
    } catch (const std::exception& e) {
      throw NumericFailure(h, e.what());
    }
  }
  report.particle_trend.emplace_back(0.0, particle_number(galilean_coefficients(config.cutoff)).total);
  return report;
}

}  // namespace phonon
