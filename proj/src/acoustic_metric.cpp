#include "phonon/acoustic_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

namespace phonon {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Centered derivative at interior node i, exact for quadratics on a non-uniform grid.
double node_derivative(const EosTable& table, std::size_t i) {
  const auto& r = table.rows;
  const std::size_t n = r.size();
  const std::size_t lo = std::min(i == 0 ? 0 : i - 1, n - 3);
  const std::size_t mid = lo + 1;
  const std::size_t hi = lo + 2;
  const double x0 = r[lo].first, x1 = r[mid].first, x2 = r[hi].first;
  const double y0 = r[lo].second, y1 = r[mid].second, y2 = r[hi].second;
  const double x = r[i].first;
  // Derivative of the Lagrange parabola through the three points, evaluated at x.
  const double d0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
  const double d1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
  const double d2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
  return y0 * d0 + y1 * d1 + y2 * d2;
}

std::size_t bracket(const EosTable& table, double rho) {
  const auto& r = table.rows;
  if (rho < r.front().first || rho > r.back().first)
    throw InputError("eos table does not bracket rho = " + std::to_string(rho));
  auto it = std::upper_bound(r.begin(), r.end(), rho,
                             [](double v, const std::pair<double, double>& row) { return v < row.first; });
  std::size_t k = static_cast<std::size_t>(it - r.begin());
  if (k == 0) k = 1;
  if (k >= r.size()) k = r.size() - 1;
  return k - 1;
}

}  // namespace

void validate_table(const EosTable& table) {
  if (table.rows.size() < 3) throw InputError("eos table needs at least 3 rows");
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].first > table.rows[i - 1].first) || !(table.rows[i].second > table.rows[i - 1].second))
      throw InputError("eos table is not monotone at row " + std::to_string(i));
  }
}

double pressure(const EquationOfState& eos, double rho) {
  return std::visit(overloaded{
                        [rho](const Polytrope& p) { return p.K * std::pow(rho, p.gamma); },
                        [rho](const EosTable& t) {
                          validate_table(t);
                          const std::size_t i = bracket(t, rho);
                          const auto& [x0, y0] = t.rows[i];
                          const auto& [x1, y1] = t.rows[i + 1];
                          return y0 + (y1 - y0) * (rho - x0) / (x1 - x0);
                        },
                    },
                    eos);
}

double pressure_derivative(const EquationOfState& eos, double rho) {
  return std::visit(overloaded{
                        [rho](const Polytrope& p) { return p.K * p.gamma * std::pow(rho, p.gamma - 1.0); },
                        [rho](const EosTable& t) {
                          validate_table(t);
                          const std::size_t i = bracket(t, rho);
                          const double x0 = t.rows[i].first;
                          const double x1 = t.rows[i + 1].first;
                          const double w = (rho - x0) / (x1 - x0);
                          return (1.0 - w) * node_derivative(t, i) + w * node_derivative(t, i + 1);
                        },
                    },
                    eos);
}

void validate(const BackgroundState& bg) {
  if (!(bg.n0 > 0.0)) throw InputError("n0 must be positive");
  if (!(bg.rho0 + bg.p0 > 0.0)) throw InputError("rho0 + p0 must be positive");
  if (!(bg.c > 0.0)) throw InputError("c must be positive");
  if (const auto* table = std::get_if<EosTable>(&bg.eos)) validate_table(*table);
}

double speed_of_sound(const BackgroundState& bg) {
  validate(bg);
  const double slope = pressure_derivative(bg.eos, bg.rho0);
  if (!(slope > 0.0)) throw InputError("dp/drho must be positive at the background point");
  if (slope > 1.0)
    throw SuperluminalSoundError("dp/drho = " + std::to_string(slope) + " > 1 gives a superluminal sound speed");
  return bg.c * std::sqrt(slope);
}

double conformal_prefactor(const BackgroundState& bg) {
  const double cs = speed_of_sound(bg);
  return bg.n0 * bg.n0 / (cs * (bg.rho0 + bg.p0));
}

Metric effective_metric(const BackgroundState& bg, const Metric& g, const FourVelocity<double>& v) {
  validate(g);
  detail::require_normalized(g, v, bg.c);
  const double cs = speed_of_sound(bg);
  Metric out = g;
  // g + (1 - cs^2/c^2) VV/c^2, regrouped so that cs << c survives rounding.
  out.components = detail::spatial_projector(g, v, bg.c) - (cs * cs) / (bg.c * bg.c) * detail::flow_outer(g, v, bg.c);
  out.conformal_factor = conformal_prefactor(bg);
  return out;
}

Metric analogue_metric(const BackgroundState& bg, const Metric& g, const FourVelocity<double>& v) {
  validate(g);
  detail::require_normalized(g, v, bg.c);
  const double cs = speed_of_sound(bg);
  Metric out = g;
  const double weight = (bg.c - cs) * (bg.c + cs) / (bg.c * bg.c);
  out.components = conformal_prefactor(bg) * weight * detail::flow_outer(g, v, bg.c);
  out.conformal_factor.reset();
  return out;
}

BackgroundState background_from_json(const nlohmann::json& doc) {
  BackgroundState bg;
  try {
    bg.n0 = doc.at("n0").get<double>();
    bg.rho0 = doc.at("rho0").get<double>();
    bg.p0 = doc.at("p0").get<double>();
    bg.c = doc.value("c", bg.c);
    const auto& eos = doc.at("eos");
    const auto type = eos.at("type").get<std::string>();
    if (type == "polytrope") {
      bg.eos = Polytrope{eos.at("K").get<double>(), eos.at("gamma").get<double>()};
    } else if (type == "table") {
      EosTable table;
      for (const auto& row : eos.at("rows")) {
        if (!row.is_array() || row.size() != 2) throw InputError("eos table rows must be [rho, p] pairs");
        table.rows.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      bg.eos = std::move(table);
    } else {
      throw InputError("unknown eos type '" + type + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("background: ") + e.what());
  }
  validate(bg);
  return bg;
}

nlohmann::json to_json(const BackgroundState& bg) {
  nlohmann::json eos = std::visit(overloaded{
                                      [](const Polytrope& p) {
                                        return nlohmann::json{{"type", "polytrope"}, {"K", p.K}, {"gamma", p.gamma}};
                                      },
                                      [](const EosTable& t) {
                                        nlohmann::json rows = nlohmann::json::array();
                                        for (const auto& [rho, p] : t.rows) rows.push_back({rho, p});
                                        return nlohmann::json{{"type", "table"}, {"rows", rows}};
                                      },
                                  },
                                  bg.eos);
  return {{"n0", bg.n0}, {"rho0", bg.rho0}, {"p0", bg.p0}, {"c", bg.c}, {"eos", eos}};
}

Metric metric_from_json(const nlohmann::json& doc) {
  Metric g;
  try {
    const auto& rows = doc.at("components");
    if (!rows.is_array() || rows.size() != 4) throw InputError("metric components must be a 4x4 array");
    for (int i = 0; i < 4; ++i) {
      if (!rows[i].is_array() || rows[i].size() != 4) throw InputError("metric components must be a 4x4 array");
      for (int j = 0; j < 4; ++j) g.components(i, j) = rows[i][j].get<double>();
    }
    if (doc.contains("coords")) {
      const auto& coords = doc.at("coords");
      if (!coords.is_array() || coords.size() != 4) throw InputError("metric coords must have four labels");
      for (int i = 0; i < 4; ++i) g.coords[i] = coords[i].get<std::string>();
    }
    if (doc.contains("conformal_factor") && doc.at("conformal_factor").is_number())
      g.conformal_factor = doc.at("conformal_factor").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("metric: ") + e.what());
  }
  validate(g);
  return g;
}

nlohmann::json to_json(const Metric& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back(g.components(i, j));
    rows.push_back(row);
  }
  nlohmann::json doc{{"components", rows}, {"coords", g.coords}};
  if (g.conformal_factor) doc["conformal_factor"] = *g.conformal_factor;
  else doc["conformal_factor"] = "absorbed";
  return doc;
}

}  // namespace phonon
