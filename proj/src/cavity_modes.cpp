#include "phonon/cavity_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace phonon {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

void require_index(int n) {
  if (n < 1) throw InputError("mode index must be >= 1, got " + std::to_string(n));
}

// Temporal derivative on t = 0 in units where both charts agree:
// (1/c_eff) d/dt for inertial modes, (1/chi) d/d eta for Rindler modes.
Complex normalized_time_derivative(const ModeFunction& mode, const ModeSample& s, double x) {
  return mode.chart() == ModeChart::inertial ? s.d_time / mode.c_eff() : s.d_time / x;
}

}  // namespace

Cavity::Cavity(double x_left, double x_right, double c_eff) : x_left_(x_left), x_right_(x_right), c_eff_(c_eff) {
  if (!(x_left > 0.0) || !(x_right > x_left)) throw InputError("cavity walls must satisfy 0 < x_L < x_R");
  if (!(c_eff > 0.0)) throw InputError("cavity signal speed must be positive");
}

WedgeCavity::WedgeCavity(double chi_left, double chi_right)
    : chi_left_(chi_left), chi_right_(chi_right), log_ratio_(std::log(chi_right / chi_left)) {
  if (!(chi_left > 0.0)) throw DomainError("wedge cavity wall chi_L must lie outside the horizon (chi_L > 0)");
  if (!(chi_right > chi_left)) throw InputError("wedge cavity walls must satisfy chi_L < chi_R");
}

WedgeCavity wedge_from_h(double h, double length) {
  if (!(length > 0.0)) throw InputError("cavity length must be positive");
  if (!(h > 0.0)) throw InputError("h must be positive");
  if (!(h < 2.0))
    throw DomainError("h = " + std::to_string(h) + " >= 2 places the acceleration horizon inside the cavity");
  const double chi0 = length / h;
  return WedgeCavity(chi0 - 0.5 * length, chi0 + 0.5 * length);
}

ModeFunction::ModeFunction(ModeChart chart, int index, double lower, double upper, double c_eff, double frequency,
                           Evaluator eval, bool conjugated)
    : chart_(chart),
      index_(index),
      lower_(lower),
      upper_(upper),
      c_eff_(c_eff),
      frequency_(frequency),
      eval_(std::move(eval)),
      conjugated_(conjugated) {}

ModeSample ModeFunction::operator()(double time, double space) const {
  if (!(space >= lower_ && space <= upper_))
    throw DomainError("point " + std::to_string(space) + " outside mode support [" + std::to_string(lower_) + ", " +
                      std::to_string(upper_) + "]");
  ModeSample s = eval_(time, space);
  if (conjugated_) {
    s.value = std::conj(s.value);
    s.d_time = std::conj(s.d_time);
    s.d_space = std::conj(s.d_space);
  }
  return s;
}

ModeFunction ModeFunction::conjugate() const {
  ModeFunction out = *this;
  out.conjugated_ = !conjugated_;
  return out;
}

ModeSample inertial_mode(const Cavity& cavity, int n, double t, double x) {
  require_index(n);
  if (!(x >= cavity.x_left() && x <= cavity.x_right()))
    throw DomainError("x = " + std::to_string(x) + " is outside the cavity");
  const double k = n * kPi / cavity.length();
  const double omega = k * cavity.c_eff();
  const double norm = 1.0 / std::sqrt(n * kPi);
  const double phase = k * (x - cavity.x_left());
  const Complex rotation = std::exp(-kI * omega * t);
  const Complex value = norm * std::sin(phase) * rotation;
  return {value, -kI * omega * value, norm * k * std::cos(phase) * rotation};
}

ModeFunction inertial_mode(const Cavity& cavity, int n) {
  require_index(n);
  const double omega = n * kPi * cavity.c_eff() / cavity.length();
  return ModeFunction(ModeChart::inertial, n, cavity.x_left(), cavity.x_right(), cavity.c_eff(), omega,
                      [cavity, n](double t, double x) { return inertial_mode(cavity, n, t, x); });
}

ModeSample rindler_mode(const WedgeCavity& wedge, int n, double eta, double chi) {
  require_index(n);
  if (!(chi >= wedge.chi_left() && chi <= wedge.chi_right()))
    throw DomainError("chi = " + std::to_string(chi) + " is outside the wedge cavity");
  const double big_omega = n * kPi / wedge.log_ratio();
  const double norm = 1.0 / std::sqrt(n * kPi);
  const double phase = big_omega * std::log(chi / wedge.chi_left());
  const Complex rotation = std::exp(-kI * big_omega * eta);
  const Complex value = norm * std::sin(phase) * rotation;
  return {value, -kI * big_omega * value, norm * big_omega / chi * std::cos(phase) * rotation};
}

ModeFunction rindler_mode(const WedgeCavity& wedge, int n, double c_eff) {
  require_index(n);
  return ModeFunction(ModeChart::rindler, n, wedge.chi_left(), wedge.chi_right(), c_eff, n * kPi / wedge.log_ratio(),
                      [wedge, n](double eta, double chi) { return rindler_mode(wedge, n, eta, chi); });
}

KgProduct kg_inner_product(const ModeFunction& phi, const ModeFunction& psi, const KgOptions& options) {
  const double lo = std::max(phi.lower(), psi.lower());
  const double hi = std::min(phi.upper(), psi.upper());
  if (!(hi > lo)) return {Complex{0.0, 0.0}, 0.0, true};

  auto density = [&](double x) {
    const ModeSample a = phi(0.0, x);
    const ModeSample b = psi(0.0, x);
    const Complex ta = normalized_time_derivative(phi, a, x);
    const Complex tb = normalized_time_derivative(psi, b, x);
    return -kI * (a.value * std::conj(tb) - std::conj(b.value) * ta);
  };

  KgForm form = options.form;
  if (form == KgForm::automatic)
    form = (phi.chart() == ModeChart::rindler && psi.chart() == ModeChart::rindler) ? KgForm::rindler
                                                                                     : KgForm::inertial;

  const QuadratureOptions quad{options.abs_tol, options.max_panels};
  QuadratureResult<Complex> result;
  if (form == KgForm::inertial) {
    const double width = hi - lo;
    // Integrate over the unit interval so the panel layout depends only on the shape.
    result = integrate<Complex>(
        [&](double xi) {
          const double x = std::clamp(lo + width * xi, lo, hi);
          return width * density(x);
        },
        0.0, 1.0, quad);
  } else {
    const double span = std::log(hi / lo);
    // x = lo exp(span s), dx = span x ds.
    result = integrate<Complex>(
        [&](double s) {
          const double x = std::clamp(lo * std::exp(span * s), lo, hi);
          return span * x * density(x);
        },
        0.0, 1.0, quad);
  }
  return {result.value, result.error, false};
}

Eigen::MatrixXcd gram_matrix(const std::vector<ModeFunction>& modes, const KgOptions& options) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = kg_inner_product(modes[i], modes[j], options).value;
  return g;
}

double wave_equation_residual(const ModeFunction& mode, const MetricField& metric, double time, double space,
                              double step) {
  if (!(step > 0.0)) throw InputError("stencil step must be positive");
  if (!(space - step >= mode.lower() && space + step <= mode.upper()))
    throw DomainError("stencil around " + std::to_string(space) + " with step " + std::to_string(step) +
                      " crosses a cavity wall");

  auto volume = [&](double t, double x) {
    const DiagonalMetric2 g = metric(t, x);
    return std::sqrt(-g.g_time * g.g_space);
  };
  const DiagonalMetric2 here = metric(time, space);
  const double local_speed = std::sqrt(-here.g_time / here.g_space);
  const double dt = step / (2.0 * local_speed);
  const double dx = step;

  auto value = [&](double t, double x) { return mode(t, x).value; };
  const Complex centre = value(time, space);

  // sqrt(-g) g^tt at half steps in time.
  auto time_flux = [&](double t) {
    const DiagonalMetric2 g = metric(t, space);
    return volume(t, space) / g.g_time;
  };
  auto space_flux = [&](double x) {
    const DiagonalMetric2 g = metric(time, x);
    return volume(time, x) / g.g_space;
  };

  const Complex d_time = (time_flux(time + 0.5 * dt) * (value(time + dt, space) - centre) -
                          time_flux(time - 0.5 * dt) * (centre - value(time - dt, space))) /
                         (dt * dt);
  const Complex d_space = (space_flux(space + 0.5 * dx) * (value(time, space + dx) - centre) -
                           space_flux(space - 0.5 * dx) * (centre - value(time, space - dx))) /
                          (dx * dx);
  return std::abs((d_time + d_space) / volume(time, space));
}

double wave_equation_residual(const ModeFunction& mode, const Metric& metric, double time, double space,
                              double step) {
  if (metric.components(0, 1) != 0.0 || metric.components(1, 0) != 0.0)
    throw InputError("wave_equation_residual needs a diagonal (t, x) block");
  const DiagonalMetric2 block{metric.components(0, 0), metric.components(1, 1)};
  if (!(block.g_time < 0.0 && block.g_space > 0.0)) throw InputError("(t, x) block must have signature (-, +)");
  return wave_equation_residual(
      mode, [block](double, double) { return block; }, time, space, step);
}

}  // namespace phonon
