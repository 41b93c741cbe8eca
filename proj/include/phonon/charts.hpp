#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "phonon/errors.hpp"

namespace phonon {

/// Right-wedge Rindler chart in 1+1 dimensions for a signal speed c_eff
/// (c for photons, c_s for phonons):
///   t = (chi / c_eff) sinh(eta),  x = chi cosh(eta).
/// eta is dimensionless, chi and x in metres, t in seconds.
template <class Scalar>
struct RindlerChart {
  Scalar c_eff;

  explicit RindlerChart(Scalar c) : c_eff(c) {
    if (!(c > Scalar(0))) throw InputError("chart signal speed must be positive");
  }
};

template <class Scalar>
struct MinkowskiPoint {
  Scalar t;
  Scalar x;
};

template <class Scalar>
struct RindlerPoint {
  Scalar eta;
  Scalar chi;
};

template <class Scalar>
MinkowskiPoint<Scalar> to_minkowski(const RindlerChart<Scalar>& chart, Scalar eta, Scalar chi) {
  using std::cosh;
  using std::sinh;
  if (!(chi > Scalar(0))) throw DomainError("Rindler position chi must be positive (right wedge)");
  return {chi / chart.c_eff * sinh(eta), chi * cosh(eta)};
}

template <class Scalar>
RindlerPoint<Scalar> from_minkowski(const RindlerChart<Scalar>& chart, Scalar t, Scalar x) {
  using std::abs;
  using std::atanh;
  using std::sqrt;
  const Scalar ct = chart.c_eff * t;
  if (!(x > abs(ct)))
    throw DomainError("event is not inside the right Rindler wedge x > c_eff |t| (on or beyond the horizon)");
  // (x - ct)(x + ct) keeps precision near the horizon.
  return {atanh(ct / x), sqrt((x - ct) * (x + ct))};
}

/// Proper time chi0 * eta / c_eff of the observer resting at chi0.
template <class Scalar>
Scalar proper_time(const RindlerChart<Scalar>& chart, Scalar chi0, Scalar eta) {
  if (!(chi0 > Scalar(0))) throw DomainError("chi0 must be positive");
  return chi0 * eta / chart.c_eff;
}

/// c_eff^2 / chi0.
template <class Scalar>
Scalar proper_acceleration(const RindlerChart<Scalar>& chart, Scalar chi0) {
  if (!(chi0 > Scalar(0))) throw DomainError("chi0 must be positive");
  return chart.c_eff * chart.c_eff / chi0;
}

/// Inverse of proper_acceleration: chi0 = c_eff^2 / a.
template <class Scalar>
Scalar rindler_position(const RindlerChart<Scalar>& chart, Scalar a) {
  if (!(a > Scalar(0))) throw InputError("proper acceleration must be positive");
  return chart.c_eff * chart.c_eff / a;
}

/// Wedge line element -chi^2 d(eta)^2 + d(chi)^2, expressed in (c_eff t, x) units.
/// Along chi = chi0 this restricts to -c_eff^2 d(tau)^2.
template <class Scalar>
Scalar line_element(Scalar chi, Scalar d_eta, Scalar d_chi) {
  return -chi * chi * d_eta * d_eta + d_chi * d_chi;
}

/// Non-relativistic image of the observer with proper acceleration a at
/// proper time tau: t = tau, x = chi0 + a tau^2 / 2, chi0 = c_eff^2 / a.
/// Only the second-order expansion is available.
template <class Scalar>
MinkowskiPoint<Scalar> galilean_limit(const RindlerChart<Scalar>& chart, Scalar tau, Scalar a, int order = 2) {
  if (order != 2) throw InputError("only the second-order Galilean expansion is implemented");
  const Scalar chi0 = rindler_position(chart, a);
  return {tau, chi0 + a * tau * tau / Scalar(2)};
}

/// Exact Rindler image of the observer minus its Galilean image.
///
/// With eps = a tau / c_eff the residuals are
///   dt = (chi0 / c_eff)(sinh eps - eps)      ~ (chi0 / c_eff) eps^3 / 6
///   dx = chi0 (2 sinh^2(eps/2) - eps^2 / 2)  ~ chi0 eps^4 / 24
/// evaluated in this form to avoid cancelling against chi0.
template <class Scalar>
MinkowskiPoint<Scalar> expansion_residual(const RindlerChart<Scalar>& chart, Scalar tau, Scalar a) {
  using std::sinh;
  const Scalar chi0 = rindler_position(chart, a);
  const Scalar eps = a * tau / chart.c_eff;
  const Scalar half = sinh(eps / Scalar(2));
  return {chi0 / chart.c_eff * (sinh(eps) - eps), chi0 * (Scalar(2) * half * half - eps * eps / Scalar(2))};
}

/// Proper acceleration of the chi = chi0 worldline measured from the
/// worldline itself: a^mu = d^2 x^mu / d tau^2 in (c_eff t, x), with
/// central second differences of step `step` in eta, Richardson-extrapolated
/// once, and a = sqrt(a^mu g_mu nu a^nu) with g = diag(-1, 1).
template <class Scalar>
Scalar measured_acceleration(const RindlerChart<Scalar>& chart, Scalar chi0, Scalar eta, Scalar step = Scalar(1e-4)) {
  using std::abs;
  using std::sqrt;
  auto second_derivative = [&](Scalar h) {
    const auto minus = to_minkowski(chart, eta - h, chi0);
    const auto mid = to_minkowski(chart, eta, chi0);
    const auto plus = to_minkowski(chart, eta + h, chi0);
    const Scalar dtau = proper_time(chart, chi0, h);
    const Scalar d2t = chart.c_eff * (plus.t - Scalar(2) * mid.t + minus.t) / (dtau * dtau);
    const Scalar d2x = (plus.x - Scalar(2) * mid.x + minus.x) / (dtau * dtau);
    return Eigen::Matrix<Scalar, 2, 1>(d2t, d2x);
  };
  const Eigen::Matrix<Scalar, 2, 1> coarse = second_derivative(step);
  const Eigen::Matrix<Scalar, 2, 1> fine = second_derivative(step / Scalar(2));
  const Eigen::Matrix<Scalar, 2, 1> acc = (Scalar(4) * fine - coarse) / Scalar(3);
  return abs(sqrt(abs(-acc(0) * acc(0) + acc(1) * acc(1))));
}

}  // namespace phonon
