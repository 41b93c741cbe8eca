#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "phonon/errors.hpp"

namespace phonon {

// ---------------------------------------------------------------------------
// Equation of state
// ---------------------------------------------------------------------------

/// p = K * rho^gamma
struct Polytrope {
  double K = 1.0;
  double gamma = 1.0;
};

/// Monotone (rho, p) samples. Rows must be strictly increasing in both columns.
struct EosTable {
  std::vector<std::pair<double, double>> rows;
};

using EquationOfState = std::variant<Polytrope, EosTable>;

/// Pressure at total energy density rho.
double pressure(const EquationOfState& eos, double rho);

/// dp/drho at rho. Polytropes are differentiated analytically; tables use
/// three-point centered differences at the nodes (exact for quadratics on
/// non-uniform grids), linearly interpolated between nodes.
double pressure_derivative(const EquationOfState& eos, double rho);

/// Throws InputError unless the table has >= 3 strictly increasing rows.
void validate_table(const EosTable& table);

// ---------------------------------------------------------------------------
// Background condensate
// ---------------------------------------------------------------------------

/// Mean-field background of the condensate, SI units. `c` is the vacuum
/// light speed and is configurable so that natural-unit fixtures can set c = 1.
struct BackgroundState {
  double n0 = 1.0;    // number density, 1/m^3
  double rho0 = 1.0;  // energy density, J/m^3
  double p0 = 0.0;    // pressure, Pa
  EquationOfState eos = Polytrope{};
  double c = 299792458.0;
};

/// Throws InputError if n0 <= 0, rho0 + p0 <= 0, c <= 0 or the eos table is invalid.
void validate(const BackgroundState& bg);

/// c * sqrt(dp/drho) at rho0.
///
/// Throws SuperluminalSoundError when dp/drho > 1 and InputError when it is
/// not positive or when a table does not bracket rho0.
double speed_of_sound(const BackgroundState& bg);

/// n0^2 / (c_s (rho0 + p0)). Stored opaquely, no units are assigned.
double conformal_prefactor(const BackgroundState& bg);

// ---------------------------------------------------------------------------
// Metric and four-velocity
// ---------------------------------------------------------------------------

template <class Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <class Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

/// Symmetric 4x4 metric in a labelled chart. The conformal factor is kept
/// apart from the components; std::nullopt means it has been absorbed.
template <class Scalar>
struct MetricTensor {
  Matrix4<Scalar> components = Matrix4<Scalar>::Identity();
  std::array<std::string, 4> coords{"t [s]", "x [m]", "y [m]", "z [m]"};
  std::optional<Scalar> conformal_factor;

  /// Components multiplied by the conformal factor (or unchanged if absorbed).
  Matrix4<Scalar> full() const {
    return conformal_factor ? Matrix4<Scalar>(*conformal_factor * components) : components;
  }
};

using Metric = MetricTensor<double>;

/// diag(-c^2, 1, 1, 1) in (t, x, y, z).
template <class Scalar>
MetricTensor<Scalar> minkowski(Scalar c) {
  MetricTensor<Scalar> g;
  g.components(0, 0) = -c * c;
  return g;
}

/// Contravariant four-velocity of the condensate flow, paired with a metric.
template <class Scalar>
struct FourVelocity {
  Vector4<Scalar> components = Vector4<Scalar>::UnitX();
};

/// Normalisation g_ab V^a V^b.
template <class Scalar>
Scalar norm_squared(const MetricTensor<Scalar>& g, const FourVelocity<Scalar>& v) {
  return v.components.dot(g.components * v.components);
}

/// Flow at rest in the chart of a metric with diagonal time component:
/// V^t = c / sqrt(-g_tt), so that g_ab V^a V^b = -c^2. For the Minkowski
/// metric in (t, x, y, z) this is (1, 0, 0, 0); in (ct, x, y, z) it is (c, 0, 0, 0).
template <class Scalar>
FourVelocity<Scalar> comoving_velocity(const MetricTensor<Scalar>& g, Scalar c) {
  using std::sqrt;
  FourVelocity<Scalar> v;
  v.components = Vector4<Scalar>::Zero();
  v.components(0) = c / sqrt(-g.components(0, 0));
  return v;
}

/// Throws InputError unless g is exactly symmetric, invertible and of
/// signature (-,+,+,+).
template <class Scalar>
void validate(const MetricTensor<Scalar>& g) {
  if (!(g.components.transpose() == g.components)) throw InputError("metric is not symmetric");
  if (g.conformal_factor && !(*g.conformal_factor > Scalar(0)))
    throw InputError("conformal factor must be positive");
  // Congruence with diag(|g_ii|^-1/2) keeps the signature and removes the
  // c^2 spread between time and space entries before the eigenvalue floor.
  Vector4<Scalar> scale_by = Vector4<Scalar>::Ones();
  for (int i = 0; i < 4; ++i) {
    using std::abs;
    using std::sqrt;
    if (g.components(i, i) != Scalar(0)) scale_by(i) = Scalar(1) / sqrt(abs(g.components(i, i)));
  }
  const Matrix4<Scalar> scaled = scale_by.asDiagonal() * g.components * scale_by.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix4<Scalar>> solver(scaled, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const Scalar scale = ev.cwiseAbs().maxCoeff();
  const Scalar floor = scale * Eigen::NumTraits<Scalar>::epsilon() * Scalar(16);
  int negative = 0;
  int positive = 0;
  for (int i = 0; i < 4; ++i) {
    if (ev(i) < -floor) ++negative;
    else if (ev(i) > floor) ++positive;
  }
  if (negative + positive != 4) throw InputError("metric is singular");
  if (negative != 1) throw InputError("metric signature is not (-,+,+,+)");
}

namespace detail {

inline constexpr double kNormalizationTolerance = 1e-12;

template <class Scalar>
void require_normalized(const MetricTensor<Scalar>& g, const FourVelocity<Scalar>& v, Scalar c) {
  using std::abs;
  const Scalar norm = norm_squared(g, v);
  const Scalar target = -c * c;
  if (!(abs(norm - target) <= Scalar(kNormalizationTolerance) * abs(target)))
    throw InputError("four-velocity is not normalised to -c^2 under the supplied metric");
}

/// V_a V_b / c^2, indices lowered with g.
template <class Scalar>
Matrix4<Scalar> flow_outer(const MetricTensor<Scalar>& g, const FourVelocity<Scalar>& v, Scalar c) {
  const Vector4<Scalar> lowered = g.components * v.components;
  return lowered * lowered.transpose() / (c * c);
}

/// Spatial projector g_ab + V_a V_b / c^2.
///
/// When g has no time-space cross terms, the normalisation
/// g_tt (V^t)^2 + S = -c^2 with S = V^i g_ij V^j gives the time-time entry
/// as -g_tt S / c^2 without cancellation; it is exactly zero for a flow at rest.
template <class Scalar>
Matrix4<Scalar> spatial_projector(const MetricTensor<Scalar>& g, const FourVelocity<Scalar>& v, Scalar c) {
  Matrix4<Scalar> p = g.components + flow_outer(g, v, c);
  if (g.components.row(0).template tail<3>().isZero(Scalar(0))) {
    const auto spatial = v.components.template tail<3>();
    const Scalar s = spatial.dot(g.components.template bottomRightCorner<3, 3>() * spatial);
    p(0, 0) = -g.components(0, 0) * s / (c * c);
  }
  return p;
}

}  // namespace detail

/// Effective phonon metric
///   prefactor * [ g_ab + (1 - c_s^2/c^2) V_a V_b / c^2 ],
/// with the prefactor n0^2/(c_s (rho0 + p0)) stored as the conformal factor.
///
/// V is normalised to -c^2 under g; the 1/c^2 makes the flow term
/// independent of how the time coordinate is scaled, and for the comoving
/// flow on Minkowski (t, x, y, z) it reduces the bracket to diag(-c_s^2, 1, 1, 1).
/// Indices of V are lowered with the real metric g.
Metric effective_metric(const BackgroundState& bg, const Metric& g, const FourVelocity<double>& v);

/// Only the flow term prefactor * (1 - c_s^2/c^2) V_a V_b / c^2, lowered with g.
/// effective_metric == conformal_factor * g + analogue_metric componentwise.
Metric analogue_metric(const BackgroundState& bg, const Metric& g, const FourVelocity<double>& v);

// ---------------------------------------------------------------------------
// Time rescaling between photon and phonon descriptions
// ---------------------------------------------------------------------------

/// (t, x, y, z) -> ((c / c_s) t, x, y, z).
template <class Scalar>
Vector4<Scalar> rescale_time(const Vector4<Scalar>& event, Scalar c, Scalar cs) {
  if (!(cs > Scalar(0))) throw InputError("sound speed must be positive");
  Vector4<Scalar> out = event;
  out(0) = (c / cs) * event(0);
  return out;
}

template <class Scalar>
Vector4<Scalar> unrescale_time(const Vector4<Scalar>& event, Scalar c, Scalar cs) {
  if (!(cs > Scalar(0))) throw InputError("sound speed must be positive");
  Vector4<Scalar> out = event;
  out(0) = (cs / c) * event(0);
  return out;
}

/// d(t', x', y', z') / d(t, x, y, z).
template <class Scalar>
Matrix4<Scalar> rescale_time_jacobian(Scalar c, Scalar cs) {
  Matrix4<Scalar> j = Matrix4<Scalar>::Identity();
  j(0, 0) = c / cs;
  return j;
}

/// Components of a metric given in unprimed coordinates, re-expressed in the
/// rescaled chart: (J^-1)^T g J^-1. Applied to diag(-c^2, 1, 1, 1) this gives
/// diag(-c_s^2, 1, 1, 1).
template <class Scalar>
MetricTensor<Scalar> to_rescaled_chart(const MetricTensor<Scalar>& g, Scalar c, Scalar cs) {
  const Matrix4<Scalar> inv = rescale_time_jacobian(c, cs).inverse();
  MetricTensor<Scalar> out = g;
  out.components = inv.transpose() * g.components * inv;
  out.coords[0] = "t' [s]";
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

BackgroundState background_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const BackgroundState& bg);
Metric metric_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Metric& g);

}  // namespace phonon
