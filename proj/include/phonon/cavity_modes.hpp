#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "phonon/acoustic_metric.hpp"
#include "phonon/errors.hpp"
#include "phonon/quadrature.hpp"

namespace phonon {

using Complex = std::complex<double>;

/// Rigid 1+1D box [x_L, x_R] in inertial coordinates.
class Cavity {
 public:
  Cavity(double x_left, double x_right, double c_eff);

  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_right_; }
  double c_eff() const noexcept { return c_eff_; }
  double length() const noexcept { return x_right_ - x_left_; }

 private:
  double x_left_;
  double x_right_;
  double c_eff_;
};

/// Image of the cavity in the right Rindler wedge, walls at fixed chi.
class WedgeCavity {
 public:
  WedgeCavity(double chi_left, double chi_right);

  double chi_left() const noexcept { return chi_left_; }
  double chi_right() const noexcept { return chi_right_; }
  /// Rindler position of the cavity centre.
  double chi0() const noexcept { return 0.5 * (chi_left_ + chi_right_); }
  double length() const noexcept { return chi_right_ - chi_left_; }
  /// ln(chi_R / chi_L).
  double log_ratio() const noexcept { return log_ratio_; }

 private:
  double chi_left_;
  double chi_right_;
  double log_ratio_;
};

/// Wedge cavity of proper length L whose centre has h = L / chi0.
/// Requires 0 < h < 2 (h >= 2 puts the horizon inside the cavity).
WedgeCavity wedge_from_h(double h, double length);

enum class ModeChart { inertial, rindler };

/// Value and first derivatives of a mode. For inertial modes the derivatives
/// are (d/dt, d/dx); for Rindler modes (d/d eta, d/d chi).
struct ModeSample {
  Complex value;
  Complex d_time;
  Complex d_space;
};

/// A Dirichlet mode of the cavity, evaluated through a closure over
/// (time, space) in its own chart.
class ModeFunction {
 public:
  using Evaluator = std::function<ModeSample(double time, double space)>;

  ModeFunction(ModeChart chart, int index, double lower, double upper, double c_eff, double frequency,
               Evaluator eval, bool conjugated = false);

  ModeChart chart() const noexcept { return chart_; }
  int index() const noexcept { return index_; }
  /// Spatial support, in x (inertial) or chi (Rindler).
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double c_eff() const noexcept { return c_eff_; }
  /// omega_n in rad/s for inertial modes, Omega_n (conjugate to eta) for Rindler modes.
  double frequency() const noexcept { return frequency_; }
  bool conjugated() const noexcept { return conjugated_; }

  /// Throws DomainError outside [lower, upper].
  ModeSample operator()(double time, double space) const;
  ModeFunction conjugate() const;

 private:
  ModeChart chart_;
  int index_;
  double lower_;
  double upper_;
  double c_eff_;
  double frequency_;
  Evaluator eval_;
  bool conjugated_;
};

/// u_n(t, x) = (n pi)^(-1/2) sin(n pi (x - x_L) / L) exp(-i omega_n t), omega_n = n pi c_eff / L.
ModeSample inertial_mode(const Cavity& cavity, int n, double t, double x);
ModeFunction inertial_mode(const Cavity& cavity, int n);

/// v_n(eta, chi) = (n pi)^(-1/2) sin(n pi ln(chi / chi_L) / D) exp(-i Omega_n eta),
/// Omega_n = n pi / D, D = ln(chi_R / chi_L).
ModeSample rindler_mode(const WedgeCavity& wedge, int n, double eta, double chi);
/// The wedge mode carries c_eff only so that it can be paired with inertial
/// modes on t = 0; its own evaluation does not depend on it.
ModeFunction rindler_mode(const WedgeCavity& wedge, int n, double c_eff = 1.0);

/// Integration variable for the Klein-Gordon product on the t = 0 (eta = 0) slice.
enum class KgForm {
  automatic,  // Rindler form when both modes are Rindler, inertial otherwise
  inertial,   // uniform in x
  rindler,    // uniform in s = ln(chi / chi_L) / D, absorbing the 1/chi weight
};

struct KgOptions {
  double abs_tol = 1e-10;
  std::size_t max_panels = 10000;
  KgForm form = KgForm::automatic;
};

struct KgProduct {
  Complex value;
  double error = 0.0;
  /// Set when the supports do not overlap; value is then exactly zero.
  bool disjoint = false;
};

/// Klein-Gordon product on the matching surface t = 0, where x = chi.
///
///   (phi, psi) = -i Int [ phi T(psi)* - psi* T(phi) ] dx
///
/// with T = (1/c_eff) d/dt for inertial modes and T = (1/chi) d/d eta for
/// Rindler modes. The two agree through d/dt = (c_eff / x) d/d eta on t = 0,
/// so the inertial-chart form -(i/c_eff) Int [..d/dt..] dx and the Rindler-chart
/// form -i Int [..d/d eta..] dchi/chi are the same integral.
///
/// Linear in the first argument, antilinear in the second.
/// Throws ToleranceError if quadrature does not converge.
KgProduct kg_inner_product(const ModeFunction& phi, const ModeFunction& psi, const KgOptions& options = {});

/// G_mn = (modes[m], modes[n]).
Eigen::MatrixXcd gram_matrix(const std::vector<ModeFunction>& modes, const KgOptions& options = {});

/// Diagonal 1+1D metric components at a point.
struct DiagonalMetric2 {
  double g_time;
  double g_space;
};

/// Wedge metric -chi^2 d(eta)^2 + d(chi)^2 in (eta, chi).
inline DiagonalMetric2 rindler_wedge_metric(double /*eta*/, double chi) { return {-chi * chi, 1.0}; }

using MetricField = std::function<DiagonalMetric2(double time, double space)>;

/// |Box phi| at (time, space), Box from the divergence form
///   (1/sqrt(-g)) d_a( sqrt(-g) g^ab d_b phi )
/// for a diagonal 2D metric field, discretised with second-order flux
/// differences. `step` is the spatial step; the time step is step / (2 c_loc)
/// with c_loc = sqrt(-g_time / g_space) at the event (a Courant number of one
/// makes the stencil exact for 1+1D waves and hides the truncation error).
///
/// Throws DomainError if the stencil leaves the mode's support.
double wave_equation_residual(const ModeFunction& mode, const MetricField& metric, double time, double space,
                              double step);

/// Same, with the constant (t, x) block of a 4x4 metric. The block must be diagonal.
double wave_equation_residual(const ModeFunction& mode, const Metric& metric, double time, double space,
                              double step);

}  // namespace phonon
