#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "phonon/cavity_modes.hpp"

namespace phonon {

/// Bogoliubov transformation between two truncated mode bases,
///   v_m = sum_n ( alpha_mn u_n + beta_mn u_n* ),
/// with alpha_mn = (v_m, u_n) and beta_mn = -(v_m, u_n*).
///
/// Index convention: beta is stored row = accelerated mode, column =
/// inertial mode, the same as alpha. The transposed convention
/// beta'_mn = -(v_n, u_m*) is available through beta_transposed(); the
/// identities below hold for the stored orientation only.
///
/// trusted_block is the largest K such that on the leading K x K block
///   |alpha alpha^+ - beta beta^+ - I|_max   and   |alpha beta^T - beta alpha^T|_max
/// are both below 100 * tol. It is measured, never assumed.
template <class Scalar>
struct BogoliubovTransform {
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix alpha;
  Matrix beta;
  Scalar h = 0;
  Scalar tol = 0;
  Eigen::Index trusted_block = 0;

  Eigen::Index cutoff() const { return alpha.rows(); }
};

using BogoliubovPair = BogoliubovTransform<double>;

/// max |alpha alpha^+ - beta beta^+ - I| over the leading block x block entries.
template <class Scalar>
Scalar canonical_residual(const BogoliubovTransform<Scalar>& pair, Eigen::Index block) {
  using Matrix = typename BogoliubovTransform<Scalar>::Matrix;
  if (block == 0) return Scalar(0);
  const Matrix r = pair.alpha * pair.alpha.adjoint() - pair.beta * pair.beta.adjoint() -
                   Matrix::Identity(pair.cutoff(), pair.cutoff());
  return r.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

/// max |alpha beta^T - beta alpha^T| over the leading block x block entries.
template <class Scalar>
Scalar symmetry_residual(const BogoliubovTransform<Scalar>& pair, Eigen::Index block) {
  using Matrix = typename BogoliubovTransform<Scalar>::Matrix;
  if (block == 0) return Scalar(0);
  const Matrix r = pair.alpha * pair.beta.transpose() - pair.beta * pair.alpha.transpose();
  return r.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

/// Largest K whose leading block satisfies both identities below `threshold`.
template <class Scalar>
Eigen::Index measure_trusted_block(const BogoliubovTransform<Scalar>& pair, Scalar threshold) {
  using Matrix = typename BogoliubovTransform<Scalar>::Matrix;
  const Eigen::Index n = pair.cutoff();
  using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const RealMatrix canonical =
      (pair.alpha * pair.alpha.adjoint() - pair.beta * pair.beta.adjoint() - Matrix::Identity(n, n)).cwiseAbs();
  const RealMatrix symmetry = (pair.alpha * pair.beta.transpose() - pair.beta * pair.alpha.transpose()).cwiseAbs();
  Eigen::Index k = 0;
  // The block residual is a max over a growing set, so it is monotone in K.
  while (k < n) {
    bool ok = true;
    for (Eigen::Index i = 0; i <= k && ok; ++i) {
      ok = canonical(i, k) < threshold && canonical(k, i) < threshold && symmetry(i, k) < threshold &&
           symmetry(k, i) < threshold;
    }
    if (!ok) break;
    ++k;
  }
  return k;
}

/// The stored beta transposed, i.e. beta'_mn = -(v_n, u_m*).
template <class Scalar>
typename BogoliubovTransform<Scalar>::Matrix beta_transposed(const BogoliubovTransform<Scalar>& pair) {
  return pair.beta.transpose();
}

/// a L / c_eff^2. All inputs must be positive.
double h_parameter(double acceleration, double length, double c_eff);

struct CoefficientOptions {
  double tol = 1e-10;
  std::size_t max_panels = 10000;
  /// Worker threads for matrix assembly; 0 picks hardware concurrency.
  /// Every element is an independent quadrature, so the result does not
  /// depend on this value.
  unsigned threads = 0;
};

/// Sudden transition from inertial to uniform acceleration.
///
/// The wedge cavity has proper length cavity.length() and h = L / chi0;
/// the inertial walls coincide with it on t = 0 (x_L = chi_L, x_R = chi_R)
/// and carry cavity.c_eff(). Elements are Klein-Gordon products on t = 0.
/// Throws DomainError for h outside (0, 2), ToleranceError from quadrature.
BogoliubovPair compute_coefficients(const Cavity& cavity, double h, Eigen::Index cutoff,
                                    const CoefficientOptions& options = {});

struct ParticleNumbers {
  std::vector<double> per_mode;
  double total = 0.0;
};

/// N_m = sum_n |beta_mn|^2 over the trusted block, summed in index order.
ParticleNumbers particle_number(const BogoliubovPair& pair);

/// Apply `first`, then `second`:
///   alpha = alpha2 alpha1 + beta2 beta1*,   beta = alpha2 beta1 + beta2 alpha1*.
/// The result trusts the smaller of the two blocks and its h label is the
/// sum of the inputs' labels, so pair then inverse(pair) is labelled 0.
/// Throws InputError on cutoff mismatch.
template <class Scalar>
BogoliubovTransform<Scalar> compose(const BogoliubovTransform<Scalar>& first,
                                    const BogoliubovTransform<Scalar>& second) {
  if (first.cutoff() != second.cutoff()) throw InputError("cannot compose pairs with different cutoffs");
  BogoliubovTransform<Scalar> out;
  out.alpha = second.alpha * first.alpha + second.beta * first.beta.conjugate();
  out.beta = second.alpha * first.beta + second.beta * first.alpha.conjugate();
  out.h = first.h + second.h;
  out.tol = std::max(first.tol, second.tol);
  out.trusted_block = std::min(first.trusted_block, second.trusted_block);
  return out;
}

/// Maps the accelerated basis back to the inertial one: (alpha^+, -beta^T).
/// The h label is negated. Throws InputError when there is no trusted
/// block or the identities on it are worse than 1e-4.
template <class Scalar>
BogoliubovTransform<Scalar> inverse(const BogoliubovTransform<Scalar>& pair) {
  constexpr double kMaxResidual = 1e-4;
  if (pair.trusted_block == 0) throw InputError("refusing to invert: pair has no trusted block");
  const Scalar residual = std::max(canonical_residual(pair, pair.trusted_block),
                                   symmetry_residual(pair, pair.trusted_block));
  if (!(residual <= Scalar(kMaxResidual)))
    throw InputError("refusing to invert: identity residual on the trusted block exceeds 1e-4");
  BogoliubovTransform<Scalar> out;
  out.alpha = pair.alpha.adjoint();
  out.beta = -pair.beta.transpose();
  out.h = -pair.h;
  out.tol = pair.tol;
  out.trusted_block = pair.trusted_block;
  return out;
}

/// Identity transformation (alpha = I, beta = 0, h = 0): the Galilean limit.
BogoliubovPair galilean_coefficients(Eigen::Index cutoff);

nlohmann::json to_json(const BogoliubovPair& pair);
BogoliubovPair pair_from_json(const nlohmann::json& doc);

}  // namespace phonon
