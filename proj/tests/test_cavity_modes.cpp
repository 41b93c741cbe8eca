#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "phonon/cavity_modes.hpp"
#include "phonon/fit.hpp"

using namespace phonon;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson rule, used as an oracle independent of the adaptive integrator.
template <class F>
double simpson(F f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

std::vector<ModeFunction> inertial_basis(const Cavity& cavity, int n) {
  std::vector<ModeFunction> out;
  for (int k = 1; k <= n; ++k) out.push_back(inertial_mode(cavity, k));
  return out;
}

std::vector<ModeFunction> rindler_basis(const WedgeCavity& wedge, int n) {
  std::vector<ModeFunction> out;
  for (int k = 1; k <= n; ++k) out.push_back(rindler_mode(wedge, k));
  return out;
}

}  // namespace

TEST(Cavity, Invariants) {
  EXPECT_THROW(Cavity(0.0, 1.0, 1.0), InputError);
  EXPECT_THROW(Cavity(2.0, 1.0, 1.0), InputError);
  EXPECT_THROW(Cavity(1.0, 2.0, 0.0), InputError);
  EXPECT_THROW(WedgeCavity(0.0, 1.0), DomainError);
  EXPECT_THROW(WedgeCavity(2.0, 1.0), InputError);
  const WedgeCavity w(9.5, 10.5);
  EXPECT_EQ(w.chi0(), 10.0);
  EXPECT_EQ(w.length(), 1.0);
}

TEST(InertialMode, DirichletWalls) {
  const Cavity cavity(2.0, 5.0, 340.0);
  for (int n = 1; n <= 6; ++n) {
    for (double t : {0.0, 0.013, -2.0}) {
      EXPECT_EQ(std::abs(inertial_mode(cavity, n, t, cavity.x_left()).value), 0.0);
      EXPECT_LT(std::abs(inertial_mode(cavity, n, t, cavity.x_right()).value), 1e-15);
    }
  }
}

TEST(InertialMode, MidpointValueAndSpectrum) {
  const Cavity cavity(1.0, 3.0, 2.0);
  const auto s = inertial_mode(cavity, 1, 0.0, 2.0);
  EXPECT_NEAR(s.value.real(), 1.0 / std::sqrt(kPi), 1e-15);
  EXPECT_NEAR(s.value.real(), 0.564190, 1e-6);
  EXPECT_EQ(s.value.imag(), 0.0);
  EXPECT_EQ(inertial_mode(cavity, 2).frequency() / inertial_mode(cavity, 1).frequency(), 2.0);
  EXPECT_THROW(inertial_mode(cavity, 1, 0.0, 3.5), DomainError);
  EXPECT_THROW(inertial_mode(cavity, 0), InputError);
}

TEST(InertialMode, DerivativesMatchFiniteDifferences) {
  const Cavity cavity(1.0, 2.0, 3.0);
  const double t = 0.17, x = 1.3, h = 1e-6;
  for (int n : {1, 4}) {
    const auto s = inertial_mode(cavity, n, t, x);
    const Complex dt = (inertial_mode(cavity, n, t + h, x).value - inertial_mode(cavity, n, t - h, x).value) / (2 * h);
    const Complex dx = (inertial_mode(cavity, n, t, x + h).value - inertial_mode(cavity, n, t, x - h).value) / (2 * h);
    EXPECT_LT(std::abs(dt - s.d_time), 1e-7 * std::abs(s.d_time));
    EXPECT_LT(std::abs(dx - s.d_space), 1e-7 * std::abs(s.d_space));
  }
}

TEST(RindlerMode, DirichletWallsAndFrequency) {
  const WedgeCavity wedge(1.0, std::exp(kPi));
  EXPECT_NEAR(rindler_mode(wedge, 1).frequency(), 1.0, 1e-15);
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(std::abs(rindler_mode(wedge, n, 0.7, wedge.chi_left()).value), 0.0);
    EXPECT_LT(std::abs(rindler_mode(wedge, n, 0.7, wedge.chi_right()).value), 1e-14);
  }
  EXPECT_THROW(rindler_mode(wedge, 1, 0.0, 0.5), DomainError);
}

TEST(RindlerMode, SelfNormAgainstSimpsonOracle) {
  const WedgeCavity wedge = wedge_from_h(0.7, 2.0);
  for (int n = 1; n <= 4; ++n) {
    const double omega = n * kPi / wedge.log_ratio();
    // (v, v) = 2 Omega Int |v|^2 dchi / chi at eta = 0.
    const double oracle = simpson(
        [&](double chi) {
          const double v = std::sin(omega * std::log(chi / wedge.chi_left())) / std::sqrt(n * kPi);
          return 2.0 * omega * v * v / chi;
        },
        wedge.chi_left(), wedge.chi_right(), 20000);
    EXPECT_NEAR(oracle, 1.0, 1e-10);
    const auto mode = rindler_mode(wedge, n);
    EXPECT_NEAR(kg_inner_product(mode, mode).value.real(), oracle, 1e-10);
  }
}

TEST(KleinGordon, InertialNormsAndConjugates) {
  const Cavity cavity(0.5, 1.5, 7.0);
  for (int n = 1; n <= 5; ++n) {
    const auto u = inertial_mode(cavity, n);
    const Complex self = kg_inner_product(u, u).value;
    EXPECT_NEAR(self.real(), 1.0, 1e-10);
    EXPECT_NEAR(self.imag(), 0.0, 1e-10);
    EXPECT_NEAR(kg_inner_product(u.conjugate(), u.conjugate()).value.real(), -1.0, 1e-10);
    for (int m = 1; m <= 5; ++m) {
      if (m == n) continue;
      EXPECT_LT(std::abs(kg_inner_product(inertial_mode(cavity, m), u).value), 1e-10);
    }
  }
}

TEST(KleinGordon, GramMatricesAreIdentity) {
  const Cavity cavity(3.0, 4.0, 1.0);
  const WedgeCavity wedge = wedge_from_h(0.5, 1.0);
  const auto gi = gram_matrix(inertial_basis(cavity, 10));
  const auto gr = gram_matrix(rindler_basis(wedge, 10));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(10, 10);
  EXPECT_LT((gi - id).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((gr - id).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(KleinGordon, HermitianSymmetryAndConjugation) {
  const WedgeCavity wedge = wedge_from_h(0.3, 1.0);
  const Cavity box(wedge.chi_left(), wedge.chi_right(), 1.0);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> index(1, 8);
  std::bernoulli_distribution coin;
  auto random_mode = [&]() {
    ModeFunction m = coin(rng) ? inertial_mode(box, index(rng)) : rindler_mode(wedge, index(rng));
    return coin(rng) ? m.conjugate() : m;
  };
  const KgOptions tight{1e-13};
  for (int trial = 0; trial < 40; ++trial) {
    const auto phi = random_mode();
    const auto psi = random_mode();
    const Complex ab = kg_inner_product(phi, psi, tight).value;
    const Complex ba = kg_inner_product(psi, phi, tight).value;
    EXPECT_LT(std::abs(ab - std::conj(ba)), 1e-12);
    const Complex conj = kg_inner_product(phi.conjugate(), psi.conjugate(), tight).value;
    EXPECT_LT(std::abs(conj + ba), 1e-12);
  }
}

TEST(KleinGordon, ScaleInvariance) {
  const double lambda = 37.0, mu = 1e-5;
  const Cavity a(1.0, 2.5, 3.0);
  const Cavity b(lambda * 1.0, lambda * 2.5, mu * 3.0);
  const WedgeCavity wa(1.0, 2.5), wb(lambda * 1.0, lambda * 2.5);
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const Complex pa = kg_inner_product(rindler_mode(wa, m), inertial_mode(a, n), KgOptions{1e-13}).value;
      const Complex pb = kg_inner_product(rindler_mode(wb, m), inertial_mode(b, n), KgOptions{1e-13}).value;
      EXPECT_LT(std::abs(pa - pb), 1e-12);
      const Complex qa = kg_inner_product(inertial_mode(a, m), inertial_mode(a, n).conjugate()).value;
      const Complex qb = kg_inner_product(inertial_mode(b, m), inertial_mode(b, n).conjugate()).value;
      EXPECT_LT(std::abs(qa - qb), 1e-12);
    }
  }
}

TEST(KleinGordon, RindlerFormMatchesInertialForm) {
  const WedgeCavity wedge = wedge_from_h(1.2, 1.0);
  for (int n = 1; n <= 6; ++n) {
    const auto v = rindler_mode(wedge, n);
    const Complex rindler = kg_inner_product(v, v, KgOptions{1e-10, 10000, KgForm::rindler}).value;
    const Complex inertial = kg_inner_product(v, v, KgOptions{1e-10, 10000, KgForm::inertial}).value;
    EXPECT_LT(std::abs(rindler - inertial), 1e-10);
  }
}

TEST(KleinGordon, MixedProductAgainstSimpsonOracle) {
  // alpha-type overlap (v_m, u_n) = Int v_m u_n (omega_n / c + Omega_m / x) dx on t = 0,
  // derived by hand from the product definition.
  const WedgeCavity wedge = wedge_from_h(0.4, 2.0);
  const double c = 5.0;
  const Cavity box(wedge.chi_left(), wedge.chi_right(), c);
  for (int m : {1, 2, 5}) {
    for (int n : {1, 3, 4}) {
      const double om = n * kPi * c / box.length();
      const double big = m * kPi / wedge.log_ratio();
      const double oracle = simpson(
          [&](double x) {
            const double u = std::sin(n * kPi * (x - box.x_left()) / box.length()) / std::sqrt(n * kPi);
            const double v = std::sin(big * std::log(x / wedge.chi_left())) / std::sqrt(m * kPi);
            return v * u * (om / c + big / x);
          },
          box.x_left(), box.x_right(), 40000);
      const Complex value = kg_inner_product(rindler_mode(wedge, m, c), inertial_mode(box, n)).value;
      EXPECT_NEAR(value.real(), oracle, 1e-10) << m << "," << n;
      EXPECT_NEAR(value.imag(), 0.0, 1e-12);
    }
  }
}

TEST(KleinGordon, DisjointSupports) {
  const Cavity a(1.0, 2.0, 1.0), b(3.0, 4.0, 1.0);
  const auto r = kg_inner_product(inertial_mode(a, 1), inertial_mode(b, 1));
  EXPECT_TRUE(r.disjoint);
  EXPECT_EQ(r.value, Complex(0.0, 0.0));
}

TEST(KleinGordon, ToleranceFailureCarriesEstimate) {
  const Cavity cavity(1.0, 2.0, 1.0);
  const auto u = inertial_mode(cavity, 40);
  EXPECT_THROW(kg_inner_product(u, u, KgOptions{1e-15, 3}), ToleranceError);
}

TEST(WedgeFromH, Geometry) {
  const WedgeCavity w = wedge_from_h(0.1, 1.0);
  EXPECT_NEAR(w.chi_left(), 9.5, 1e-14);
  EXPECT_NEAR(w.chi_right(), 10.5, 1e-14);
  EXPECT_GT(wedge_from_h(2.0 - 1e-9, 1.0).chi_left(), 0.0);
  EXPECT_LT(wedge_from_h(2.0 - 1e-9, 1.0).chi_left(), 1e-8);
  EXPECT_THROW(wedge_from_h(2.0, 1.0), DomainError);
  EXPECT_THROW(wedge_from_h(0.0, 1.0), InputError);
  EXPECT_THROW(wedge_from_h(-0.1, 1.0), InputError);
}

TEST(WaveEquation, InertialModeConvergesAtSecondOrder) {
  const double c = 1e-3;
  const Cavity cavity(1e-4, 2e-4, c);
  Metric phonon = minkowski(c);  // components of the phonon metric, conformal factor ignored
  phonon.conformal_factor = 17.0;
  const auto mode = inertial_mode(cavity, 3);
  const double x = 1.37e-4, t = 0.021;
  std::vector<double> steps, residuals;
  for (double s : {4e-6, 2e-6, 1e-6, 5e-7}) {
    steps.push_back(s);
    residuals.push_back(wave_equation_residual(mode, phonon, t, x, s));
  }
  EXPECT_NEAR(log_log_slope(steps, residuals), 2.0, 0.1);
}

TEST(WaveEquation, RindlerModeSolvesWedgeEquation) {
  const WedgeCavity wedge = wedge_from_h(0.8, 1.0);
  const auto mode = rindler_mode(wedge, 2);
  std::vector<double> steps, residuals;
  for (double s : {4e-3, 2e-3, 1e-3}) {
    steps.push_back(s);
    residuals.push_back(wave_equation_residual(mode, rindler_wedge_metric, 0.3, wedge.chi0(), s));
  }
  EXPECT_NEAR(log_log_slope(steps, residuals), 2.0, 0.1);
}

TEST(WaveEquation, ConstantFieldAndWrongDispersion) {
  const Cavity cavity(1.0, 2.0, 1.0);
  const Metric g = minkowski(1.0);
  const ModeFunction constant(ModeChart::inertial, 1, 1.0, 2.0, 1.0, 0.0,
                              [](double, double) { return ModeSample{Complex(0.25, 0.0), {}, {}}; });
  EXPECT_EQ(wave_equation_residual(constant, g, 0.0, 1.5, 1e-3), 0.0);

  const double omega_wrong = 2.0 * kPi;  // doubled
  const ModeFunction wrong(ModeChart::inertial, 1, 1.0, 2.0, 1.0, omega_wrong, [&](double t, double x) {
    const Complex v = std::sin(kPi * (x - 1.0)) * std::exp(Complex(0.0, -omega_wrong * t)) / std::sqrt(kPi);
    return ModeSample{v, {}, {}};
  });
  double previous = 0.0;
  for (double s : {1e-2, 1e-3, 1e-4}) {
    const double r = wave_equation_residual(wrong, g, 0.1, 1.4, s);
    EXPECT_GT(r, 1.0);
    if (previous > 0.0) EXPECT_NEAR(r, previous, 0.01 * previous);
    previous = r;
  }
}

TEST(WaveEquation, StencilNearWall) {
  const Cavity cavity(1.0, 2.0, 1.0);
  EXPECT_THROW(wave_equation_residual(inertial_mode(cavity, 1), minkowski(1.0), 0.0, 1.0005, 1e-3), DomainError);
}
