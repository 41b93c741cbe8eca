// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "phonon/bogoliubov.hpp"
#include "phonon/charts.hpp"
#include "phonon/fit.hpp"

using namespace phonon;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail, double seconds) {
  std::printf("criterion %d: %s  %s  (%.1f s)\n", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), pattern, args...);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

template <class F>
void guarded(int id, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    body(start);
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what(), seconds_since(start));
  }
}

}  // namespace

int main() {
  constexpr Eigen::Index kCutoff = 30;
  constexpr double kTol = 1e-10;
  const CoefficientOptions options{kTol};

  // 1. Optical anchor: a = h c^2 / L for h = 0.1, L = 1 um, within a factor 2 of 1e22.
  guarded(1, [&](auto start) {
    const double c = 3e8, length = 1e-6, h = 0.1;
    const double a = h * c * c / length;
    const bool ok = std::abs(a - 9e21) <= 1e-12 * 9e21 && a >= 0.5e22 && a <= 2e22 &&
                    std::abs(h_parameter(a, length, c) - h) <= 1e-15;
    report(1, ok, fmt("a = %.4g m/s^2", a), seconds_since(start));
  });

  // 2. Canonical and symmetry identities on the 10 x 10 trusted block.
  BogoliubovPair reference;
  bool have_reference = false;
  guarded(2, [&](auto start) {
    reference = compute_coefficients(Cavity(1e-6, 2e-6, 3e8), 0.1, kCutoff, options);
    have_reference = true;
    const double canonical = canonical_residual(reference, 10);
    const double symmetry = symmetry_residual(reference, 10);
    const bool ok = reference.trusted_block >= 10 && canonical < 1e-6 && symmetry < 1e-6;
    report(2, ok,
           fmt("trusted block %ld, canonical %.3g, symmetry %.3g", static_cast<long>(reference.trusted_block),
               canonical, symmetry),
           seconds_since(start));
  });

  // 3. Photon and phonon runs at equal h.
  guarded(3, [&](auto start) {
    const double c_photon = 3e8, l_photon = 1e-6, c_phonon = 1e-3, l_phonon = 1e-4;
    const double h_photon = h_parameter(0.1 * c_photon * c_photon / l_photon, l_photon, c_photon);
    const double h_phonon = h_parameter(0.1 * c_phonon * c_phonon / l_phonon, l_phonon, c_phonon);
    const BogoliubovPair photon = have_reference && h_photon == 0.1
                                      ? reference
                                      : compute_coefficients(Cavity(l_photon, 2 * l_photon, c_photon), h_photon,
                                                             kCutoff, options);
    const auto phonon = compute_coefficients(Cavity(l_phonon, 2 * l_phonon, c_phonon), h_phonon, kCutoff, options);
    const double da = max_abs(photon.alpha - phonon.alpha);
    const double db = max_abs(photon.beta - phonon.beta);
    const bool ok = std::abs(h_photon - h_phonon) <= 1e-15 && da < 1e-10 && db < 1e-10;
    report(3, ok, fmt("h %.17g vs %.17g, max|dalpha| %.3g, max|dbeta| %.3g", h_photon, h_phonon, da, db),
           seconds_since(start));
  });

  // 4. Small-h slope and the Galilean limit.
  guarded(4, [&](auto start) {
    const auto hs = log_space(1e-3, 1e-2, 5);
    std::vector<double> totals;
    for (double h : hs) totals.push_back(particle_number(compute_coefficients(Cavity(1.0, 2.0, 1.0), h, 20, options)).total);
    const double slope = log_log_slope(hs, totals);
    const double galilean = particle_number(galilean_coefficients(kCutoff)).total;
    const bool ok = std::abs(slope - 2.0) <= 0.05 && galilean == 0.0;
    report(4, ok, fmt("slope %.6f, Galilean total %g", slope, galilean), seconds_since(start));
  });

  // 5. Orders of the Galilean expansion residuals, photon and phonon charts.
  guarded(5, [&](auto start) {
    const auto eps = log_space(1e-3, 1e-1, 9);
    bool ok = true;
    std::string detail;
    for (double c : {3e8, 1e-3}) {
      const RindlerChart<double> chart(c);
      const double a = 0.1 * c * c / 1e-6;
      std::vector<double> dt, dx;
      for (double e : eps) {
        const auto r = expansion_residual(chart, e * c / a, a);
        dt.push_back(r.t);
        dx.push_back(r.x);
      }
      const double st = log_log_slope(eps, dt), sx = log_log_slope(eps, dx);
      ok = ok && std::abs(st - 3.0) <= 0.05 && std::abs(sx - 4.0) <= 0.05;
      detail += fmt("c=%g: time %.4f position %.4f; ", c, st, sx);
    }
    report(5, ok, detail, seconds_since(start));
  });

  // 6. Mode-basis health.
  guarded(6, [&](auto start) {
    const Cavity cavity(1.0, 2.0, 1.0);
    const WedgeCavity wedge = wedge_from_h(0.1, 1.0);
    std::vector<ModeFunction> inertial, rindler;
    for (int n = 1; n <= 10; ++n) {
      inertial.push_back(inertial_mode(cavity, n));
      rindler.push_back(rindler_mode(wedge, n));
    }
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(10, 10);
    const double gi = max_abs(gram_matrix(inertial) - id);
    const double gr = max_abs(gram_matrix(rindler) - id);
    const Metric g = minkowski(1.0);
    std::vector<double> steps, residuals;
    for (double s : {4e-3, 2e-3, 1e-3, 5e-4}) {
      steps.push_back(s);
      residuals.push_back(wave_equation_residual(inertial[2], g, 0.3, 1.37, s));
    }
    const double slope = log_log_slope(steps, residuals);
    const bool ok = gi < 1e-10 && gr < 1e-10 && std::abs(slope - 2.0) <= 0.1;
    report(6, ok, fmt("gram inertial %.3g, gram Rindler %.3g, stencil slope %.4f", gi, gr, slope),
           seconds_since(start));
  });

  // 7. compose(pair, inverse(pair)) on the trusted block of criterion 2's pair.
  guarded(7, [&](auto start) {
    if (!have_reference) reference = compute_coefficients(Cavity(1e-6, 2e-6, 3e8), 0.1, kCutoff, options);
    const auto round = compose(reference, inverse(reference));
    const Eigen::Index k = reference.trusted_block;
    const double da = max_abs(round.alpha.topLeftCorner(k, k) - Eigen::MatrixXcd::Identity(k, k));
    const double db = max_abs(round.beta.topLeftCorner(k, k));
    const bool ok = k > 0 && da < 1e-8 && db < 1e-8;
    report(7, ok, fmt("trusted block %ld, max|alpha - I| %.3g, max|beta| %.3g", static_cast<long>(k), da, db),
           seconds_since(start));
  });

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
