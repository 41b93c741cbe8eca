#include "phonon/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

namespace phonon {

double h_parameter(double acceleration, double length, double c_eff) {
  if (!(acceleration > 0.0) || !(length > 0.0) || !(c_eff > 0.0))
    throw InputError("h_parameter needs positive acceleration, length and signal speed");
  return acceleration * length / (c_eff * c_eff);
}

BogoliubovPair compute_coefficients(const Cavity& cavity, double h, Eigen::Index cutoff,
                                    const CoefficientOptions& options) {
  if (cutoff < 1) throw InputError("cutoff must be >= 1");
  if (!(options.tol > 0.0)) throw InputError("tolerance must be positive");
  const WedgeCavity wedge = wedge_from_h(h, cavity.length());
  const Cavity box(wedge.chi_left(), wedge.chi_right(), cavity.c_eff());

  std::vector<ModeFunction> inertial;
  std::vector<ModeFunction> inertial_conj;
  std::vector<ModeFunction> accelerated;
  for (int n = 1; n <= cutoff; ++n) {
    inertial.push_back(inertial_mode(box, n));
    inertial_conj.push_back(inertial.back().conjugate());
    accelerated.push_back(rindler_mode(wedge, n, cavity.c_eff()));
  }

  const KgOptions kg{options.tol, options.max_panels, KgForm::inertial};
  BogoliubovPair pair;
  pair.alpha.resize(cutoff, cutoff);
  pair.beta.resize(cutoff, cutoff);
  pair.h = h;
  pair.tol = options.tol;

  auto fill_row = [&](Eigen::Index m) {
    for (Eigen::Index n = 0; n < cutoff; ++n) {
      pair.alpha(m, n) = kg_inner_product(accelerated[m], inertial[n], kg).value;
      pair.beta(m, n) = -kg_inner_product(accelerated[m], inertial_conj[n], kg).value;
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<Eigen::Index>(threads, cutoff));
  if (threads <= 1) {
    for (Eigen::Index m = 0; m < cutoff; ++m) fill_row(m);
  } else {
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(cutoff));
    {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          for (Eigen::Index m = w; m < cutoff; m += threads) {
            try {
              fill_row(m);
            } catch (...) {
              failures[static_cast<std::size_t>(m)] = std::current_exception();
            }
          }
        });
      }
    }
    for (const auto& failure : failures)
      if (failure) std::rethrow_exception(failure);
  }

  pair.trusted_block = measure_trusted_block(pair, 100.0 * options.tol);
  return pair;
}

ParticleNumbers particle_number(const BogoliubovPair& pair) {
  ParticleNumbers out;
  const Eigen::Index k = pair.trusted_block;
  out.per_mode.assign(static_cast<std::size_t>(k), 0.0);
  for (Eigen::Index m = 0; m < k; ++m) {
    double sum = 0.0;
    for (Eigen::Index n = 0; n < k; ++n) sum += std::norm(pair.beta(m, n));
    out.per_mode[static_cast<std::size_t>(m)] = sum;
    out.total += sum;
  }
  return out;
}

BogoliubovPair galilean_coefficients(Eigen::Index cutoff) {
  if (cutoff < 1) throw InputError("cutoff must be >= 1");
  BogoliubovPair pair;
  pair.alpha = BogoliubovPair::Matrix::Identity(cutoff, cutoff);
  pair.beta = BogoliubovPair::Matrix::Zero(cutoff, cutoff);
  pair.h = 0.0;
  pair.tol = 0.0;
  pair.trusted_block = cutoff;
  return pair;
}

namespace {

nlohmann::json matrix_to_json(const BogoliubovPair::Matrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

BogoliubovPair::Matrix matrix_from_json(const nlohmann::json& doc, Eigen::Index n, const char* name) {
  if (!doc.is_array() || doc.size() != static_cast<std::size_t>(n * n))
    throw InputError(std::string(name) + " must hold cutoff^2 [re, im] entries");
  BogoliubovPair::Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& e = doc[static_cast<std::size_t>(i * n + j)];
      if (!e.is_array() || e.size() != 2) throw InputError(std::string(name) + " entries must be [re, im]");
      m(i, j) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return m;
}

}  // namespace

nlohmann::json to_json(const BogoliubovPair& pair) {
  return {{"cutoff", pair.cutoff()},
          {"h", pair.h},
          {"tol", pair.tol},
          {"alpha", matrix_to_json(pair.alpha)},
          {"beta", matrix_to_json(pair.beta)},
          {"trusted_block", pair.trusted_block}};
}

BogoliubovPair pair_from_json(const nlohmann::json& doc) {
  BogoliubovPair pair;
  try {
    const auto n = doc.at("cutoff").get<Eigen::Index>();
    if (n < 1) throw InputError("cutoff must be >= 1");
    pair.h = doc.at("h").get<double>();
    pair.tol = doc.at("tol").get<double>();
    pair.alpha = matrix_from_json(doc.at("alpha"), n, "alpha");
    pair.beta = matrix_from_json(doc.at("beta"), n, "beta");
    pair.trusted_block = doc.at("trusted_block").get<Eigen::Index>();
    if (pair.trusted_block < 0 || pair.trusted_block > n) throw InputError("trusted_block out of range");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("pair: ") + e.what());
  }
  return pair;
}

}  // namespace phonon
