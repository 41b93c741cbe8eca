#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "phonon/errors.hpp"

namespace phonon {

template <class Value>
struct QuadratureResult {
  Value value{};
  double error = 0.0;
  std::size_t panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_panels = 10000;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class Value>
struct Panel {
  double lo;
  double hi;
  Value value;
  double error;
};

template <class Value, class Func>
Panel<Value> kronrod21(const Func& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const Value fc = f(center);
  Value kronrod = kKronrodWeights[10] * fc;
  Value gauss{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Value pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of f over [lo, hi].
///
/// The panel with the largest |K21 - G10| is bisected until the summed
/// error estimate drops below `abs_tol`. Value may be real or complex.
/// Panel sums are accumulated in left-to-right order, so the result is a
/// deterministic function of (f, lo, hi, options).
///
/// Throws ToleranceError carrying the achieved estimate when the panel
/// budget is exhausted.
template <class Value = double, class Func>
QuadratureResult<Value> integrate(const Func& f, double lo, double hi,
                                  const QuadratureOptions& options = {}) {
  using PanelT = detail::Panel<Value>;
  auto by_error = [](const PanelT& a, const PanelT& b) { return a.error < b.error; };
  std::priority_queue<PanelT, std::vector<PanelT>, decltype(by_error)> queue(by_error);

  PanelT first = detail::kronrod21<Value>(f, lo, hi);
  double total_error = first.error;
  queue.push(first);
  std::size_t panels = 1;

  while (total_error > options.abs_tol) {
    if (panels >= options.max_panels) {
      std::vector<PanelT> done;
      while (!queue.empty()) {
        done.push_back(queue.top());
        queue.pop();
      }
      Value sum{};
      for (const auto& p : done) sum += p.value;
      throw ToleranceError("quadrature did not reach abs_tol " + std::to_string(options.abs_tol) +
                               " within " + std::to_string(options.max_panels) + " panels",
                           std::abs(sum), total_error);
    }
    PanelT worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    PanelT left = detail::kronrod21<Value>(f, worst.lo, mid);
    PanelT right = detail::kronrod21<Value>(f, mid, worst.hi);
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  std::vector<PanelT> done;
  done.reserve(queue.size());
  while (!queue.empty()) {
    done.push_back(queue.top());
    queue.pop();
  }
  std::sort(done.begin(), done.end(), [](const PanelT& a, const PanelT& b) { return a.lo < b.lo; });
  QuadratureResult<Value> result;
  for (const auto& p : done) {
    result.value += p.value;
    result.error += p.error;
  }
  result.panels = panels;
  return result;
}

}  // namespace phonon
