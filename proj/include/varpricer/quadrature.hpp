/*
   Copyright 2026 The varpricer Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Numerical integration kernels shared by the special functions, the
// transforms and the pricer. Everything here works on complex-valued
// integrands; real integrands are promoted.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "varpricer/errors.hpp"

namespace varpricer {

/// Tolerances and node budget for adaptive quadrature.
struct QuadratureSpec {
  int max_nodes = 20000;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;

  /// Throws InvalidArgument when outside rel_tol, abs_tol in (0,1),
  /// max_nodes >= 16.
  void validate() const;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace quad {

/// Nodes and weights of the n-point Gauss-Hermite rule for the weight
/// exp(-x^2). Cached per n; thread safe.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Rule& gauss_hermite(int n);

/// n-point Gauss-Legendre rule on [-1, 1]. Cached per n; thread safe.
const Rule& gauss_legendre(int n);

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex fc = Complex(f(c));
  Complex kron = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const Complex f1 = Complex(f(c - dx));
    const Complex f2 = Complex(f(c + dx));
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b] for complex integrands.
/// `breaks` are interior points where the integrand may have kinks.
template <class F>
QuadResult<Complex> gauss_kronrod(F&& f, double a, double b,
                                  const QuadratureSpec& spec,
                                  std::span<const double> breaks = {}) {
  QuadResult<Complex> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::vector<double> pts;
  pts.push_back(a);
  for (double x : breaks)
    if (x > std::min(a, b) && x < std::max(a, b)) pts.push_back(x);
  pts.push_back(b);
  if (a < b)
    std::sort(pts.begin(), pts.end());
  else
    std::sort(pts.begin(), pts.end(), std::greater<>());

  std::priority_queue<detail::Segment> heap;
  Complex total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto s = detail::gk15(f, pts[i], pts[i + 1]);
    out.evaluations += 15;
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (out.evaluations + 30 > spec.max_nodes) {
      out.value = total;
      out.error = err;
      return out;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      // Interval collapsed to machine precision; nothing more to gain.
      heap.push(worst);
      break;
    }
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute the sums from the leaves to shed accumulated rounding.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = err;
  out.converged =
      err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) * 1.0000001;
  return out;
}

/// Double-exponential (exp-sinh) quadrature on (0, inf):
/// x = exp(pi/2 sinh t), trapezoidal rule in t with step halving. Points
/// outside the window found at unit step are never revisited.
/// Handles integrable algebraic singularities at 0 and algebraic or
/// exponential decay at infinity.
template <class F>
QuadResult<Complex> exp_sinh(F&& f, const QuadratureSpec& spec,
                             int max_levels = 9) {
  constexpr double kHalfPi = 1.57079632679489661923;
  // |pi/2 sinh t| <= 700 keeps x inside the double range.
  const double t_max = std::asinh(700.0 / kHalfPi);

  QuadResult<Complex> out;
  auto term = [&](double t) -> Complex {
    const double s = kHalfPi * std::sinh(t);
    const double x = std::exp(s);
    if (x == 0.0 || !std::isfinite(x)) return 0.0;
    const Complex v = Complex(f(x));
    ++out.evaluations;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return 0.0;
    return v * (x * kHalfPi * std::cosh(t));
  };

  // Level 0 scans the whole admissible t range with unit step and fixes the
  // window where the terms are not negligible; finer levels only fill in
  // points inside that window.
  const int k_max = static_cast<int>(std::floor(t_max));
  std::vector<Complex> coarse;
  double peak = 0.0;
  for (int k = -k_max; k <= k_max; ++k) {
    coarse.push_back(term(k));
    peak = std::max(peak, std::abs(coarse.back()));
  }
  int lo = k_max, hi = -k_max;
  Complex raw = 0.0;
  for (int k = -k_max; k <= k_max; ++k) {
    const Complex v = coarse[k + k_max];
    raw += v;
    if (std::abs(v) > 1e-20 * peak) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  if (peak == 0.0) {
    out.converged = true;
    return out;
  }
  const double t_lo = std::max(-t_max, lo - 1.0);
  const double t_hi = std::min(t_max, hi + 1.0);

  double h = 1.0;
  Complex estimate = raw;
  for (int level = 1; level <= max_levels; ++level) {
    h *= 0.5;
    // New points sit at odd multiples of the halved step.
    const long first = static_cast<long>(std::ceil((t_lo / h - 1.0) / 2.0));
    for (long j = first;; ++j) {
      const double t = (2 * j + 1) * h;
      if (t > t_hi) break;
      if (t < t_lo) continue;
      raw += term(t);
    }
    const Complex next = raw * h;
    const double diff = std::abs(next - estimate);
    estimate = next;
    out.error = diff;
    if (level >= 3 &&
        diff <= std::max(spec.abs_tol, spec.rel_tol * std::abs(estimate))) {
      out.converged = true;
      break;
    }
    if (out.evaluations > spec.max_nodes) break;
  }
  out.value = estimate;
  return out;
}

}  // namespace quad
}  // namespace varpricer
