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

#include "varpricer/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace varpricer {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidArgument("QuadratureSpec: rel_tol must lie in (0, 1)");
  if (!(abs_tol > 0.0 && abs_tol < 1.0))
    throw InvalidArgument("QuadratureSpec: abs_tol must lie in (0, 1)");
  if (max_nodes < 16)
    throw InvalidArgument("QuadratureSpec: max_nodes must be >= 16");
}

namespace quad {
namespace {

// Eigenvalues of the symmetric tridiagonal matrix (diagonal d, off-diagonal
// e[1..n-1]) by implicit QL with Wilkinson shifts. O(n^2), no vectors.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (iter > 60) throw ConvergenceError("tridiagonal eigenvalue iteration stalled");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Nodes from the eigenvalues of the Jacobi matrix, polished by Newton steps
// on the orthonormal Hermite recurrence. The recurrence is rescaled on the
// fly so that the outermost nodes of large rules do not overflow, and the
// weights are formed in log space.
Rule build_hermite(int n) {
  Rule r;
  std::vector<double> diag(n, 0.0), off(n, 0.0);
  for (int k = 1; k < n; ++k) off[k] = std::sqrt(0.5 * k);
  r.nodes = tridiagonal_eigenvalues(diag, off);
  r.weights.assign(n, 0.0);
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)
  const double big = 1e150;
  for (int i = 0; i < n; ++i) {
    double z = r.nodes[i];
    double p2 = 0.0, log_scale = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      double p1 = pim4;
      p2 = 0.0;
      log_scale = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
        if (std::abs(p1) > big) {
          p1 /= big;
          p2 /= big;
          log_scale += std::log(big);
        }
      }
      const double step = p1 / (std::sqrt(2.0 * n) * p2);
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    const double log_pp = std::log(std::sqrt(2.0 * n) * std::abs(p2)) + log_scale;
    r.nodes[i] = z;
    r.weights[i] = std::exp(std::log(2.0) - 2.0 * log_pp);
  }
  // Enforce exact symmetry.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
    const double w = 0.5 * (r.weights[i] + r.weights[n - 1 - i]);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

Rule build_legendre(int n) {
  Rule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    r.nodes[i] = -z;
    r.nodes[n - 1 - i] = z;
    r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[n - 1 - i] = r.weights[i];
  }
  return r;
}

template <Rule (*Build)(int)>
const Rule& cached(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  if (n < 1) throw InvalidArgument("quadrature rule size must be >= 1");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(Build(n));
  return *slot;
}

}  // namespace

const Rule& gauss_hermite(int n) { return cached<build_hermite>(n); }
const Rule& gauss_legendre(int n) { return cached<build_legendre>(n); }

}  // namespace quad
}  // namespace varpricer
