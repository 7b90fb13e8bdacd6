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

// Laplace transforms of the variance underlyings:
//   quadratic variation   E[exp(-u [X,X]_T)] = exp(T psi_qv(-u))
//   squared increment     E[exp(-u X_t^2)]   = E[exp(t psi(i Z sqrt(2u)))],  Z ~ N(0,1)
//   realized variance     E[exp(-u sum (dX)^2)] = (E[exp(-u X_{T/n}^2)])^n
//   p-th power            E[exp(-u |X_t|^p)] = E[exp(t psi(i S u^(1/p)))],  S symmetric p-stable
// All transforms are defined for Re u > 0 and at u = 0.

#include <cstdint>

#include "varpricer/errors.hpp"
#include "varpricer/levy_models.hpp"
#include "varpricer/quadrature.hpp"

namespace varpricer {

enum class PsiQvPath {
  Auto,        // closed form where one exists, otherwise the best integral
  ClosedForm,  // BS, Merton, Kou, CGMY, Poisson; NIG via its subordinator
  Quadrature,  // direct integral over the Levy density
};

enum class XsqScheme {
  RotatedContour,  // adaptive Gauss-Kronrod along the Gaussian steepest-descent line
  GaussHermite,    // Gauss-Hermite on the real line with node doubling
};

struct TransformOptions {
  QuadratureSpec quad{200000, 1e-10, 1e-300};
  XsqScheme scheme = XsqScheme::RotatedContour;
  int gh_min_nodes = 128;
  int gh_max_nodes = 2048;
  PsiQvPath qv_path = PsiQvPath::Auto;
};

/// psi^{[X,X]}(w) for w = -u with Re u > 0:
///   -sigma^2 u + int (exp(-u x^2) - 1) F(dx).
/// Returns 0 at w = 0. Throws DomainError when Re(-w) <= 0 otherwise.
Complex psi_qv(const LevyModel& model, Complex w, PsiQvPath path = PsiQvPath::Auto,
               const QuadratureSpec& spec = {});

/// Jump part of psi_qv alone: int (exp(-u x^2) - 1) F(dx) at w = -u.
Complex psi_qv_jump(const LevyModel& model, Complex w, PsiQvPath path = PsiQvPath::Auto,
                    const QuadratureSpec& spec = {});

Complex laplace_qv(const LevyModel& model, Complex u, double T,
                   const TransformOptions& opts = {});

/// Throws DomainError when Re u <= 0 (u != 0) or when the model fails the
/// growth condition on the hourglass region (the Poisson counterexample).
Complex laplace_xsq(const LevyModel& model, Complex u, double t,
                    const TransformOptions& opts = {});

/// Transform of the unnormalized sum of n squared increments over [0, T],
/// i.e. of T * RV_n(T). Each factor is computed to rel_tol / n.
Complex laplace_rv(const LevyModel& model, Complex u, double T, int n,
                   const TransformOptions& opts = {});

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long draws = 0;
};

/// Monte Carlo estimate of E[exp(-u |X_t|^p)] for real u >= 0 and p in
/// (0, 2) from symmetric p-stable draws (Chambers-Mallows-Stuck). p = 2
/// is accepted as the Gaussian end point (S = sqrt(2) Z). Experimental:
/// the identity is only established for real u.
MonteCarloEstimate laplace_pvar(const LevyModel& model, double u, double p, double t,
                                long n_draws, std::uint64_t seed);

}  // namespace varpricer
