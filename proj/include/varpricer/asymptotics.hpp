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

// Small-maturity limits of variance option prices and the convexity
// correction built from them. As T -> 0, (1/T)[X,X]_T tends in law to the
// constant sigma^2, and RV_n(T) tends in law to Y_n ~ Gamma(n/2, 2 sigma^2/n),
// while both swap rates tend to V0 = sigma^2 + v^2.

#include <functional>
#include <vector>

#include "varpricer/levy_models.hpp"
#include "varpricer/quadrature.hpp"
#include "varpricer/transform_pricer.hpp"

namespace varpricer {

/// Y_n ~ Gamma(shape n/2, scale 2 sigma^2/n), mean sigma^2. A point mass at 0
/// when sigma^2 = 0.
struct GammaLimitLaw {
  int n = 1;
  double sigma_sq = 0.0;

  void validate() const;
};

using Payoff = std::function<double(double)>;

/// E[g(Y_n)] for a payoff bounded on the bulk of the law. Adaptive
/// Gauss-Kronrod in w = sqrt(x n / (2 sigma^2)), truncated where the upper
/// tail probability falls below 1e-15. `kinks` are points (in x units)
/// where g is not smooth.
double gamma_limit_expectation(const Payoff& g, const GammaLimitLaw& law,
                               const std::vector<double>& kinks = {},
                               const QuadratureSpec& spec = {});

/// Limit of E[g((1/T)[X,X]_T)]: g(sigma^2).
double qv_limit(const Payoff& g, double sigma_sq);

/// Q_{k,n}(r) = (2/n)/Gamma(n/2) ((n/2) k(1+r) exp(-k(1+r)))^{n/2}.
double q_fn(double k, int n, double r);
/// R_{k,n}(r) = P(n/2, k(1+r) n/2).
double r_fn(double k, int n, double r);

double limit_put_qv(const LevyModel& model, double k);
double limit_call_qv(const LevyModel& model, double k);
double limit_put_rv(const LevyModel& model, double k, int n);
double limit_call_rv(const LevyModel& model, double k, int n);

/// Limit of the RV price minus the QV price; the same for puts and calls.
/// Zero when sigma^2 = 0.
double discretization_gap(const LevyModel& model, double k, int n, Side side = Side::Call);

/// QV price plus the discretization gap. Gaps are cached per
/// (sigma^2, v^2, k, n); the cache is thread safe.
PriceResult corrected_price(const LevyModel& model, double T, int n, double k, Side side,
                            const ContourSpec& contour = {});

}  // namespace varpricer
