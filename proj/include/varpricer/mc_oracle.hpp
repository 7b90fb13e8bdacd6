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

// Monte Carlo simulation of Levy increments on an equidistant grid, used as
// an independent oracle for transforms and prices. Draws come from a
// counter-based generator keyed by (seed, path, step), and per-path results
// are reduced in path order, so output does not depend on the thread count.

#include <cstdint>
#include <vector>

#include "varpricer/errors.hpp"
#include "varpricer/levy_models.hpp"
#include "varpricer/transform_pricer.hpp"

namespace varpricer {

enum class SimScheme {
  Exact,               // BS, Merton, Kou, NIG, Poisson
  SmallJumpTruncation  // CGMY (required) and NIG; jumps below epsilon become Gaussian
};

struct SimPlan {
  LevyModel model;
  double T = 1.0;
  int n = 1;
  long paths = 1;
  std::uint64_t seed = 0;
  SimScheme scheme = SimScheme::Exact;
  /// Jump-size cutoff for the truncation scheme.
  double epsilon = 1e-4;
  /// Worker threads; 0 reads VARPRICER_THREADS, then the hardware count.
  int threads = 0;

  /// Throws InvalidArgument for bad sizes, UnsupportedScheme when the
  /// scheme does not apply to the model.
  void validate() const;
};

/// Row-major paths x n matrix of log-price increments over dt = T/n.
struct IncrementMatrix {
  long paths = 0;
  int n = 0;
  std::vector<double> data;

  double at(long path, int step) const { return data[static_cast<std::size_t>(path) * n + step]; }
};

IncrementMatrix simulate_increments(const SimPlan& plan);

/// Per-path terminal value X_T, realized variance RV_n(T) and normalized
/// quadratic variation [X,X]_T / T.
struct VarianceSample {
  std::vector<double> x_T;
  std::vector<double> rv;
  std::vector<double> qv;
};

VarianceSample simulate_variance(const SimPlan& plan);

enum class Underlying { Rv, Qv };

/// Sample-mean option price; est_error is the standard error. Strikes use
/// the analytic swap rates swap_rate_rv / swap_rate_qv.
PriceResult mc_price(const SimPlan& plan, double k, Side side, Underlying underlying);
PriceResult mc_price(const VarianceSample& sample, const SimPlan& plan, double k, Side side,
                     Underlying underlying);

enum class LaplaceTarget { Xsq, Rv, Qv, Pvar };

struct ComplexEstimate {
  Complex mean;
  double se_real = 0.0;
  double se_imag = 0.0;
  long draws = 0;
};

/// Sample mean of exp(-u A) with A = X_T^2, T RV_n(T), [X,X]_T or |X_T|^p.
ComplexEstimate mc_laplace(const SimPlan& plan, Complex u, LaplaceTarget target, double p = 1.0);
ComplexEstimate mc_laplace(const VarianceSample& sample, const SimPlan& plan, Complex u,
                           LaplaceTarget target, double p = 1.0);

/// Worker count used for a plan.
int mc_threads(const SimPlan& plan);

}  // namespace varpricer
