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

// Put and call prices on quadratic variation and on realized variance by
// Laplace inversion of the put payoff along a vertical contour:
//
//   E[(c - A)^+] = (1/pi) int_0^inf Re( e^{c(R+iv)} L(R+iv) / (R+iv)^2 ) dv
//
// for a nonnegative A with transform L and any R > 0. In the scaled
// variable s = c v and with a = c R this is
//
//   (c/pi) int_0^inf Re( e^{a+is} L((a+is)/c) / (a+is)^2 ) ds,
//
// integrated over panels of width pi with Wynn epsilon acceleration of the
// partial sums. Prices are quoted in annualized variance units.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varpricer/errors.hpp"
#include "varpricer/laplace_transforms.hpp"
#include "varpricer/levy_models.hpp"
#include "varpricer/quadrature.hpp"

namespace varpricer {

enum class Side { Put, Call };
enum class Method { ExactRv, QvProxy, ConvexityCorrected, ClosedFormBs, MonteCarlo };

std::string to_string(Side side);
std::string to_string(Method method);

struct ContourSpec {
  /// Damping abscissa R; defaults to 1/c so that e^{cR} = e.
  std::optional<double> damping;
  /// Hard cap on the truncation point v; defaults to unbounded (the panel
  /// budget still applies).
  std::optional<double> v_max;
  /// Absolute tolerance on E[(c - A)^+] / c.
  double panel_tol = 1e-12;
  int max_panels = 4000;
  TransformOptions transform{};

  void validate() const;
};

struct InversionResult {
  double value = 0.0;       // E[(c - A)^+]
  double est_error = 0.0;
  int panels = 0;
  int evaluations = 0;
  double v_max = 0.0;       // truncation point reached, in v units
  double tail_bound = 0.0;  // envelope bound on the neglected tail
  bool accelerated = false;
  bool truncated = false;   // stopped by the panel budget or v_max
};

using LaplaceFn = std::function<Complex(Complex)>;

/// E[(c - A)^+] for A >= 0 with Laplace transform `laplace`.
/// `mass_at_zero` is P(A = 0) when A has an atom there; it is removed from
/// the transform before inversion and added back in closed form.
InversionResult invert_put(const LaplaceFn& laplace, double c, const ContourSpec& contour = {},
                           double mass_at_zero = 0.0);

struct PriceResult {
  double price = 0.0;
  Method method = Method::ExactRv;
  double est_error = 0.0;
  Side side = Side::Call;
  double k = 1.0;
  double strike = 0.0;
  double swap_rate = 0.0;
  double T = 0.0;
  int n = 0;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;

  /// Single-line JSON object.
  std::string to_json() const;
};

double swap_rate_qv(const LevyModel& model);
double swap_rate_rv(const LevyModel& model, double T, int n);

PriceResult price_option_qv(const LevyModel& model, double T, double k, Side side,
                            const ContourSpec& contour = {});
PriceResult price_option_rv(const LevyModel& model, double T, int n, double k, Side side,
                            const ContourSpec& contour = {});

/// Black-Scholes realized variance option from the noncentral chi-square law
/// RV = (sigma^2/n) chi'^2_n(b^2 T / sigma^2), as a Poisson mixture of
/// central chi-square laws truncated when the Poisson tail drops below 1e-14.
double bs_closed_form_rv(double sigma, double b, double T, int n, double k, Side side);

}  // namespace varpricer
