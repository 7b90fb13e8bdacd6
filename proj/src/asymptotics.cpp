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

#include "varpricer/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "varpricer/special_functions.hpp"

namespace varpricer {
namespace {

void check_k(double k, const char* who) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw InvalidArgument(std::string(who) + ": k must be positive and finite");
}

void check_n(int n, const char* who) {
  if (n < 1) throw InvalidArgument(std::string(who) + ": n must be >= 1");
}

double v0(const LevyModel& m) { return m.sigma_sq() + m.jump_variance(); }

// sigma^2 (k-1) + v^2 k = k V0 - sigma^2.
double moneyness_term(const LevyModel& m, double k) { return k * v0(m) - m.sigma_sq(); }

}  // namespace

void GammaLimitLaw::validate() const {
  if (n < 1) throw InvalidArgument("GammaLimitLaw: n must be >= 1");
  if (!(sigma_sq >= 0.0) || !std::isfinite(sigma_sq))
    throw InvalidArgument("GammaLimitLaw: sigma_sq must be >= 0");
}

double gamma_limit_expectation(const Payoff& g, const GammaLimitLaw& law,
                               const std::vector<double>& kinks, const QuadratureSpec& spec) {
  law.validate();
  spec.validate();
  if (law.sigma_sq == 0.0) return g(0.0);
  const double shape = 0.5 * law.n;
  const double to_x = 2.0 * law.sigma_sq / law.n;  // x = to_x * z, z ~ Gamma(shape, 1)
  double z_hi = shape + 10.0 * std::sqrt(shape) + 10.0;
  while (specfun::gamma_q(shape, z_hi) > 1e-15) z_hi *= 1.5;
  const double w_hi = std::sqrt(z_hi);
  const double log_norm = std::log(2.0) - std::lgamma(shape);
  // With z = w^2 the density z^{a-1} e^{-z} dz / Gamma(a) becomes
  // 2 w^{n-1} e^{-w^2} dw / Gamma(a), which is bounded at w = 0.
  auto integrand = [&](double w) -> double {
    if (w == 0.0) return law.n == 1 ? std::exp(log_norm) * g(0.0) : 0.0;
    const double dens = std::exp(log_norm + (law.n - 1) * std::log(w) - w * w);
    return dens * g(to_x * w * w);
  };
  std::vector<double> breaks;
  breaks.push_back(std::sqrt(std::max(shape - 0.5, 0.0)));  // density peak in w
  for (double x : kinks)
    if (x > 0.0 && x < to_x * z_hi) breaks.push_back(std::sqrt(x / to_x));
  std::sort(breaks.begin(), breaks.end());
  QuadratureSpec s = spec;
  s.rel_tol = std::min(spec.rel_tol, 1e-12);
  s.abs_tol = std::min(spec.abs_tol, 1e-16);
  auto r = quad::gauss_kronrod(integrand, 0.0, w_hi, s, breaks);
  if (!r.converged)
    throw ConvergenceError("gamma_limit_expectation: quadrature did not converge");
  return r.value.real();
}

double qv_limit(const Payoff& g, double sigma_sq) {
  if (!(sigma_sq >= 0.0)) throw InvalidArgument("qv_limit: sigma_sq must be >= 0");
  return g(sigma_sq);
}

double q_fn(double k, int n, double r) {
  check_k(k, "q_fn");
  check_n(n, "q_fn");
  if (!(r >= 0.0)) throw InvalidArgument("q_fn: r must be >= 0");
  if (std::isinf(r)) return 0.0;
  const double h = 0.5 * n;
  const double y = k * (1.0 + r);
  return std::exp(std::log(1.0 / h) - std::lgamma(h) + h * (std::log(h * y) - y));
}

double r_fn(double k, int n, double r) {
  check_k(k, "r_fn");
  check_n(n, "r_fn");
  if (!(r >= 0.0)) throw InvalidArgument("r_fn: r must be >= 0");
  if (std::isinf(r)) return 1.0;
  const double h = 0.5 * n;
  return specfun::gamma_p(h, k * (1.0 + r) * h);
}

double limit_put_qv(const LevyModel& model, double k) {
  check_k(k, "limit_put_qv");
  return std::max(moneyness_term(model, k), 0.0);
}

double limit_call_qv(const LevyModel& model, double k) {
  check_k(k, "limit_call_qv");
  return model.jump_variance() + std::max(-moneyness_term(model, k), 0.0);
}

double limit_put_rv(const LevyModel& model, double k, int n) {
  check_k(k, "limit_put_rv");
  check_n(n, "limit_put_rv");
  const double s2 = model.sigma_sq();
  // Pure jump: Y_n is a point mass at 0, so the put pays k V0.
  if (s2 == 0.0) return k * v0(model);
  const double r = model.jump_variance() / s2;
  return s2 * q_fn(k, n, r) + moneyness_term(model, k) * r_fn(k, n, r);
}

double limit_call_rv(const LevyModel& model, double k, int n) {
  check_k(k, "limit_call_rv");
  check_n(n, "limit_call_rv");
  const double s2 = model.sigma_sq();
  if (s2 == 0.0) return model.jump_variance();
  const double r = model.jump_variance() / s2;
  const double h = 0.5 * n;
  return model.jump_variance() + s2 * q_fn(k, n, r) -
         moneyness_term(model, k) * specfun::gamma_q(h, k * (1.0 + r) * h);
}

double discretization_gap(const LevyModel& model, double k, int n, Side) {
  check_k(k, "discretization_gap");
  check_n(n, "discretization_gap");
  const double s2 = model.sigma_sq();
  if (s2 == 0.0) return 0.0;
  const double r = model.jump_variance() / s2;
  const double a = moneyness_term(model, k);
  if (a < 0.0) return s2 * q_fn(k, n, r) + a * r_fn(k, n, r);
  // R - 1 = -Q(n/2, z); the upper tail avoids cancellation when R is near 1.
  const double h = 0.5 * n;
  return s2 * q_fn(k, n, r) - a * specfun::gamma_q(h, k * (1.0 + r) * h);
}

PriceResult corrected_price(const LevyModel& model, double T, int n, double k, Side side,
                            const ContourSpec& contour) {
  check_n(n, "corrected_price");
  using Key = std::tuple<double, double, double, int>;
  static std::mutex mu;
  static std::map<Key, double> cache;
  const Key key{model.sigma_sq(), model.jump_variance(), k, n};
  double gap;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, discretization_gap(model, k, n, side)).first;
    gap = it->second;
  }
  PriceResult r = price_option_qv(model, T, k, side, contour);
  r.diagnostics["qv_price"] = r.price;
  r.diagnostics["gap"] = gap;
  r.price += gap;
  r.method = Method::ConvexityCorrected;
  r.n = n;
  return r;
}

}  // namespace varpricer
