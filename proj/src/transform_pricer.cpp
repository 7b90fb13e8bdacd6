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

#include "varpricer/transform_pricer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "varpricer/special_functions.hpp"

namespace varpricer {
namespace {

constexpr double kPi = std::numbers::pi;

// Wynn epsilon extrapolation of a sequence of partial sums; returns the
// entry of the deepest even column.
double wynn_epsilon(const std::vector<double>& sums) {
  constexpr std::size_t kWindow = 40;
  const std::size_t start = sums.size() > kWindow ? sums.size() - kWindow : 0;
  std::vector<double> prev(sums.size() - start, 0.0);
  std::vector<double> cur(sums.begin() + static_cast<long>(start), sums.end());
  double best = cur.back();
  for (std::size_t k = 1; cur.size() > 1; ++k) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const double d = cur[j + 1] - cur[j];
      if (d == 0.0) return cur[j + 1];
      next[j] = prev[j + 1] + 1.0 / d;
    }
    if (k % 2 == 0) {
      if (!std::isfinite(next.back())) break;
      best = next.back();
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

void check_maturity(double T, const char* who) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw InvalidArgument(std::string(who) + ": T must be positive and finite");
}

void check_k(double k, const char* who) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw InvalidArgument(std::string(who) + ": relative strike k must be positive");
}

void fill_from_inversion(PriceResult& r, const InversionResult& inv, double T) {
  r.est_error = inv.est_error / T;
  r.diagnostics["panels"] = inv.panels;
  r.diagnostics["nodes"] = inv.evaluations;
  r.diagnostics["v_max"] = inv.v_max;
  r.diagnostics["tail_bound"] = inv.tail_bound / T;
  r.diagnostics["accelerated"] = inv.accelerated ? 1.0 : 0.0;
  r.diagnostics["truncated"] = inv.truncated ? 1.0 : 0.0;
  if (inv.truncated) r.warnings.push_back("truncation: panel budget or v_max reached");
}

void finish_sides(PriceResult& r, double put) {
  if (r.side == Side::Put) {
    r.price = put;
  } else {
    r.price = r.swap_rate - r.strike + put;
  }
  // Parity can leave a rounding-level negative value.
  if (r.price < 0.0 && r.price > -(r.est_error + 1e-14 * r.swap_rate)) r.price = 0.0;
}

}  // namespace

std::string to_string(Side side) { return side == Side::Put ? "put" : "call"; }

std::string to_string(Method method) {
  switch (method) {
    case Method::ExactRv: return "exact_rv";
    case Method::QvProxy: return "qv_proxy";
    case Method::ConvexityCorrected: return "convexity_corrected";
    case Method::ClosedFormBs: return "closed_form_bs";
    case Method::MonteCarlo: return "mc";
  }
  return "unknown";
}

void ContourSpec::validate() const {
  if (damping && !(*damping > 0.0 && std::isfinite(*damping)))
    throw InvalidArgument("ContourSpec: damping R must be positive");
  if (v_max && !(*v_max > 0.0)) throw InvalidArgument("ContourSpec: v_max must be positive");
  if (!(panel_tol > 0.0)) throw InvalidArgument("ContourSpec: panel_tol must be positive");
  if (max_panels < 1) throw InvalidArgument("ContourSpec: max_panels must be >= 1");
  transform.quad.validate();
}

InversionResult invert_put(const LaplaceFn& laplace, double c, const ContourSpec& contour,
                           double mass_at_zero) {
  contour.validate();
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("invert_put: c must be positive");
  if (!(mass_at_zero >= 0.0 && mass_at_zero <= 1.0))
    throw InvalidArgument("invert_put: mass_at_zero must lie in [0, 1]");

  InversionResult out;
  const double w = mass_at_zero;
  if (w == 1.0) {
    out.value = c;
    return out;
  }
  const double a = contour.damping ? c * *contour.damping : 1.0;
  const double scale = c / kPi;
  const double tol = contour.panel_tol * c;
  const double s_cap = contour.v_max ? *contour.v_max * c : std::numeric_limits<double>::infinity();

  auto integrand = [&](double s) -> double {
    const Complex z(a, s);
    ++out.evaluations;
    return (std::exp(z) * (laplace(z / c) - w) / (z * z)).real();
  };

  QuadratureSpec pq;
  pq.rel_tol = 1e-13;
  pq.abs_tol = 1e-3 * contour.panel_tol * kPi;
  pq.max_nodes = 4000;

  std::vector<double> sums;
  std::vector<double> accel;
  double raw = 0.0;
  double quad_err = 0.0;
  bool done = false;
  for (int k = 0; k < contour.max_panels; ++k) {
    const double s0 = k * kPi;
    double s1 = (k + 1) * kPi;
    if (s0 >= s_cap) {
      out.truncated = true;
      break;
    }
    s1 = std::min(s1, s_cap);
    auto panel = quad::gauss_kronrod([&](double s) { return integrand(s); }, s0, s1, pq);
    raw += scale * panel.value.real();
    quad_err += scale * panel.error;
    sums.push_back(raw);
    out.panels = k + 1;
    out.v_max = s1 / c;

    const Complex z_end(a, s1);
    out.tail_bound = scale * std::exp(a) * std::abs(laplace(z_end / c) - w) / s1;
    if (k >= 1 && out.tail_bound < tol) {
      out.value = raw;
      out.est_error = out.tail_bound + quad_err;
      out.accelerated = false;
      done = true;
      break;
    }
    if (sums.size() >= 3) {
      accel.push_back(wynn_epsilon(sums));
      const std::size_t m = accel.size();
      if (m >= 4) {
        const double d1 = std::abs(accel[m - 1] - accel[m - 2]);
        const double d2 = std::abs(accel[m - 2] - accel[m - 3]);
        if (k >= 6 && d1 <= tol && d2 <= tol) {
          out.value = accel.back();
          out.est_error = std::max(d1, d2) + quad_err;
          out.accelerated = true;
          done = true;
          break;
        }
      }
    }
  }
  if (!done) {
    out.truncated = true;
    if (accel.size() >= 2) {
      const std::size_t m = accel.size();
      out.value = accel.back();
      out.accelerated = true;
      out.est_error = std::abs(accel[m - 1] - accel[m - 2]) + quad_err;
    } else {
      out.value = raw;
      out.est_error = out.tail_bound + quad_err;
    }
    if (out.est_error > 1e3 * tol) {
      std::ostringstream os;
      os << "invert_put: no convergence after " << out.panels << " panels (v = " << out.v_max
         << ", error estimate " << out.est_error << ")";
      throw ConvergenceError(os.str());
    }
  }
  out.value += w * c;
  return out;
}

std::string PriceResult::to_json() const {
  nlohmann::json j;
  j["price"] = price;
  j["method"] = to_string(method);
  j["est_error"] = est_error;
  j["side"] = to_string(side);
  j["k"] = k;
  j["strike"] = strike;
  j["swap_rate"] = swap_rate;
  j["T"] = T;
  j["n"] = n;
  j["diagnostics"] = diagnostics;
  j["warnings"] = warnings;
  return j.dump();
}

double swap_rate_qv(const LevyModel& model) { return model.sigma_sq() + model.jump_variance(); }

double swap_rate_rv(const LevyModel& model, double T, int n) {
  check_maturity(T, "swap_rate_rv");
  if (n < 1) throw InvalidArgument("swap_rate_rv: n must be >= 1");
  const double b = model.triplet_drift();
  return swap_rate_qv(model) + b * b * T / n;
}

PriceResult price_option_qv(const LevyModel& model, double T, double k, Side side,
                            const ContourSpec& contour) {
  check_maturity(T, "price_option_qv");
  check_k(k, "price_option_qv");
  PriceResult r;
  r.method = Method::QvProxy;
  r.side = side;
  r.k = k;
  r.T = T;
  r.swap_rate = swap_rate_qv(model);
  r.strike = k * r.swap_rate;

  // [X,X]_T = sigma^2 T + (sum of squared jumps); the jump sum has an atom
  // at zero of mass exp(-lambda T) for finite activity.
  const double shift = model.sigma_sq() * T;
  const double c = r.strike * T - shift;
  const double lambda = model.jump_intensity();
  const double w = std::isfinite(lambda) ? std::exp(-lambda * T) : 0.0;
  r.diagnostics["shift"] = shift;
  r.diagnostics["atom_mass"] = w;
  double put_total = 0.0;
  if (c > 0.0) {
    const TransformOptions& topts = contour.transform;
    auto L = [&](Complex u) -> Complex {
      if (u == Complex(0.0)) return 1.0;
      return std::exp(T * psi_qv_jump(model, -u, topts.qv_path, topts.quad));
    };
    const auto inv = invert_put(L, c, contour, w);
    fill_from_inversion(r, inv, T);
    r.diagnostics["damping_R"] = contour.damping ? *contour.damping : 1.0 / c;
    put_total = inv.value;
  }
  finish_sides(r, put_total / T);
  return r;
}

PriceResult price_option_rv(const LevyModel& model, double T, int n, double k, Side side,
                            const ContourSpec& contour) {
  check_maturity(T, "price_option_rv");
  check_k(k, "price_option_rv");
  if (n < 1) throw InvalidArgument("price_option_rv: n must be >= 1");
  PriceResult r;
  r.method = Method::ExactRv;
  r.side = side;
  r.k = k;
  r.T = T;
  r.n = n;
  r.swap_rate = swap_rate_rv(model, T, n);
  r.strike = k * r.swap_rate;
  const double c = r.strike * T;
  auto L = [&](Complex u) { return laplace_rv(model, u, T, n, contour.transform); };
  const auto inv = invert_put(L, c, contour);
  fill_from_inversion(r, inv, T);
  r.diagnostics["damping_R"] = contour.damping ? *contour.damping : 1.0 / c;
  finish_sides(r, inv.value / T);
  return r;
}

double bs_closed_form_rv(double sigma, double b, double T, int n, double k, Side side) {
  if (!(sigma > 0.0)) throw InvalidArgument("bs_closed_form_rv: sigma must be > 0");
  check_maturity(T, "bs_closed_form_rv");
  check_k(k, "bs_closed_form_rv");
  if (n < 1) throw InvalidArgument("bs_closed_form_rv: n must be >= 1");
  if (!std::isfinite(b)) throw InvalidArgument("bs_closed_form_rv: b must be finite");

  const double s2 = sigma * sigma;
  const double scale = s2 / n;                   // RV = scale * chi'^2_n(lambda)
  const double lambda = b * b * T / s2;          // noncentrality
  const double strike = k * (s2 + b * b * T / n);
  const double x = strike / (2.0 * scale);
  const double half = 0.5 * lambda;

  double total = 0.0;
  double cum = 0.0;
  for (int i = 0;; ++i) {
    const double log_wt = -half + (i > 0 ? i * std::log(half) : 0.0) - std::lgamma(i + 1.0);
    const double wt = std::exp(log_wt);
    const double a = 0.5 * n + i;  // chi^2_m with m = n + 2i has shape m/2
    const double dens = std::exp(a * std::log(x) - x - std::lgamma(a));
    // E[(K - s chi^2_m)^+] = 2s[(x - a) P(a, x) + x^a e^-x / Gamma(a)], and the
    // call uses Q in place of P with the sign of (x - a) flipped.
    const double term = side == Side::Put
                            ? 2.0 * scale * ((x - a) * specfun::gamma_p(a, x) + dens)
                            : 2.0 * scale * ((a - x) * specfun::gamma_q(a, x) + dens);
    total += wt * term;
    cum += wt;
    if ((1.0 - cum < 1e-14 && i >= half) || half == 0.0 || i > 100000) break;
  }
  return total;
}

}  // namespace varpricer
