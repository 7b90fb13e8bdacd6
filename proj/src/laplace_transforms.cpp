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

#include "varpricer/laplace_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "varpricer/rng.hpp"
#include "varpricer/special_functions.hpp"

namespace varpricer {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

// exp(z) - 1 without cancellation for small |z|.
Complex cexpm1(Complex z) {
  const double em1 = std::expm1(z.real());
  const double s = std::sin(0.5 * z.imag());
  return {em1 * std::cos(z.imag()) - 2.0 * s * s, (em1 + 1.0) * std::sin(z.imag())};
}

// log(1 + z) accurate for small |z|.
Complex clog1p(Complex z) {
  const double x = z.real(), y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

void check_u(Complex u, const char* who) {
  if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
    throw InvalidArgument(std::string(who) + ": u must be finite");
  if (!(u.real() > 0.0))
    throw DomainError(std::string(who) + ": requires Re(u) > 0");
}

void check_horizon(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw InvalidArgument(std::string(who) + ": horizon must be positive and finite");
}

template <class F>
Complex half_line(F&& f, const QuadratureSpec& spec, const char* what) {
  auto r = quad::exp_sinh(f, spec, 12);
  if (!r.converged) {
    std::ostringstream os;
    os << "psi_qv: " << what << " quadrature did not converge (error " << r.error << ", "
       << r.evaluations << " evaluations)";
    throw ConvergenceError(os.str());
  }
  return r.value;
}

// int_0^inf (exp(-u x^2) - 1) f(x) dx for a density f analytic in the
// sector |arg x| <= |arg u|/2, taken along x = r exp(-i arg(u)/2) where
// u x^2 = |u| r^2 is real.
template <class Density>
Complex rotated_integral(Complex u, Density&& f, const QuadratureSpec& spec) {
  const Complex e = std::polar(1.0, -0.5 * std::arg(u));
  const double au = std::abs(u);
  return half_line(
      [&](double r) -> Complex {
        const Complex x = r * e;
        return std::expm1(-au * r * r) * f(x) * e;
      },
      spec, "rotated density");
}

Complex kou_side(double lambda, double nu, Complex u, const QuadratureSpec& spec) {
  return lambda * (nu * specfun::i_function(1.0, nu, u, spec) - 1.0);
}

// int_0^inf (exp(-u x^2) - 1) C exp(-L x) x^(-1-Y) dx, integrated by parts
// twice into I(2-Y, L, u) and I(3-Y, L, u).
Complex cgmy_side(double C, double L, double Y, Complex u, const QuadratureSpec& spec) {
  const double y1 = Y * (1.0 - Y);
  const Complex i2 = specfun::i_function(2.0 - Y, L, u, spec);
  const Complex i3 = specfun::i_function(3.0 - Y, L, u, spec);
  return C * (-(2.0 * u / Y + L * L / y1) * i2 - (2.0 * u * L / y1) * i3 +
              std::pow(L, Y) * std::tgamma(2.0 - Y) / y1);
}

// NIG jumps are N(beta s, s) draws at the jumps s of an inverse Gaussian
// subordinator with Levy density delta / sqrt(2 pi) s^(-3/2) exp(-g^2 s / 2).
Complex nig_subordinated(const NigParams& p, Complex u, const QuadratureSpec& spec) {
  const double g2 = p.alpha * p.alpha - p.beta * p.beta;
  const double b2 = p.beta * p.beta;
  const double c = p.delta / std::sqrt(2.0 * kPi);
  return half_line(
      [&](double s) -> Complex {
        const Complex q = 1.0 + 2.0 * u * s;
        const Complex expo = -0.5 * clog1p(2.0 * u * s) - u * b2 * s * s / q;
        return cexpm1(expo) * c * std::exp(-0.5 * g2 * s) / (s * std::sqrt(s));
      },
      spec, "NIG subordinator");
}

Complex nig_real_axis(const LevyModel& m, Complex u, const QuadratureSpec& spec) {
  Complex total = 0.0;
  for (double sign : {-1.0, 1.0})
    total += half_line(
        [&](double r) -> Complex {
          return cexpm1(-u * r * r) * m.levy_density(sign * r);
        },
        spec, "NIG density");
  return total;
}

struct Overloaded {
  const LevyModel& m;
  Complex u;
  PsiQvPath path;
  const QuadratureSpec& spec;

  Complex operator()(const BlackScholesParams&) const { return 0.0; }

  Complex operator()(const MertonParams& p) const {
    if (path == PsiQvPath::Quadrature) {
      // The Gaussian density would pick up a chirp on a rotated ray, so this
      // one stays on the real axis where it dies out within a few delta.
      const double norm = p.lambda / (p.delta * std::sqrt(2.0 * kPi));
      auto f = [&](double x) -> Complex {
        const double z = (x - p.gamma) / p.delta;
        return cexpm1(-u * x * x) * norm * std::exp(-0.5 * z * z);
      };
      const double lo = std::min(p.gamma - 12.0 * p.delta, -1e-3);
      const double hi = std::max(p.gamma + 12.0 * p.delta, 1e-3);
      const double brk[] = {0.0, p.gamma};
      auto r = quad::gauss_kronrod(f, lo, hi, spec, brk);
      if (!r.converged)
        throw ConvergenceError("psi_qv: Merton density quadrature did not converge");
      return r.value;
    }
    const Complex q = 1.0 + 2.0 * u * p.delta * p.delta;
    return p.lambda * cexpm1(-0.5 * clog1p(2.0 * u * p.delta * p.delta) -
                             u * p.gamma * p.gamma / q);
  }

  Complex operator()(const KouParams& p) const {
    if (path == PsiQvPath::Quadrature) {
      auto side = [&](double lambda, double nu) {
        return rotated_integral(
            u, [&](Complex x) { return lambda * nu * std::exp(-nu * x); }, spec);
      };
      return side(p.lambda_plus, p.nu_plus) + side(p.lambda_minus, p.nu_minus);
    }
    return kou_side(p.lambda_plus, p.nu_plus, u, spec) +
           kou_side(p.lambda_minus, p.nu_minus, u, spec);
  }

  Complex operator()(const NigParams& p) const {
    if (path == PsiQvPath::Quadrature) return nig_real_axis(m, u, spec);
    return nig_subordinated(p, u, spec);
  }

  Complex operator()(const CgmyParams& p) const {
    if (path == PsiQvPath::Quadrature) {
      auto side = [&](double L) {
        return rotated_integral(
            u, [&](Complex x) { return p.C * std::exp(-L * x) * std::pow(x, -1.0 - p.Y); },
            spec);
      };
      return side(p.M) + side(p.G);
    }
    return cgmy_side(p.C, p.M, p.Y, u, spec) + cgmy_side(p.C, p.G, p.Y, u, spec);
  }

  Complex operator()(const PoissonParams& p) const {
    return p.lambda * cexpm1(-u * p.jump * p.jump);
  }
};

Complex xsq_small_u(const LevyModel& m, Complex u, double t, bool& used) {
  const double b = m.triplet_drift();
  const double m2 = t * (m.sigma_sq() + m.jump_variance()) + t * t * b * b;
  used = std::abs(u) * m2 < 1e-10;
  return used ? 1.0 - u * m2 : Complex(0.0);
}

Complex xsq_gauss_hermite(const LevyModel& m, Complex u, double t, const TransformOptions& o,
                          double rel_tol) {
  const Complex arg = kI * std::sqrt(2.0) * std::sqrt(2.0 * u);
  auto rule_sum = [&](int n) {
    const auto& rule = quad::gauss_hermite(n);
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (rule.weights[j] == 0.0) continue;
      s += rule.weights[j] * std::exp(t * m.exponent(rule.nodes[j] * arg));
    }
    return s / std::sqrt(kPi);
  };
  Complex prev = rule_sum(o.gh_min_nodes);
  for (int n = 2 * o.gh_min_nodes; n <= o.gh_max_nodes; n *= 2) {
    const Complex next = rule_sum(n);
    const double scale = std::abs(next);
    const double tol = rel_tol * scale + o.quad.abs_tol;
    if (std::abs(next.real() - prev.real()) <= tol && std::abs(next.imag() - prev.imag()) <= tol)
      return next;
    prev = next;
  }
  std::ostringstream os;
  os << "laplace_xsq: Gauss-Hermite did not converge with " << o.gh_max_nodes
     << " nodes at u=" << u << ", t=" << t;
  throw ConvergenceError(os.str());
}

// E[exp(t psi(i Z sqrt(2u)))] with the Gaussian variable rotated onto the
// steepest-descent line of its diffusion part, z = rho r, rho = (1 + 2 t
// sigma^2 u)^(-1/2). The chirp exp(-t sigma^2 u z^2) becomes a plain
// Gaussian in r and i rho r sqrt(2u) stays inside the hourglass region.
Complex xsq_rotated(const LevyModel& m, Complex u, double t, const TransformOptions& o,
                    double rel_tol) {
  const Complex sq = std::sqrt(2.0 * u);
  const Complex rho = 1.0 / std::sqrt(1.0 + 2.0 * t * m.sigma_sq() * u);
  auto log_integrand = [&](double r) -> Complex {
    if (r == 0.0) return std::log(rho);
    const Complex z = rho * r;
    return -0.5 * z * z + t * m.exponent(kI * z * sq) + std::log(rho);
  };
  auto integrand = [&](double r) -> Complex {
    return std::exp(log_integrand(r)) / std::sqrt(2.0 * kPi);
  };

  // Coarse scan for the support of the integrand.
  constexpr double kStep = 0.5;
  double peak_log = log_integrand(0.0).real();
  double peak_r = 0.0;
  double mass = std::exp(peak_log) * kStep;
  double bounds[2] = {0.0, 0.0};
  for (int dir = 0; dir < 2; ++dir) {
    const double sign = dir == 0 ? -1.0 : 1.0;
    double r = 0.0;
    while (true) {
      r += kStep;
      const double lv = log_integrand(sign * r).real();
      if (lv > peak_log) {
        peak_log = lv;
        peak_r = sign * r;
      }
      if (std::isfinite(lv)) mass += std::exp(lv) * kStep;
      if ((r >= 9.0 && lv < peak_log - 50.0) || r > 2000.0) break;
    }
    bounds[dir] = sign * r;
  }
  mass /= std::sqrt(2.0 * kPi);

  QuadratureSpec q = o.quad;
  q.rel_tol = rel_tol;
  q.abs_tol = std::max(o.quad.abs_tol, 1e-16 * mass);
  const double brk[] = {peak_r, 0.0};
  auto res = quad::gauss_kronrod(integrand, bounds[0], bounds[1], q, brk);
  if (!res.converged) {
    std::ostringstream os;
    os << "laplace_xsq: contour quadrature did not converge at u=" << u << ", t=" << t
       << " (error " << res.error << ", value " << std::abs(res.value) << ", "
       << res.evaluations << " evaluations)";
    throw ConvergenceError(os.str());
  }
  return res.value;
}

Complex xsq_impl(const LevyModel& m, Complex u, double t, const TransformOptions& o,
                 double rel_tol) {
  check_horizon(t, "laplace_xsq");
  if (u == Complex(0.0)) return 1.0;
  check_u(u, "laplace_xsq");
  if (!m.admits_hourglass_extension())
    throw DomainError("laplace_xsq: " + m.describe() +
                      " violates the growth condition on the hourglass region; "
                      "E[exp(t psi(i Z sqrt(2u)))] does not exist");
  bool small = false;
  const Complex approx = xsq_small_u(m, u, t, small);
  if (small) return approx;
  return o.scheme == XsqScheme::GaussHermite ? xsq_gauss_hermite(m, u, t, o, rel_tol)
                                             : xsq_rotated(m, u, t, o, rel_tol);
}

}  // namespace

Complex psi_qv_jump(const LevyModel& model, Complex w, PsiQvPath path,
                    const QuadratureSpec& spec) {
  spec.validate();
  if (w == Complex(0.0)) return 0.0;
  const Complex u = -w;
  check_u(u, "psi_qv");
  return std::visit(Overloaded{model, u, path, spec}, model.params());
}

Complex psi_qv(const LevyModel& model, Complex w, PsiQvPath path, const QuadratureSpec& spec) {
  if (w == Complex(0.0)) return 0.0;
  return model.sigma_sq() * w + psi_qv_jump(model, w, path, spec);
}

Complex laplace_qv(const LevyModel& model, Complex u, double T, const TransformOptions& opts) {
  check_horizon(T, "laplace_qv");
  if (u == Complex(0.0)) return 1.0;
  check_u(u, "laplace_qv");
  return std::exp(T * psi_qv(model, -u, opts.qv_path, opts.quad));
}

Complex laplace_xsq(const LevyModel& model, Complex u, double t, const TransformOptions& opts) {
  opts.quad.validate();
  return xsq_impl(model, u, t, opts, opts.quad.rel_tol);
}

Complex laplace_rv(const LevyModel& model, Complex u, double T, int n,
                   const TransformOptions& opts) {
  opts.quad.validate();
  check_horizon(T, "laplace_rv");
  if (n < 1) throw InvalidArgument("laplace_rv: n must be >= 1");
  // The n-th power multiplies the relative error of one factor by n.
  // Gauss-Kronrod cannot resolve much below 1e-14, hence the floor.
  const double per_step = std::max(opts.quad.rel_tol / n, 1e-14);
  const Complex one = xsq_impl(model, u, T / n, opts, per_step);
  if (n == 1) return one;
  return std::pow(one, static_cast<double>(n));
}

MonteCarloEstimate laplace_pvar(const LevyModel& model, double u, double p, double t,
                                long n_draws, std::uint64_t seed) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("laplace_pvar: u must be real and >= 0");
  if (!(p > 0.0 && p <= 2.0)) throw DomainError("laplace_pvar: p must lie in (0, 2]");
  check_horizon(t, "laplace_pvar");
  if (n_draws < 2) throw InvalidArgument("laplace_pvar: need at least 2 draws");
  MonteCarloEstimate out;
  out.draws = n_draws;
  if (u == 0.0) {
    out.mean = 1.0;
    return out;
  }
  const double scale = std::pow(u, 1.0 / p);
  double sum = 0.0, sum_sq = 0.0;
  for (long i = 0; i < n_draws; ++i) {
    CounterStream rng(seed, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32),
                      0x70766172u);
    const double v = kPi * (rng.uniform() - 0.5);
    const double w = rng.exponential();
    double s;
    if (p == 1.0) {
      s = std::tan(v);
    } else {
      s = std::sin(p * v) / std::pow(std::cos(v), 1.0 / p) *
          std::pow(std::cos((1.0 - p) * v) / w, (1.0 - p) / p);
    }
    const double x = std::exp(t * model.exponent(kI * (s * scale))).real();
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(n_draws);
  out.mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * out.mean * out.mean) / (n - 1.0));
  out.std_error = std::sqrt(var / n);
  return out;
}

}  // namespace varpricer
