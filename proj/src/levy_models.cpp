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

#include "varpricer/levy_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "varpricer/special_functions.hpp"

namespace varpricer {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

bool finite(double x) { return std::isfinite(x); }

ModelKind kind_of(const ModelParams& p) {
  return std::visit(Overloaded{
                        [](const BlackScholesParams&) { return ModelKind::BlackScholes; },
                        [](const MertonParams&) { return ModelKind::Merton; },
                        [](const KouParams&) { return ModelKind::Kou; },
                        [](const NigParams&) { return ModelKind::NIG; },
                        [](const CgmyParams&) { return ModelKind::CGMY; },
                        [](const PoissonParams&) { return ModelKind::Poisson; },
                    },
                    p);
}

void validate(const ModelParams& params, const DriftMode& drift) {
  require(drift.martingale || finite(drift.mu), "explicit drift must be finite");
  std::visit(
      Overloaded{
          [](const BlackScholesParams& p) {
            require(finite(p.sigma) && p.sigma >= 0.0, "BlackScholes: sigma must be >= 0");
          },
          [](const MertonParams& p) {
            require(finite(p.sigma) && p.sigma >= 0.0, "Merton: sigma must be >= 0");
            require(finite(p.lambda) && p.lambda > 0.0, "Merton: lambda must be > 0");
            require(finite(p.gamma), "Merton: gamma must be finite");
            require(finite(p.delta) && p.delta > 0.0, "Merton: delta must be > 0");
          },
          [](const KouParams& p) {
            require(finite(p.sigma) && p.sigma >= 0.0, "Kou: sigma must be >= 0");
            require(finite(p.lambda_plus) && p.lambda_plus > 0.0, "Kou: lambda_plus must be > 0");
            require(finite(p.lambda_minus) && p.lambda_minus > 0.0,
                    "Kou: lambda_minus must be > 0");
            require(finite(p.nu_plus) && p.nu_plus > 1.0, "Kou: nu_plus must be > 1");
            require(finite(p.nu_minus) && p.nu_minus > 0.0, "Kou: nu_minus must be > 0");
          },
          [&](const NigParams& p) {
            require(finite(p.alpha) && p.alpha > 0.0, "NIG: alpha must be > 0");
            require(finite(p.beta) && std::abs(p.beta) < p.alpha,
                    "NIG: beta must lie in (-alpha, alpha)");
            require(finite(p.delta) && p.delta > 0.0, "NIG: delta must be > 0");
            if (drift.martingale)
              require(p.alpha - p.beta > 1.0,
                      "NIG: alpha - beta must exceed 1 for the martingale drift");
          },
          [](const CgmyParams& p) {
            require(finite(p.C) && p.C > 0.0, "CGMY: C must be > 0");
            require(finite(p.G) && p.G > 0.0, "CGMY: G must be > 0");
            require(finite(p.M) && p.M > 1.0, "CGMY: M must be > 1");
            require(finite(p.Y) && p.Y < 2.0, "CGMY: Y must be < 2");
            require(p.Y != 0.0 && p.Y != 1.0,
                    "CGMY: Y = 0 and Y = 1 are removable singularities of the closed "
                    "form; use a nearby value");
          },
          [](const PoissonParams& p) {
            require(finite(p.lambda) && p.lambda > 0.0, "Poisson: lambda must be > 0");
            require(finite(p.jump) && p.jump != 0.0, "Poisson: jump must be nonzero");
          },
      },
      params);
}

// exp(z) K_1(z) for z > 0.
double scaled_bessel_k1(double z) {
  if (z < 500.0) return std::exp(z) * std::cyl_bessel_k(1.0, z);
  const double w = 1.0 / (8.0 * z);
  return std::sqrt(kPi / (2.0 * z)) * (1.0 + 3.0 * w - 7.5 * w * w + 52.5 * w * w * w);
}

bool on_real_axis(Complex u) { return u.imag() == 0.0; }

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::BlackScholes: return "BlackScholes";
    case ModelKind::Merton: return "Merton";
    case ModelKind::Kou: return "Kou";
    case ModelKind::NIG: return "NIG";
    case ModelKind::CGMY: return "CGMY";
    case ModelKind::Poisson: return "Poisson";
  }
  return "unknown";
}

LevyModel::LevyModel(ModelParams params, DriftMode drift)
    : kind_(kind_of(params)), params_(params), drift_(drift) {
  validate(params_, drift_);

  std::visit(Overloaded{
                 [&](const BlackScholesParams& p) {
                   sigma_sq_ = p.sigma * p.sigma;
                   jump_variance_ = 0.0;
                   jump_intensity_ = 0.0;
                 },
                 [&](const MertonParams& p) {
                   sigma_sq_ = p.sigma * p.sigma;
                   jump_variance_ = p.lambda * (p.gamma * p.gamma + p.delta * p.delta);
                   jump_intensity_ = p.lambda;
                 },
                 [&](const KouParams& p) {
                   sigma_sq_ = p.sigma * p.sigma;
                   jump_variance_ = 2.0 * p.lambda_plus / (p.nu_plus * p.nu_plus) +
                                    2.0 * p.lambda_minus / (p.nu_minus * p.nu_minus);
                   jump_intensity_ = p.lambda_plus + p.lambda_minus;
                 },
                 [&](const NigParams& p) {
                   const double g2 = p.alpha * p.alpha - p.beta * p.beta;
                   sigma_sq_ = 0.0;
                   jump_variance_ = p.delta * p.alpha * p.alpha / (g2 * std::sqrt(g2));
                   jump_intensity_ = kInf;
                 },
                 [&](const CgmyParams& p) {
                   sigma_sq_ = 0.0;
                   jump_variance_ = p.C * std::tgamma(2.0 - p.Y) *
                                    (std::pow(p.M, p.Y - 2.0) + std::pow(p.G, p.Y - 2.0));
                   jump_intensity_ =
                       p.Y < 0.0 ? p.C * std::tgamma(-p.Y) * (std::pow(p.M, p.Y) + std::pow(p.G, p.Y))
                                 : kInf;
                 },
                 [&](const PoissonParams& p) {
                   sigma_sq_ = 0.0;
                   jump_variance_ = p.lambda * p.jump * p.jump;
                   jump_intensity_ = p.lambda;
                 },
             },
             params_);

  mu_ = drift_.martingale ? -(0.5 * sigma_sq_ + jump_exponent(1.0).real()) : drift_.mu;

  // psi'(0) of the jump part.
  double jump_slope = 0.0;
  std::visit(Overloaded{
                 [&](const BlackScholesParams&) {},
                 [&](const MertonParams& p) { jump_slope = p.lambda * p.gamma; },
                 [&](const KouParams& p) {
                   jump_slope = p.lambda_plus / p.nu_plus - p.lambda_minus / p.nu_minus;
                 },
                 [&](const NigParams& p) {
                   jump_slope = p.delta * p.beta / std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
                 },
                 [&](const CgmyParams& p) {
                   jump_slope = p.C * std::tgamma(-p.Y) * p.Y *
                                (std::pow(p.G, p.Y - 1.0) - std::pow(p.M, p.Y - 1.0));
                 },
                 [&](const PoissonParams& p) { jump_slope = p.lambda * p.jump; },
             },
             params_);
  triplet_drift_ = mu_ + jump_slope;

  hourglass_ok_ = kind_ != ModelKind::Poisson && check_condition_psi(*this).satisfied;
}

LevyModel LevyModel::black_scholes(double sigma, DriftMode d) {
  return LevyModel(BlackScholesParams{sigma}, d);
}
LevyModel LevyModel::merton(double sigma, double lambda, double gamma, double delta,
                            DriftMode d) {
  return LevyModel(MertonParams{sigma, lambda, gamma, delta}, d);
}
LevyModel LevyModel::kou(double sigma, double lambda_plus, double nu_plus,
                         double lambda_minus, double nu_minus, DriftMode d) {
  return LevyModel(KouParams{sigma, lambda_plus, nu_plus, lambda_minus, nu_minus}, d);
}
LevyModel LevyModel::nig(double alpha, double beta, double delta, DriftMode d) {
  return LevyModel(NigParams{alpha, beta, delta}, d);
}
LevyModel LevyModel::cgmy(double C, double G, double M, double Y, DriftMode d) {
  return LevyModel(CgmyParams{C, G, M, Y}, d);
}
LevyModel LevyModel::poisson(double lambda, double jump, DriftMode d) {
  return LevyModel(PoissonParams{lambda, jump}, d);
}

Complex LevyModel::jump_exponent(Complex u) const {
  return std::visit(
      Overloaded{
          [&](const BlackScholesParams&) -> Complex { return 0.0; },
          [&](const MertonParams& p) -> Complex {
            return p.lambda * (std::exp(p.gamma * u + 0.5 * p.delta * p.delta * u * u) - 1.0);
          },
          [&](const KouParams& p) -> Complex {
            if (on_real_axis(u) && (u.real() >= p.nu_plus || u.real() <= -p.nu_minus))
              throw DomainError("Kou exponent: u on or beyond a pole (nu_plus=" +
                                std::to_string(p.nu_plus) +
                                ", -nu_minus=" + std::to_string(-p.nu_minus) + ")");
            return p.lambda_plus * u / (p.nu_plus - u) - p.lambda_minus * u / (p.nu_minus + u);
          },
          [&](const NigParams& p) -> Complex {
            if (on_real_axis(u) && std::abs(p.beta + u.real()) >= p.alpha)
              throw DomainError("NIG exponent: u on a branch cut");
            const double g = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
            const Complex bu = p.beta + u;
            return p.delta * (g - std::sqrt(p.alpha * p.alpha - bu * bu));
          },
          [&](const CgmyParams& p) -> Complex {
            if (on_real_axis(u) && (u.real() >= p.M || u.real() <= -p.G))
              throw DomainError("CGMY exponent: u on a branch cut");
            const Complex a = std::pow(Complex(p.M) - u, p.Y) - std::pow(p.M, p.Y);
            const Complex b = std::pow(Complex(p.G) + u, p.Y) - std::pow(p.G, p.Y);
            return p.C * std::tgamma(-p.Y) * (a + b);
          },
          [&](const PoissonParams& p) -> Complex {
            return p.lambda * (std::exp(p.jump * u) - 1.0);
          },
      },
      params_);
}

Complex LevyModel::exponent(Complex u) const {
  if (u == Complex(0.0)) return 0.0;
  return mu_ * u + 0.5 * sigma_sq_ * u * u + jump_exponent(u);
}

double LevyModel::levy_density(double x) const {
  if (x == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const BlackScholesParams&) { return 0.0; },
          [&](const MertonParams& p) {
            const double z = (x - p.gamma) / p.delta;
            return p.lambda * std::exp(-0.5 * z * z) / (p.delta * std::sqrt(2.0 * kPi));
          },
          [&](const KouParams& p) {
            return x > 0.0 ? p.lambda_plus * p.nu_plus * std::exp(-p.nu_plus * x)
                           : p.lambda_minus * p.nu_minus * std::exp(p.nu_minus * x);
          },
          [&](const NigParams& p) {
            const double ax = std::abs(x);
            const double z = p.alpha * ax;
            return p.delta * p.alpha / kPi * std::exp(p.beta * x - z) * scaled_bessel_k1(z) / ax;
          },
          [&](const CgmyParams& p) {
            const double ax = std::abs(x);
            const double rate = x > 0.0 ? p.M : p.G;
            return p.C * std::exp(-rate * ax) / std::pow(ax, 1.0 + p.Y);
          },
          [&](const PoissonParams&) { return 0.0; },
      },
      params_);
}

std::string LevyModel::describe() const {
  std::ostringstream os;
  os.precision(10);
  os << to_string(kind_) << "(";
  std::visit(Overloaded{
                 [&](const BlackScholesParams& p) { os << "sigma=" << p.sigma; },
                 [&](const MertonParams& p) {
                   os << "sigma=" << p.sigma << ", lambda=" << p.lambda << ", gamma=" << p.gamma
                      << ", delta=" << p.delta;
                 },
                 [&](const KouParams& p) {
                   os << "sigma=" << p.sigma << ", lambda_plus=" << p.lambda_plus
                      << ", nu_plus=" << p.nu_plus << ", lambda_minus=" << p.lambda_minus
                      << ", nu_minus=" << p.nu_minus;
                 },
                 [&](const NigParams& p) {
                   os << "alpha=" << p.alpha << ", beta=" << p.beta << ", delta=" << p.delta;
                 },
                 [&](const CgmyParams& p) {
                   os << "C=" << p.C << ", G=" << p.G << ", M=" << p.M << ", Y=" << p.Y;
                 },
                 [&](const PoissonParams& p) {
                   os << "lambda=" << p.lambda << ", jump=" << p.jump;
                 },
             },
             params_);
  os << "; mu=" << mu_ << (drift_.martingale ? " martingale" : " explicit") << ")";
  return os.str();
}

Complex levy_exponent(const LevyModel& model, Complex u) { return model.exponent(u); }

double martingale_drift(const LevyModel& model) {
  if (const auto* p = std::get_if<NigParams>(&model.params()); p && p->alpha - p->beta <= 1.0)
    throw DomainError("martingale_drift: psi(1) is infinite for NIG with alpha - beta <= 1");
  if (model.drift_mode().martingale) return model.mu();
  LevyModel m(model.params(), DriftMode::make_martingale());
  return m.mu();
}

double jump_variance(const LevyModel& model) { return model.jump_variance(); }
double triplet_drift(const LevyModel& model) { return model.triplet_drift(); }

ConditionReport check_condition_psi(const LevyModel& model, std::vector<double> thetas,
                                    std::vector<double> radii, double threshold) {
  for (double t : thetas)
    if (!(t > 0.25 * kPi && t < 0.75 * kPi))
      throw InvalidArgument("check_condition_psi: directions must lie in (pi/4, 3pi/4)");
  if (radii.empty() || thetas.empty())
    throw InvalidArgument("check_condition_psi: empty grid");
  for (double r : radii)
    if (!(r > 0.0 && std::isfinite(r)))
      throw InvalidArgument("check_condition_psi: radii must be positive and finite");
  std::sort(radii.begin(), radii.end());

  constexpr int kBand = 8;
  ConditionReport rep;
  rep.thetas = thetas;
  rep.radii = radii;
  rep.threshold = threshold;
  for (double r : radii) {
    double worst = -kInf;
    // Re(psi) may oscillate in sign along a ray, so each radius stands for
    // the band [r, 2r).
    for (int j = 0; j < kBand; ++j) {
      const double rho = r * (1.0 + static_cast<double>(j) / kBand);
      for (double t : thetas) {
        double ratio;
        try {
          const Complex psi = model.exponent(std::polar(rho, t));
          ratio = psi.real() / (rho * rho);
          if (!std::isfinite(ratio)) ratio = kInf;
        } catch (const DomainError&) {
          ratio = kInf;
        }
        worst = std::max(worst, ratio);
      }
    }
    rep.max_ratio.push_back(worst);
  }
  rep.max_ratio_at_largest = rep.max_ratio.back();
  rep.satisfied = rep.max_ratio_at_largest <= threshold;
  return rep;
}

ConditionReport check_condition_psi(const LevyModel& model) {
  std::vector<double> thetas;
  constexpr int kDirections = 16;
  for (int j = 0; j < kDirections; ++j)
    thetas.push_back(0.25 * kPi + (j + 0.5) * (0.5 * kPi) / kDirections);
  return check_condition_psi(model, std::move(thetas), {1e2, 1e4, 1e6, 1e8});
}

}  // namespace varpricer
