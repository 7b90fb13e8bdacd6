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

#include "varpricer/validation.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <numbers>

#include <json.hpp>

#include "varpricer/asymptotics.hpp"
#include "varpricer/laplace_transforms.hpp"
#include "varpricer/mc_oracle.hpp"
#include "varpricer/transform_pricer.hpp"

namespace varpricer {
namespace {

class Runner {
 public:
  explicit Runner(ValidationReport& report) : report_(report) {}

  void set_suite(std::string suite) { suite_ = std::move(suite); }

  // `measure` returns the measured value; the check passes when it does
  // not exceed `tol`.
  void check(const std::string& name, double tol, const std::function<double()>& measure) {
    CheckResult r{suite_, name, false, 0.0, tol, ""};
    try {
      r.measured = measure();
      r.passed = r.measured <= tol;
    } catch (const std::exception& e) {
      r.measured = std::nan("");
      r.detail = e.what();
    }
    report_.checks.push_back(std::move(r));
  }

  void expect_throw(const std::string& name, const std::function<void()>& body) {
    CheckResult r{suite_, name, false, 0.0, 0.0, ""};
    try {
      body();
      r.detail = "no exception";
    } catch (const DomainError& e) {
      r.passed = true;
      r.detail = e.what();
    } catch (const std::exception& e) {
      r.detail = std::string("unexpected exception: ") + e.what();
    }
    report_.checks.push_back(std::move(r));
  }

 private:
  ValidationReport& report_;
  std::string suite_;
};

const std::vector<Complex>& transform_grid() {
  static const std::vector<Complex> g = {{0.1, 0.0}, {1.0, 1.0},    {0.3, -2.0}, {5.0, 0.0},
                                         {2.0, 15.0}, {40.0, -30.0}, {0.5, 0.5},  {10.0, 3.0},
                                         {0.05, 0.04}, {25.0, 25.0}};
  return g;
}

double gaussian_square(Complex u, double m, double s2, double& im) {
  const Complex q = 1.0 + 2.0 * u * s2;
  const Complex v = std::exp(-0.5 * std::log(q) - u * m * m / q);
  im = v.imag();
  return v.real();
}

SimPlan sim_plan(const LevyModel& m, double T, int n, long paths, std::uint64_t seed) {
  SimPlan p{m};
  p.T = T;
  p.n = n;
  p.paths = paths;
  p.seed = seed;
  if (m.kind() == ModelKind::CGMY) p.scheme = SimScheme::SmallJumpTruncation;
  return p;
}

void transforms_suite(Runner& run, const LevyModel& m, long paths, std::uint64_t seed) {
  run.set_suite("transforms");
  const bool ok = m.admits_hourglass_extension();
  if (!ok) {
    run.expect_throw("squared increment transform rejected",
                     [&] { laplace_xsq(m, Complex(1.0, 0.0), 0.1); });
    run.expect_throw("realized variance transform rejected",
                     [&] { laplace_rv(m, Complex(1.0, 0.0), 0.1, 2); });
  } else {
    run.check("growth condition at largest radius", 1e-6,
              [&] { return check_condition_psi(m).max_ratio_at_largest; });
    run.check("squared increment conjugate symmetry", 1e-12, [&] {
      double worst = 0.0;
      for (Complex u : transform_grid()) {
        const Complex a = laplace_xsq(m, u, 0.1), b = laplace_xsq(m, std::conj(u), 0.1);
        worst = std::max(worst, std::abs(a - std::conj(b)));
      }
      return worst;
    });
    run.check("squared increment bounded by one", 1e-12, [&] {
      double worst = 0.0;
      for (Complex u : transform_grid()) worst = std::max(worst, std::abs(laplace_xsq(m, u, 0.1)) - 1.0);
      return worst;
    });
    if (m.kind() == ModelKind::BlackScholes) {
      run.check("squared increment vs Gaussian closed form", 1e-8, [&] {
        double worst = 0.0;
        const double t = 0.25;
        const double s2 = m.sigma_sq() * t, mean = m.triplet_drift() * t;
        for (Complex u : transform_grid()) {
          double im = 0.0;
          const double re = gaussian_square(u, mean, s2, im);
          worst = std::max(worst, std::abs(laplace_xsq(m, u, t) - Complex(re, im)));
        }
        return worst;
      });
    }
  }
  run.check("quadratic variation transform bounded by one", 1e-12, [&] {
    double worst = 0.0;
    for (Complex u : transform_grid()) worst = std::max(worst, std::abs(laplace_qv(m, u, 0.1)) - 1.0);
    return worst;
  });
  if (m.kind() != ModelKind::BlackScholes && m.kind() != ModelKind::Poisson) {
    run.check("psi_qv closed form vs Levy measure quadrature", 1e-8, [&] {
      double worst = 0.0;
      for (Complex u : transform_grid()) {
        const Complex a = psi_qv(m, -u, PsiQvPath::ClosedForm);
        const Complex b = psi_qv(m, -u, PsiQvPath::Quadrature);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
      }
      return worst;
    });
  }
  if (paths > 0 && ok) {
    run.check("squared increment vs Monte Carlo (standard errors)", 3.0, [&] {
      const auto p = sim_plan(m, 1.0 / 252, 1, paths, seed);
      const Complex u(0.5, 2.0);
      const auto est = mc_laplace(p, u, LaplaceTarget::Xsq);
      const Complex ref = laplace_xsq(m, u, p.T);
      return std::max(std::abs(est.mean.real() - ref.real()) / est.se_real,
                      std::abs(est.mean.imag() - ref.imag()) / est.se_imag);
    });
  }
}

void prices_suite(Runner& run, const LevyModel& m, long paths, std::uint64_t seed) {
  run.set_suite("prices");
  const double T = 10.0 / 252;
  const int n = 10;
  const bool rv_ok = m.admits_hourglass_extension();
  run.check("quadratic variation put-call parity", 1e-10, [&] {
    const auto p = price_option_qv(m, T, 1.1, Side::Put), c = price_option_qv(m, T, 1.1, Side::Call);
    return std::abs((c.price - p.price) - (c.swap_rate - c.strike)) / c.swap_rate;
  });
  run.check("quadratic variation damping invariance", 1e-8, [&] {
    const auto a = price_option_qv(m, T, 1.1, Side::Put);
    ContourSpec cs;
    cs.damping = 2.0 / (a.strike * T - m.sigma_sq() * T);
    const auto b = price_option_qv(m, T, 1.1, Side::Put, cs);
    return std::abs(a.price - b.price) / a.swap_rate;
  });
  if (!rv_ok) {
    run.expect_throw("realized variance pricing rejected",
                     [&] { price_option_rv(m, T, n, 1.0, Side::Call); });
    return;
  }
  run.check("realized variance damping invariance", 1e-8, [&] {
    const auto a = price_option_rv(m, T, n, 1.1, Side::Put);
    ContourSpec cs;
    cs.damping = 2.0 / (a.strike * T);
    const auto b = price_option_rv(m, T, n, 1.1, Side::Put, cs);
    return std::abs(a.price - b.price) / a.swap_rate;
  });
  run.check("realized variance monotone in strike", 1e-12, [&] {
    double worst = 0.0, last_put = 0.0, last_call = 1e300;
    for (double k : {0.6, 0.9, 1.0, 1.1, 1.5}) {
      const double p = price_option_rv(m, T, n, k, Side::Put).price;
      const double c = price_option_rv(m, T, n, k, Side::Call).price;
      worst = std::max({worst, last_put - p, c - last_call, -p, -c});
      last_put = p;
      last_call = c;
    }
    return worst;
  });
  if (m.kind() == ModelKind::BlackScholes) {
    run.check("exact vs noncentral chi-square closed form (relative)", 1e-5, [&] {
      const double sigma = std::sqrt(m.sigma_sq());
      double worst = 0.0;
      for (Side side : {Side::Put, Side::Call}) {
        const double a = price_option_rv(m, T, n, 1.0, side).price;
        const double b = bs_closed_form_rv(sigma, m.triplet_drift(), T, n, 1.0, side);
        worst = std::max(worst, std::abs(a - b) / b);
      }
      return worst;
    });
  }
  if (paths > 0) {
    const auto plan = sim_plan(m, T, n, paths, seed);
    const auto sample = simulate_variance(plan);
    for (Underlying und : {Underlying::Rv, Underlying::Qv}) {
      const std::string label = und == Underlying::Rv ? "realized" : "quadratic";
      run.check("ATM call on " + label + " variance vs Monte Carlo (standard errors)", 3.0, [&] {
        const auto mc = mc_price(sample, plan, 1.0, Side::Call, und);
        const auto ex = und == Underlying::Rv ? price_option_rv(m, T, n, 1.0, Side::Call)
                                              : price_option_qv(m, T, 1.0, Side::Call);
        const double diff = std::abs(ex.price - mc.price);
        if (mc.est_error == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
        return diff / mc.est_error;
      });
    }
  }
}

void limits_suite(Runner& run, const LevyModel& m) {
  run.set_suite("limits");
  const double V = m.sigma_sq() + m.jump_variance();
  run.check("limit parity", 1e-12, [&] {
    double worst = 0.0;
    for (double k : {0.5, 1.0, 1.5})
      for (int n : {1, 10, 100}) {
        worst = std::max(worst, std::abs(limit_call_rv(m, k, n) - limit_put_rv(m, k, n) - (1 - k) * V) / V);
        worst = std::max(worst, std::abs(limit_call_qv(m, k) - limit_put_qv(m, k) - (1 - k) * V) / V);
      }
    return worst;
  });
  run.check("put gap equals call gap", 1e-12, [&] {
    double worst = 0.0;
    for (double k : {0.5, 1.0, 1.5})
      for (int n : {1, 10, 100}) {
        const double dp = limit_put_rv(m, k, n) - limit_put_qv(m, k);
        const double dc = limit_call_rv(m, k, n) - limit_call_qv(m, k);
        worst = std::max(worst, std::abs(dp - dc) / V);
      }
    return worst;
  });
  run.check("gap nonincreasing in n", 0.0, [&] {
    double worst = 0.0, last = discretization_gap(m, 1.0, 1);
    for (int n = 2; n <= 512; ++n) {
      const double g = discretization_gap(m, 1.0, n);
      worst = std::max(worst, g - last);
      last = g;
    }
    return worst;
  });
  run.check("put limit vs gamma law expectation", 1e-9, [&] {
    double worst = 0.0;
    for (double k : {0.7, 1.0, 1.3})
      for (int n : {1, 5, 50}) {
        auto g = [&](double x) { return std::max(k * V - x, 0.0); };
        const double e = gamma_limit_expectation(g, {n, m.sigma_sq()}, {k * V});
        worst = std::max(worst, std::abs(e - limit_put_rv(m, k, n)) / V);
      }
    return worst;
  });
  run.check("Q decreasing and R increasing in r", 0.0, [&] {
    double worst = 0.0;
    for (int n : {1, 2, 10}) {
      double q = q_fn(1.0, n, 0.0), r = r_fn(1.0, n, 0.0);
      for (double x = 0.1; x <= 2.0; x += 0.1) {
        const double q2 = q_fn(1.0, n, x), r2 = r_fn(1.0, n, x);
        if (!(q2 < q)) worst = std::max(worst, q2 - q + 1e-300);
        if (!(r2 > r) && r2 < 1.0) worst = std::max(worst, r - r2 + 1e-300);
        q = q2;
        r = r2;
      }
    }
    return worst;
  });
}

}  // namespace

bool ValidationReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["passed"] = passed();
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["suite"] = c.suite;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["measured"] = c.measured;
    e["tolerance"] = c.tolerance;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j.dump();
}

ValidationReport run_validation(const LevyModel& model, Suite suite, long paths,
                                std::uint64_t seed) {
  if (paths < 0) throw InvalidArgument("run_validation: paths must be >= 0");
  ValidationReport report;
  report.model = model.describe();
  Runner run(report);
  if (suite == Suite::Transforms || suite == Suite::All) transforms_suite(run, model, paths, seed);
  if (suite == Suite::Prices || suite == Suite::All) prices_suite(run, model, paths, seed);
  if (suite == Suite::Limits || suite == Suite::All) limits_suite(run, model);
  return report;
}

}  // namespace varpricer
