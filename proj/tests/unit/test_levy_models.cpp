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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "common/fixtures.hpp"
#include "varpricer/levy_models.hpp"
#include "varpricer/quadrature.hpp"

using namespace varpricer;
using namespace varpricer::testing;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// e^{iy} - 1 - iy without cancellation for small y.
Complex compensated_kernel(double y) {
  const double s = std::sin(0.5 * y);
  const double im = std::abs(y) < 1e-2
                        ? -y * y * y / 6.0 * (1.0 - y * y / 20.0 * (1.0 - y * y / 42.0))
                        : std::sin(y) - y;
  return {-2.0 * s * s, im};
}

// sigma^2 (is)^2 / 2 + int (e^{isx} - 1 - isx) F(dx), by quadrature over the density.
Complex compensated_integral(const LevyModel& m, double s) {
  QuadratureSpec q;
  q.rel_tol = 1e-12;
  q.abs_tol = 1e-16;
  q.max_nodes = 400000;
  Complex total = 0.5 * m.sigma_sq() * Complex(0.0, s) * Complex(0.0, s);
  for (double sign : {-1.0, 1.0}) {
    auto f = [&](double x) { return compensated_kernel(s * sign * x) * m.levy_density(sign * x); };
    // Every density here decays at least like e^{-3.7|x|} or e^{-x^2/0.08}.
    std::vector<double> brk = {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0};
    auto r = quad::gauss_kronrod(f, 0.0, 16.0, q, brk);
    REQUIRE(r.converged);
    total += r.value;
  }
  return total;
}

}  // namespace

TEST_CASE("exponent vanishes at zero and at one under the martingale drift") {
  for (const auto& m : catalog()) {
    CHECK(levy_exponent(m, 0.0) == Complex(0.0));
    CHECK(std::abs(levy_exponent(m, 1.0)) <= 1e-12);
  }
  CHECK(std::abs(levy_exponent(poisson_model(), 1.0)) <= 1e-12);
}

TEST_CASE("Black-Scholes exponent and drift") {
  const auto m = bs_model();
  CHECK(levy_exponent(m, 2.0).real() == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(martingale_drift(m) == doctest::Approx(-0.045).epsilon(1e-15));
  CHECK(triplet_drift(m) == doctest::Approx(-0.045).epsilon(1e-15));
  CHECK(jump_variance(m) == 0.0);
}

TEST_CASE("Merton drift closed form") {
  const auto m = merton_model();
  const double want = -0.02 - 0.5 * (std::exp(-0.1 + 0.02) - 1.0);
  CHECK(martingale_drift(m) == doctest::Approx(want).epsilon(1e-14));
  CHECK(triplet_drift(m) == doctest::Approx(want + 0.5 * -0.1).epsilon(1e-14));
  CHECK(jump_variance(m) == doctest::Approx(0.5 * (0.01 + 0.04)).epsilon(1e-14));
}

TEST_CASE("CGMY reference values") {
  const auto m = cgmy_model();
  CHECK(martingale_drift(m) == doctest::Approx(0.18020855745766042943).epsilon(1e-12));
  CHECK(rel(levy_exponent(m, Complex(0, 1)),
            Complex(-0.025102838538413153834, -0.020363383478398773858)) < 1e-12);
  CHECK(jump_variance(m) == doctest::Approx(0.051113846550762348821).epsilon(1e-12));
  CHECK(triplet_drift(m) == doctest::Approx(-0.023118328591416909822).epsilon(1e-12));
}

TEST_CASE("Kou reference values") {
  const auto m = kou_model();
  CHECK(martingale_drift(m) == doctest::Approx(0.22376216984838136708).epsilon(1e-12));
  CHECK(jump_variance(m) == doctest::Approx(0.071777582849651451063).epsilon(1e-12));
  CHECK(triplet_drift(m) == doctest::Approx(-0.077957901611475713206).epsilon(1e-12));
}

TEST_CASE("parameter validation at construction") {
  CHECK_THROWS_AS(LevyModel::black_scholes(-0.1), InvalidArgument);
  CHECK_THROWS_AS(LevyModel::kou(0.3, 0.5, 0.9, 1.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(LevyModel::nig(2.0, 1.5, 0.5), InvalidArgument);  // alpha - beta <= 1
  CHECK_NOTHROW(LevyModel::nig(2.0, 1.5, 0.5, DriftMode::make_explicit(0.0)));
  CHECK_THROWS_AS(LevyModel::nig(2.0, 2.5, 0.5), InvalidArgument);
  CHECK_THROWS_AS(LevyModel::cgmy(0.3, 3.0, 0.8, 0.5), InvalidArgument);
  CHECK_THROWS_AS(LevyModel::cgmy(0.3, 3.0, 18.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(LevyModel::cgmy(0.3, 3.0, 18.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(LevyModel::merton(0.2, 0.0, 0.0, 0.1), InvalidArgument);
}

TEST_CASE("martingale drift is undefined when psi(1) diverges") {
  const auto m = LevyModel::nig(2.0, 1.5, 0.5, DriftMode::make_explicit(0.01));
  CHECK_THROWS_AS(martingale_drift(m), DomainError);
}

TEST_CASE("poles and branch cuts are rejected") {
  CHECK_THROWS_AS(levy_exponent(kou_model(), 16.6667), DomainError);
  CHECK_THROWS_AS(levy_exponent(kou_model(), -10.0), DomainError);
  CHECK_THROWS_AS(levy_exponent(cgmy_model(), 20.0), DomainError);
  CHECK_THROWS_AS(levy_exponent(cgmy_model(), -4.0), DomainError);
  CHECK_THROWS_AS(levy_exponent(nig_model(), 21.0), DomainError);
  CHECK_NOTHROW(levy_exponent(cgmy_model(), Complex(20.0, 1e-3)));
}

TEST_CASE("conjugate symmetry on the hourglass") {
  for (const auto& m : catalog())
    for (double r : {0.3, 4.0, 90.0})
      for (double th : {0.3 * kPi, 0.5 * kPi, 0.7 * kPi}) {
        const Complex u = std::polar(r, th);
        CHECK(rel(levy_exponent(m, std::conj(u)), std::conj(levy_exponent(m, u))) < 1e-14);
      }
}

TEST_CASE("closed forms match the Levy-Khintchine integral on the imaginary axis") {
  for (const auto& m : {merton_model(), kou_model(), nig_model(), cgmy_model()})
    for (double s : {0.5, 3.0, 25.0}) {
      INFO(m.describe() << " s=" << s);
      const Complex closed = levy_exponent(m, Complex(0, s)) - Complex(0, s) * m.triplet_drift();
      CHECK(rel(closed, compensated_integral(m, s)) < 1e-8);
    }
}

TEST_CASE("second derivative along the imaginary axis gives the total variance") {
  const double h = 1e-3;
  for (const auto& m : catalog()) {
    const Complex p = levy_exponent(m, Complex(0, h));
    const Complex q = levy_exponent(m, Complex(0, -h));
    const double d2 = (p + q).real() / (h * h);  // d^2/ds^2 psi(is) at 0
    CHECK(-d2 == doctest::Approx(m.sigma_sq() + m.jump_variance()).epsilon(1e-6));
  }
}

TEST_CASE("growth condition on the hourglass") {
  for (const auto& m : {bs_model(), merton_model(), kou_model(), nig_model()}) {
    const auto rep = check_condition_psi(m);
    INFO(m.describe());
    CHECK(rep.satisfied);
    CHECK(rep.max_ratio[1] <= 1e-6);  // radius 1e4
    CHECK(m.admits_hourglass_extension());
  }
  // CGMY under the martingale drift: the linear term mu cos(theta)/r decays
  // slowly, so the ratio is still about 9e-6 at r = 1e4 and falls like 1/r.
  const auto cg = check_condition_psi(cgmy_model());
  CHECK(cg.satisfied);
  CHECK(cg.max_ratio[1] < 2e-5);
  CHECK(cg.max_ratio[2] < cg.max_ratio[1] / 50.0);
  CHECK(cgmy_model().admits_hourglass_extension());
}

TEST_CASE("Black-Scholes limit of the growth ratio") {
  const auto m = LevyModel::black_scholes(0.3, DriftMode::make_explicit(0.0));
  const double th = 0.6 * kPi;
  const auto rep = check_condition_psi(m, {th}, {1e3});
  CHECK(rep.max_ratio[0] == doctest::Approx(0.045 * std::cos(2 * th)).epsilon(1e-12));
}

TEST_CASE("Poisson counterexample violates the growth condition") {
  const auto m = poisson_model();
  CHECK(martingale_drift(m) == doctest::Approx(-(std::exp(1.0) - 1.0)).epsilon(1e-15));
  const auto rep = check_condition_psi(m, {3 * kPi / 8}, {1e1, 1e2, 1e3});
  CHECK_FALSE(rep.satisfied);
  CHECK(rep.max_ratio[1] > rep.max_ratio[0]);
  CHECK(rep.max_ratio[2] > 1e6);
  CHECK_FALSE(m.admits_hourglass_extension());
}
