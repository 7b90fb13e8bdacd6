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

#include "common/fixtures.hpp"
#include "varpricer/laplace_transforms.hpp"

using namespace varpricer;
using namespace varpricer::testing;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// E[exp(-u X^2)] for X ~ N(m, s2).
Complex gaussian_square(Complex u, double m, double s2) {
  const Complex q = 1.0 + 2.0 * u * s2;
  return std::exp(-0.5 * std::log(q) - u * m * m / q);
}

std::vector<Complex> complex_grid() {
  return {{0.1, 0.0},  {1.0, 1.0},   {0.3, -2.0},  {5.0, 0.0},    {2.0, 15.0},
          {40.0, -7.0}, {0.01, 0.5}, {200.0, 900.0}, {1e3, -4e3}, {0.7, 0.2}};
}

}  // namespace

TEST_CASE("psi_qv trivial values") {
  CHECK(psi_qv(bs_model(), -2.0).real() == doctest::Approx(-0.18).epsilon(1e-15));
  for (const auto& m : catalog()) CHECK(psi_qv(m, 0.0) == Complex(0.0));
  CHECK_THROWS_AS(psi_qv(kou_model(), Complex(0.5, 1.0)), DomainError);
  CHECK_THROWS_AS(psi_qv(kou_model(), Complex(0.0, 1.0)), DomainError);
}

TEST_CASE("psi_qv reference values") {
  CHECK(rel(psi_qv(cgmy_model(), -5.0), -0.19171800340048) < 1e-12);
  CHECK(rel(psi_qv(kou_model(), Complex(-1, -1)),
            Complex(-0.16115029884305778, -0.15428302140292952)) < 1e-12);
  CHECK(rel(psi_qv(merton_model(), -2.0), -0.04369715787213778 - 0.04 * 2.0) < 1e-13);
  CHECK(rel(psi_qv(nig_model(), Complex(-3, 1)),
            Complex(-0.11580711245314491, 0.037326092259228632)) < 1e-10);
}

TEST_CASE("psi_qv closed form agrees with Levy density quadrature") {
  for (const auto& m : {kou_model(), cgmy_model(), merton_model(), nig_model()})
    for (Complex u : complex_grid()) {
      INFO(m.describe() << " u=" << u);
      const Complex a = psi_qv(m, -u, PsiQvPath::ClosedForm);
      const Complex b = psi_qv(m, -u, PsiQvPath::Quadrature);
      CHECK(rel(a, b) < 1e-8);
    }
}

TEST_CASE("laplace_qv") {
  CHECK(laplace_qv(cgmy_model(), 0.0, 1.0) == Complex(1.0));
  CHECK(laplace_qv(bs_model(), 1.0, 1.0).real() == doctest::Approx(std::exp(-0.09)).epsilon(1e-15));
  CHECK_THROWS_AS(laplace_qv(bs_model(), Complex(-1.0, 0.0), 1.0), DomainError);
  CHECK_THROWS_AS(laplace_qv(bs_model(), 1.0, 0.0), InvalidArgument);
}

TEST_CASE("laplace_xsq matches the Gaussian closed form") {
  const auto driftless = LevyModel::black_scholes(0.3, DriftMode::make_explicit(0.0));
  CHECK(laplace_xsq(driftless, 1.0, 1.0).real() ==
        doctest::Approx(std::pow(1.18, -0.5)).epsilon(1e-13));
  const auto m = bs_model();
  for (double t : {1.0 / 252, 0.1, 2.0})
    for (Complex u : complex_grid()) {
      const Complex want = gaussian_square(u, -0.045 * t, 0.09 * t);
      CHECK(rel(laplace_xsq(m, u, t), want) < 1e-12);
    }
}

TEST_CASE("laplace_xsq schemes agree") {
  TransformOptions gh;
  gh.scheme = XsqScheme::GaussHermite;
  for (const auto& m : catalog())
    for (Complex u : {Complex(0.5, 2.0), Complex(3.0, -1.0), Complex(20.0, 5.0)}) {
      INFO(m.describe() << " u=" << u);
      CHECK(rel(laplace_xsq(m, u, 0.1), laplace_xsq(m, u, 0.1, gh)) < 1e-9);
    }
}

TEST_CASE("transform bounds, symmetry and monotonicity") {
  for (const auto& m : catalog()) {
    INFO(m.describe());
    for (Complex u : complex_grid()) {
      const Complex x = laplace_xsq(m, u, 0.05);
      const Complex r = laplace_rv(m, u, 0.2, 4);
      const Complex q = laplace_qv(m, u, 0.2);
      CHECK(std::abs(x) <= 1.0 + 1e-12);
      CHECK(std::abs(r) <= 1.0 + 1e-12);
      CHECK(std::abs(q) <= 1.0 + 1e-12);
      CHECK(std::abs(laplace_xsq(m, std::conj(u), 0.05) - std::conj(x)) <= 1e-13);
      CHECK(std::abs(laplace_rv(m, std::conj(u), 0.2, 4) - std::conj(r)) <= 1e-13);
      CHECK(std::abs(laplace_qv(m, std::conj(u), 0.2) - std::conj(q)) <= 1e-13);
    }
    double prev_x = 1.0, prev_q = 1.0;
    for (double u = 0.05; u < 5e3; u *= 2.0) {
      const Complex x = laplace_xsq(m, u, 0.05);
      const Complex q = laplace_qv(m, u, 0.05);
      CHECK(std::abs(x.imag()) <= 1e-14);
      CHECK(x.real() > 0.0);
      CHECK(x.real() < prev_x);
      CHECK(q.real() > 0.0);
      CHECK(q.real() <= prev_q);
      prev_x = x.real();
      prev_q = q.real();
    }
  }
}

TEST_CASE("laplace_xsq near zero") {
  for (const auto& m : catalog()) {
    CHECK(laplace_xsq(m, 0.0, 1.0) == Complex(1.0));
    CHECK(std::abs(laplace_xsq(m, Complex(1e-12, 1e-12), 1.0) - 1.0) < 1e-11);
    // continuity across the switch to the first-order expansion
    const Complex a = laplace_xsq(m, 1e-8, 1.0);
    const Complex b = laplace_xsq(m, 1e-9, 1.0);
    CHECK(std::abs(a - 1.0) == doctest::Approx(10.0 * std::abs(b - 1.0)).epsilon(1e-4));
  }
  CHECK_THROWS_AS(laplace_xsq(bs_model(), Complex(0.0, 2.0), 1.0), DomainError);
  CHECK_THROWS_AS(laplace_xsq(bs_model(), Complex(-1.0, 2.0), 1.0), DomainError);
}

TEST_CASE("Poisson counterexample is rejected") {
  CHECK_THROWS_AS(laplace_xsq(poisson_model(), 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(laplace_rv(poisson_model(), 1.0, 1.0, 10), DomainError);
  // Its quadratic variation transform is fine.
  CHECK(laplace_qv(poisson_model(), 1.0, 1.0).real() ==
        doctest::Approx(std::exp(std::exp(-1.0) - 1.0)).epsilon(1e-14));
}

TEST_CASE("laplace_rv") {
  const auto m = bs_model();
  for (Complex u : {Complex(1.0, 2.0), Complex(30.0, -4.0)})
    CHECK(laplace_rv(kou_model(), u, 0.3, 1) == laplace_xsq(kou_model(), u, 0.3));
  const double T = 10.0 / 252, t = T / 10, b = -0.045;
  const Complex u = 3.0;
  const Complex q = 1.0 + 2.0 * u * 0.09 * t;
  const Complex want = std::pow(q, -5.0) * std::exp(-10.0 * u * b * b * t * t / q);
  CHECK(rel(laplace_rv(m, u, T, 10), want) < 1e-12);
  CHECK_THROWS_AS(laplace_rv(m, u, T, 0), InvalidArgument);
}

TEST_CASE("realized variance transform approaches the quadratic variation transform") {
  for (const auto& m : {merton_model(), kou_model()}) {
    const double T = 0.25;
    const Complex q = laplace_qv(m, 1.0, T);
    double prev = 1e300;
    for (int n : {1, 4, 16, 64, 256}) {
      const double d = std::abs(laplace_rv(m, 1.0, T, n) - q);
      INFO(m.describe() << " n=" << n << " gap=" << d);
      CHECK(d < prev);
      prev = d;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("laplace_pvar") {
  const auto driftless = LevyModel::black_scholes(0.3, DriftMode::make_explicit(0.0));
  auto zero = laplace_pvar(kou_model(), 0.0, 1.0, 1.0, 100, 1);
  CHECK(zero.mean == 1.0);
  CHECK(zero.std_error == 0.0);

  const double u = 2.0, s = 0.3;
  const double want = 2.0 * std::exp(u * u * s * s / 2) * 0.5 * std::erfc(u * s / std::sqrt(2.0));
  auto est = laplace_pvar(driftless, u, 1.0, 1.0, 1000000, 7);
  CHECK(std::abs(est.mean - want) <= 3.0 * est.std_error);

  for (const auto& m : {kou_model(), nig_model()}) {
    auto g = laplace_pvar(m, 4.0, 2.0, 0.5, 400000, 11);
    CHECK(std::abs(g.mean - laplace_xsq(m, 4.0, 0.5).real()) <= 3.0 * g.std_error);
  }
  auto again = laplace_pvar(driftless, u, 1.0, 1.0, 1000, 7);
  auto same = laplace_pvar(driftless, u, 1.0, 1.0, 1000, 7);
  CHECK(again.mean == same.mean);

  CHECK_THROWS_AS(laplace_pvar(driftless, -1.0, 1.0, 1.0, 100, 1), DomainError);
  CHECK_THROWS_AS(laplace_pvar(driftless, 1.0, 2.5, 1.0, 100, 1), DomainError);
  CHECK_THROWS_AS(laplace_pvar(driftless, 1.0, 0.0, 1.0, 100, 1), DomainError);
}
