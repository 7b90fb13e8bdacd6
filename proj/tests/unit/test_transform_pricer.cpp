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

#include "common/fixtures.hpp"
#include "varpricer/transform_pricer.hpp"

using namespace varpricer;
using namespace varpricer::testing;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("inversion of trivial transforms") {
  ContourSpec cs;
  auto one = [](Complex) { return Complex(1.0); };
  CHECK(invert_put(one, 1.0, cs).value == doctest::Approx(1.0).epsilon(1e-10));
  auto expo = [](Complex u) { return 1.0 / (1.0 + u); };
  CHECK(invert_put(expo, 1.0, cs).value == doctest::Approx(0.3678794411714423216).epsilon(1e-9));
  for (double c : {0.05, 0.5, 3.0}) {
    const double exact = std::exp(-c) + c - 1.0;
    CHECK(invert_put(expo, c, cs).value == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("inversion with an atom at zero") {
  // A = 0 with probability 1/2, exponential otherwise.
  auto L = [](Complex u) { return 0.5 + 0.5 / (1.0 + u); };
  ContourSpec cs;
  const double exact = 0.5 * 1.0 + 0.5 * std::exp(-1.0);
  CHECK(invert_put(L, 1.0, cs, 0.5).value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("inversion argument validation") {
  ContourSpec cs;
  auto one = [](Complex) { return Complex(1.0); };
  CHECK_THROWS_AS(invert_put(one, 0.0, cs), InvalidArgument);
  cs.damping = -1.0;
  CHECK_THROWS_AS(invert_put(one, 1.0, cs), InvalidArgument);
}

TEST_CASE("swap rates") {
  CHECK(swap_rate_qv(bs_model()) == doctest::Approx(0.09));
  CHECK(swap_rate_rv(bs_model(), 1.0, 252) == doctest::Approx(0.09 + 0.045 * 0.045 / 252));
  const auto cg = cgmy_model();
  CHECK(swap_rate_qv(cg) == doctest::Approx(0.051113846550762348821).epsilon(1e-10));
  CHECK(swap_rate_qv(kou_model()) == doctest::Approx(0.09 + 0.071777582849651451063).epsilon(1e-10));
  CHECK(swap_rate_rv(cg, 1e-9, 1) == doctest::Approx(swap_rate_qv(cg)).epsilon(1e-12));
}

TEST_CASE("Black-Scholes quadratic variation is deterministic") {
  for (double T : {1.0 / 252, 0.1, 1.0}) {
    const auto call = price_option_qv(bs_model(), T, 1.0, Side::Call);
    CHECK(call.price == 0.0);
    const auto put = price_option_qv(bs_model(), T, 1.3, Side::Put);
    CHECK(put.price == doctest::Approx(0.3 * 0.09).epsilon(1e-12));
  }
}

TEST_CASE("closed-form realized variance") {
  // b = 0, n = 2: RV is exponential with mean sigma^2.
  CHECK(bs_closed_form_rv(0.3, 0.0, 1.0, 2, 1.0, Side::Call) ==
        doctest::Approx(0.09 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(bs_closed_form_rv(0.3, -0.045, 10.0 / 252, 10, 1.0, Side::Call) ==
        doctest::Approx(0.015793473232303814463).epsilon(1e-11));
  CHECK(bs_closed_form_rv(0.3, -0.045, 10.0 / 252, 10, 1.3, Side::Put) ==
        doctest::Approx(0.034047098544240679296).epsilon(1e-11));
  CHECK(bs_closed_form_rv(0.3, 0.5, 1.0, 252, 0.9, Side::Call) ==
        doctest::Approx(0.0095723456726213392883).epsilon(1e-10));
  CHECK(bs_closed_form_rv(0.3, -0.045, 10.0 / 252, 10, 50.0, Side::Call) < 1e-15);
  CHECK_THROWS_AS(bs_closed_form_rv(0.0, 0.0, 1.0, 2, 1.0, Side::Call), InvalidArgument);
}

TEST_CASE("exact realized variance matches the closed form") {
  const double b = -0.045;
  for (int days : {1, 5, 10, 25, 50}) {
    const double T = days / 252.0;
    for (Side side : {Side::Put, Side::Call}) {
      const auto r = price_option_rv(bs_model(), T, days, 1.0, side);
      const double ref = bs_closed_form_rv(0.3, b, T, days, 1.0, side);
      CHECK_MESSAGE(rel(r.price, ref) < 1e-5, days << " days " << to_string(side));
    }
  }
}

TEST_CASE("put-call parity and damping invariance") {
  for (const auto& m : catalog()) {
    const double T = 10.0 / 252;
    ContourSpec base;
    const auto put = price_option_rv(m, T, 10, 1.1, Side::Put, base);
    const auto call = price_option_rv(m, T, 10, 1.1, Side::Call, base);
    CHECK(call.price - put.price ==
          doctest::Approx(put.swap_rate - put.strike).epsilon(1e-10));
    ContourSpec doubled;
    doubled.damping = 2.0 / (put.strike * T);
    const auto put2 = price_option_rv(m, T, 10, 1.1, Side::Put, doubled);
    CHECK_MESSAGE(std::abs(put2.price - put.price) < 1e-8 * put.swap_rate + put.est_error + put2.est_error,
                  m.describe());
    const auto qput = price_option_qv(m, T, 1.1, Side::Put, base);
    const auto qput2 = price_option_qv(m, T, 1.1, Side::Put, doubled);
    CHECK_MESSAGE(std::abs(qput2.price - qput.price) < 1e-8 * qput.swap_rate + qput.est_error + qput2.est_error,
                  m.describe());
  }
}

TEST_CASE("monotone in relative strike and bounded") {
  for (const auto& m : catalog()) {
    const double T = 5.0 / 252;
    double last_put = -1.0, last_call = 1e300;
    for (double k : {0.5, 0.8, 1.0, 1.2, 2.0}) {
      const auto put = price_option_rv(m, T, 5, k, Side::Put);
      const auto call = price_option_rv(m, T, 5, k, Side::Call);
      CHECK(put.price >= last_put - 1e-12);
      CHECK(call.price <= last_call + 1e-12);
      CHECK(put.price >= 0.0);
      CHECK(call.price >= 0.0);
      CHECK(put.price <= put.strike + 1e-12);
      last_put = put.price;
      last_call = call.price;
    }
  }
}

TEST_CASE("CGMY quadratic variation near zero maturity") {
  const auto cg = cgmy_model();
  const auto r = price_option_qv(cg, 1e-4 / 252, 1.0, Side::Call);
  CHECK(rel(r.price, swap_rate_qv(cg)) < 0.05);
}

TEST_CASE("realized variance approaches quadratic variation") {
  const auto kou = kou_model();
  const double T = 50.0 / 252;
  const auto rv = price_option_rv(kou, T, 5000, 1.0, Side::Call);
  const auto qv = price_option_qv(kou, T, 1.0, Side::Call);
  CHECK(rel(rv.price, qv.price) < 0.005);
}

TEST_CASE("result serialization") {
  const auto r = price_option_rv(bs_model(), 10.0 / 252, 10, 1.0, Side::Call);
  const std::string js = r.to_json();
  CHECK(js.find("\"method\":\"exact_rv\"") != std::string::npos);
  CHECK(js.find("\"diagnostics\"") != std::string::npos);
  CHECK(r.est_error >= 0.0);
}
