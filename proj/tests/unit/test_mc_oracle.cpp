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
#include "varpricer/laplace_transforms.hpp"
#include "varpricer/mc_oracle.hpp"
#include "varpricer/rng.hpp"

using namespace varpricer;
using namespace varpricer::testing;

namespace {

SimPlan plan_for(const LevyModel& m, double T, int n, long paths, std::uint64_t seed = 7) {
  SimPlan p{m};
  p.T = T;
  p.n = n;
  p.paths = paths;
  p.seed = seed;
  if (m.kind() == ModelKind::CGMY) p.scheme = SimScheme::SmallJumpTruncation;
  return p;
}

}  // namespace

TEST_CASE("Philox known answers") {
  const auto zero = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  CHECK(zero == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                         {0xffffffffu, 0xffffffffu});
  CHECK(ones == Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  const auto pi = Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                       {0xa4093822u, 0x299f31d0u});
  CHECK(pi == Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("counter stream draws") {
  CounterStream a(42, 3, 5), b(42, 3, 5), c(42, 3, 6);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.uniform() != c.uniform());
  CounterStream s(1, 0, 0);
  double sum = 0.0;
  for (int i = 0; i < 200000; ++i) sum += s.poisson(2.5);
  CHECK(sum / 200000 == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(SimPlan{cgmy_model()}.validate(), UnsupportedScheme);
  SimPlan p{bs_model()};
  p.scheme = SimScheme::SmallJumpTruncation;
  CHECK_THROWS_AS(p.validate(), UnsupportedScheme);
  SimPlan q{bs_model()};
  q.paths = 0;
  CHECK_THROWS_AS(q.validate(), InvalidArgument);
}

TEST_CASE("output does not depend on the thread count") {
  for (const auto& m : catalog()) {
    auto p = plan_for(m, 10.0 / 252, 10, 2000, 99);
    p.threads = 1;
    const auto a = simulate_variance(p);
    p.threads = 3;
    const auto b = simulate_variance(p);
    CHECK(a.rv == b.rv);
    CHECK(a.qv == b.qv);
    CHECK(a.x_T == b.x_T);
    const auto inc = simulate_increments(p);
    double sq = 0.0;
    for (int j = 0; j < p.n; ++j) sq += inc.at(17, j) * inc.at(17, j);
    CHECK(sq / p.T == a.rv[17]);
  }
}

TEST_CASE("Black-Scholes increments") {
  auto p = plan_for(bs_model(), 1.0, 1, 1000000);
  const auto s = simulate_variance(p);
  double m = 0.0, m2 = 0.0;
  for (double x : s.x_T) m += x;
  m /= p.paths;
  for (double x : s.x_T) m2 += (x - m) * (x - m);
  const double var = m2 / (p.paths - 1);
  // Standard error of the sample variance of a normal law is var sqrt(2/N).
  CHECK(std::abs(var - 0.09) < 3.0 * 0.09 * std::sqrt(2.0 / p.paths));
}

TEST_CASE("exponential martingale under Kou") {
  auto p = plan_for(kou_model(), 0.5, 1, 400000);
  const auto s = simulate_variance(p);
  std::vector<double> e(s.x_T.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) mean += (e[i] = std::exp(s.x_T[i]));
  mean /= e.size();
  double ss = 0.0;
  for (double x : e) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (e.size() - 1) / e.size());
  CHECK(std::abs(mean - 1.0) < 3.0 * se);
}

TEST_CASE("CGMY second moment under truncation") {
  const auto m = cgmy_model();
  const double dt = 1.0 / 252;
  auto p = plan_for(m, dt, 1, 400000);
  const auto s = simulate_variance(p);
  std::vector<double> sq(s.x_T.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < sq.size(); ++i) mean += (sq[i] = s.x_T[i] * s.x_T[i]);
  mean /= sq.size();
  double ss = 0.0;
  for (double x : sq) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (sq.size() - 1) / sq.size());
  const double b = m.triplet_drift();
  CHECK(std::abs(mean - (dt * m.jump_variance() + dt * dt * b * b)) < 3.0 * se);
}

TEST_CASE("Monte Carlo transforms") {
  auto p = plan_for(LevyModel::black_scholes(0.3, DriftMode::make_explicit(0.0)), 1.0, 1, 200000);
  const auto s = simulate_variance(p);
  const auto zero = mc_laplace(s, p, 0.0, LaplaceTarget::Xsq);
  CHECK(zero.mean == Complex(1.0));
  CHECK(zero.se_real == 0.0);
  const auto one = mc_laplace(s, p, 1.0, LaplaceTarget::Xsq);
  CHECK(std::abs(one.mean.real() - 0.920575) < 3.0 * one.se_real);

  const auto nig = nig_model();
  auto pn = plan_for(nig, 1.0 / 252, 1, 400000);
  const Complex u(0.5, 2.0);
  const auto est = mc_laplace(pn, u, LaplaceTarget::Xsq);
  const Complex ref = laplace_xsq(nig, u, 1.0 / 252);
  CHECK(std::abs(est.mean.real() - ref.real()) < 3.0 * est.se_real + 1e-12);
  CHECK(std::abs(est.mean.imag() - ref.imag()) < 3.0 * est.se_imag + 1e-12);

  const auto mer = merton_model();
  auto pm = plan_for(mer, 0.5, 5, 200000);
  const Complex w(20.0, -30.0);
  const auto q = mc_laplace(pm, w, LaplaceTarget::Qv);
  const Complex qref = laplace_qv(mer, w, 0.5);
  CHECK(std::abs(q.mean.real() - qref.real()) < 3.0 * q.se_real + 1e-12);
  CHECK(std::abs(q.mean.imag() - qref.imag()) < 3.0 * q.se_imag + 1e-12);

  const auto kou = kou_model();
  auto pk = plan_for(kou, 50.0 / 252, 50, 100000);
  const auto rv = mc_laplace(pk, 3.0, LaplaceTarget::Rv);
  const Complex rref = laplace_rv(kou, 3.0, 50.0 / 252, 50);
  CHECK(std::abs(rv.mean.real() - rref.real()) < 3.0 * rv.se_real);
}

TEST_CASE("Monte Carlo prices") {
  const double T = 10.0 / 252;
  auto p = plan_for(bs_model(), T, 10, 400000);
  const auto s = simulate_variance(p);
  const auto qv = mc_price(s, p, 1.0, Side::Call, Underlying::Qv);
  CHECK(qv.price == 0.0);
  CHECK(qv.est_error == 0.0);
  const auto rv = mc_price(s, p, 1.0, Side::Call, Underlying::Rv);
  const double ref = bs_closed_form_rv(0.3, -0.045, T, 10, 1.0, Side::Call);
  CHECK(std::abs(rv.price - ref) < 3.0 * rv.est_error);
  CHECK(rv.method == Method::MonteCarlo);

  // RV swap rate: sample mean of RV against the analytic formula.
  auto pk = plan_for(kou_model(), 50.0 / 252, 50, 100000);
  const auto sk = simulate_variance(pk);
  double mean = 0.0;
  for (double x : sk.rv) mean += x;
  mean /= sk.rv.size();
  double ss = 0.0;
  for (double x : sk.rv) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (sk.rv.size() - 1) / sk.rv.size());
  CHECK(std::abs(mean - swap_rate_rv(kou_model(), 50.0 / 252, 50)) < 3.0 * se);
}
