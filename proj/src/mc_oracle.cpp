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

#include "varpricer/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "varpricer/rng.hpp"
#include "varpricer/special_functions.hpp"

namespace varpricer {
namespace {

constexpr std::uint32_t kIncrementStream = 0x696e6372;  // "incr"
constexpr std::uint32_t kJumpStream = 0x6a756d70;       // "jump"
constexpr std::uint32_t kSmallStream = 0x736d616c;      // "smal"

// Subordinator jump cutoff for the NIG quadratic variation record.
constexpr double kNigSubordinatorCutoff = 1e-6;

template <class P>
const P& params_of(const LevyModel& m) {
  return std::get<P>(m.params());
}

// Lower and upper incomplete gamma integrals of x^{a-1} e^{-c x} over
// (0, e) and (e, inf).
double lower_moment(double a, double c, double e) {
  return std::pow(c, -a) * specfun::gamma_p(a, c * e) * std::tgamma(a);
}
double upper_moment(double a, double c, double e) {
  return std::pow(c, -a) * specfun::gamma_q(a, c * e) * std::tgamma(a);
}

// Simulates one path step by step. Holds precomputed constants only.
class PathSimulator {
 public:
  explicit PathSimulator(const SimPlan& plan) : plan_(plan), dt_(plan.T / plan.n) {
    const auto& m = plan.model;
    b_ = m.triplet_drift();
    sigma_ = std::sqrt(m.sigma_sq());
    switch (m.kind()) {
      case ModelKind::Merton: {
        const auto& p = params_of<MertonParams>(m);
        drift_ = b_ - p.lambda * p.gamma;
        break;
      }
      case ModelKind::Kou: {
        const auto& p = params_of<KouParams>(m);
        drift_ = b_ - p.lambda_plus / p.nu_plus + p.lambda_minus / p.nu_minus;
        break;
      }
      case ModelKind::Poisson: {
        const auto& p = params_of<PoissonParams>(m);
        drift_ = b_ - p.lambda * p.jump;
        break;
      }
      case ModelKind::CGMY: {
        const auto& p = params_of<CgmyParams>(m);
        const double e = plan.epsilon;
        // Compensator of the jumps above e, variance and fourth moment below e.
        const double m1 = p.C * (upper_moment(1.0 - p.Y, p.M, e) - upper_moment(1.0 - p.Y, p.G, e));
        small_var_ = p.C * (lower_moment(2.0 - p.Y, p.M, e) + lower_moment(2.0 - p.Y, p.G, e));
        small_m4_ = p.C * (lower_moment(4.0 - p.Y, p.M, e) + lower_moment(4.0 - p.Y, p.G, e));
        drift_ = b_ - m1;
        // Dyadic size bands [2^-b, 2^(1-b)) below [1, inf), down to the band
        // holding e. The ladder does not depend on e, so runs that differ
        // only in e share every jump above the larger cutoff.
        band_edge_pow_.push_back(0.0);  // (+inf)^-Y
        for (int b = 0;; ++b) {
          const double lo = std::ldexp(1.0, -b);
          band_edge_pow_.push_back(std::pow(lo, -p.Y));
          if (lo <= e) break;
        }
        break;
      }
      case ModelKind::NIG: {
        const auto& p = params_of<NigParams>(m);
        gamma0_ = std::sqrt(p.alpha * p.alpha - p.beta * p.beta);
        const double c = 0.5 * gamma0_ * gamma0_;
        const double se = kNigSubordinatorCutoff;
        const double nu0 = p.delta / std::sqrt(2.0 * std::numbers::pi);
        const double b2 = p.beta * p.beta;
        // Moments of the squared jumps beta s + sqrt(s) Z over subordinator jumps s < se.
        small_var_ = nu0 * (lower_moment(0.5, c, se) + b2 * lower_moment(1.5, c, se));
        small_m4_ = nu0 * (3.0 * lower_moment(1.5, c, se) + 6.0 * b2 * lower_moment(2.5, c, se) +
                           b2 * b2 * lower_moment(3.5, c, se));
        proposal_rate_ = nu0 * 2.0 / std::sqrt(se);
        break;
      }
      case ModelKind::BlackScholes:
        drift_ = b_;
        break;
    }
  }

  // Fills the n increments of one path and returns the sum of squared jumps.
  double run(long path, double* incr) const {
    const auto& m = plan_.model;
    const auto pid = static_cast<std::uint32_t>(path);
    double jump_sq = 0.0;
    for (int j = 0; j < plan_.n; ++j) {
      CounterStream rng(plan_.seed, pid, static_cast<std::uint32_t>(j), kIncrementStream);
      double x = drift_ * dt_;
      switch (m.kind()) {
        case ModelKind::BlackScholes:
          x += sigma_ * std::sqrt(dt_) * rng.normal();
          break;
        case ModelKind::Merton: {
          const auto& p = params_of<MertonParams>(m);
          x += sigma_ * std::sqrt(dt_) * rng.normal();
          for (long i = rng.poisson(p.lambda * dt_); i > 0; --i) {
            const double y = p.gamma + p.delta * rng.normal();
            x += y;
            jump_sq += y * y;
          }
          break;
        }
        case ModelKind::Kou: {
          const auto& p = params_of<KouParams>(m);
          x += sigma_ * std::sqrt(dt_) * rng.normal();
          for (long i = rng.poisson(p.lambda_plus * dt_); i > 0; --i) {
            const double y = rng.exponential() / p.nu_plus;
            x += y;
            jump_sq += y * y;
          }
          for (long i = rng.poisson(p.lambda_minus * dt_); i > 0; --i) {
            const double y = -rng.exponential() / p.nu_minus;
            x += y;
            jump_sq += y * y;
          }
          break;
        }
        case ModelKind::Poisson: {
          const auto& p = params_of<PoissonParams>(m);
          const long k = rng.poisson(p.lambda * dt_);
          x += k * p.jump;
          jump_sq += k * p.jump * p.jump;
          break;
        }
        case ModelKind::NIG: {
          const auto& p = params_of<NigParams>(m);
          const double s = inverse_gaussian(rng, p.delta * dt_ / gamma0_, p.delta * p.delta * dt_ * dt_);
          x = m.mu() * dt_ + p.beta * s + std::sqrt(s) * rng.normal();
          break;
        }
        case ModelKind::CGMY: {
          const auto& p = params_of<CgmyParams>(m);
          x += std::sqrt(small_var_ * dt_) * rng.normal();
          // Thinning of Pareto proposals C x^{-1-Y}, band by band from the top.
          CounterStream jr(plan_.seed, pid, static_cast<std::uint32_t>(j), kJumpStream);
          for (std::size_t b = 1; b < band_edge_pow_.size(); ++b) {
            const double hi = band_edge_pow_[b - 1], lo = band_edge_pow_[b];
            const double rate = 2.0 * p.C * (lo - hi) / p.Y;
            for (long i = jr.poisson(rate * dt_); i > 0; --i) {
              const double size = std::pow(lo - jr.uniform() * (lo - hi), -1.0 / p.Y);
              const bool up = jr.uniform() < 0.5;
              const double damp = up ? p.M : p.G;
              if (jr.uniform() < std::exp(-damp * size) && size > plan_.epsilon) {
                const double y = up ? size : -size;
                x += y;
                jump_sq += y * y;
              }
            }
          }
          break;
        }
      }
      incr[j] = x;
    }
    if (m.kind() == ModelKind::NIG) jump_sq = nig_jump_record(pid);
    if (small_var_ > 0.0) {
      // Squared jumps below the cutoff: mean plus a matched Gaussian.
      CounterStream rng(plan_.seed, pid, static_cast<std::uint32_t>(plan_.n), kSmallStream);
      jump_sq += small_var_ * plan_.T + std::sqrt(small_m4_ * plan_.T) * rng.normal();
    }
    return jump_sq;
  }

 private:
  // Michael-Schucany-Haas transformation for IG(mean m, shape l).
  static double inverse_gaussian(CounterStream& rng, double mean, double shape) {
    const double z = rng.normal();
    const double y = mean * z * z;
    const double root = std::sqrt(y * (4.0 * shape + y));
    const double x = mean - 2.0 * mean * y / (y + root);
    return rng.uniform() <= mean / (mean + x) ? x : mean * mean / x;
  }

  // Sum of squared NIG jumps whose subordinator jump exceeds the cutoff.
  double nig_jump_record(std::uint32_t pid) const {
    const auto& p = params_of<NigParams>(plan_.model);
    const double c = 0.5 * gamma0_ * gamma0_;
    double sum = 0.0;
    for (int j = 0; j < plan_.n; ++j) {
      CounterStream rng(plan_.seed, pid, static_cast<std::uint32_t>(j), kJumpStream);
      for (long i = rng.poisson(proposal_rate_ * dt_); i > 0; --i) {
        const double u = rng.uniform();
        const double s = kNigSubordinatorCutoff / (u * u);
        if (rng.uniform() < std::exp(-c * s)) {
          const double y = p.beta * s + std::sqrt(s) * rng.normal();
          sum += y * y;
        }
      }
    }
    return sum;
  }

  const SimPlan& plan_;
  double dt_;
  double b_ = 0.0, sigma_ = 0.0, drift_ = 0.0;
  double gamma0_ = 0.0;
  double small_var_ = 0.0, small_m4_ = 0.0, proposal_rate_ = 0.0;
  std::vector<double> band_edge_pow_;  // CGMY band edges raised to -Y, top first
};

// Runs body(path) over [0, paths) in contiguous blocks, one per worker.
template <class Body>
void parallel_paths(const SimPlan& plan, Body&& body) {
  const int workers = static_cast<int>(std::min<long>(mc_threads(plan), plan.paths));
  if (workers <= 1) {
    for (long i = 0; i < plan.paths; ++i) body(i);
    return;
  }
  const long block = (plan.paths + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const long lo = w * block;
    const long hi = std::min(plan.paths, lo + block);
    pool.emplace_back([&body, lo, hi] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct MeanSe {
  double mean, se;
};

MeanSe mean_se(const std::vector<double>& v) {
  const auto n = static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

void SimPlan::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("SimPlan: T must be positive");
  if (n < 1) throw InvalidArgument("SimPlan: n must be >= 1");
  if (paths < 1) throw InvalidArgument("SimPlan: paths must be >= 1");
  if (paths > 0xFFFFFFFFL) throw InvalidArgument("SimPlan: at most 2^32 - 1 paths");
  if (threads < 0) throw InvalidArgument("SimPlan: threads must be >= 0");
  const ModelKind kind = model.kind();
  if (scheme == SimScheme::SmallJumpTruncation) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
      throw InvalidArgument("SimPlan: epsilon must be positive");
    if (kind != ModelKind::CGMY && kind != ModelKind::NIG)
      throw UnsupportedScheme("SimPlan: small_jump_truncation applies to CGMY and NIG only, not " +
                              to_string(kind));
  } else if (kind == ModelKind::CGMY) {
    throw UnsupportedScheme("SimPlan: CGMY has no exact scheme; use small_jump_truncation");
  }
}

int mc_threads(const SimPlan& plan) {
  if (plan.threads > 0) return plan.threads;
  if (const char* env = std::getenv("VARPRICER_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

IncrementMatrix simulate_increments(const SimPlan& plan) {
  plan.validate();
  IncrementMatrix out;
  out.paths = plan.paths;
  out.n = plan.n;
  out.data.assign(static_cast<std::size_t>(plan.paths) * plan.n, 0.0);
  const PathSimulator sim(plan);
  parallel_paths(plan, [&](long i) { sim.run(i, &out.data[static_cast<std::size_t>(i) * plan.n]); });
  return out;
}

VarianceSample simulate_variance(const SimPlan& plan) {
  plan.validate();
  VarianceSample out;
  out.x_T.assign(plan.paths, 0.0);
  out.rv.assign(plan.paths, 0.0);
  out.qv.assign(plan.paths, 0.0);
  const PathSimulator sim(plan);
  const double s2 = plan.model.sigma_sq();
  parallel_paths(plan, [&](long i) {
    std::vector<double> incr(plan.n);
    const double jump_sq = sim.run(i, incr.data());
    double x = 0.0, sq = 0.0;
    for (double d : incr) {
      x += d;
      sq += d * d;
    }
    out.x_T[i] = x;
    out.rv[i] = sq / plan.T;
    out.qv[i] = s2 + jump_sq / plan.T;
  });
  return out;
}

PriceResult mc_price(const VarianceSample& sample, const SimPlan& plan, double k, Side side,
                     Underlying underlying) {
  if (!(k > 0.0)) throw InvalidArgument("mc_price: k must be positive");
  PriceResult r;
  r.method = Method::MonteCarlo;
  r.side = side;
  r.k = k;
  r.T = plan.T;
  r.n = underlying == Underlying::Rv ? plan.n : 0;
  r.swap_rate = underlying == Underlying::Rv ? swap_rate_rv(plan.model, plan.T, plan.n)
                                             : swap_rate_qv(plan.model);
  r.strike = k * r.swap_rate;
  const auto& a = underlying == Underlying::Rv ? sample.rv : sample.qv;
  std::vector<double> pay(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    pay[i] = side == Side::Call ? std::max(a[i] - r.strike, 0.0) : std::max(r.strike - a[i], 0.0);
  const auto ms = mean_se(pay);
  r.price = ms.mean;
  r.est_error = ms.se;
  r.diagnostics["paths"] = static_cast<double>(a.size());
  r.diagnostics["std_error"] = ms.se;
  if (plan.scheme == SimScheme::SmallJumpTruncation) r.diagnostics["epsilon"] = plan.epsilon;
  return r;
}

PriceResult mc_price(const SimPlan& plan, double k, Side side, Underlying underlying) {
  return mc_price(simulate_variance(plan), plan, k, side, underlying);
}

ComplexEstimate mc_laplace(const VarianceSample& sample, const SimPlan& plan, Complex u,
                           LaplaceTarget target, double p) {
  if (target == LaplaceTarget::Pvar && !(p > 0.0)) throw InvalidArgument("mc_laplace: p must be > 0");
  const std::size_t m = sample.x_T.size();
  std::vector<double> re(m), im(m);
  for (std::size_t i = 0; i < m; ++i) {
    double a = 0.0;
    switch (target) {
      case LaplaceTarget::Xsq: a = sample.x_T[i] * sample.x_T[i]; break;
      case LaplaceTarget::Rv: a = sample.rv[i] * plan.T; break;
      case LaplaceTarget::Qv: a = sample.qv[i] * plan.T; break;
      case LaplaceTarget::Pvar: a = std::pow(std::abs(sample.x_T[i]), p); break;
    }
    const Complex z = std::exp(-u * a);
    re[i] = z.real();
    im[i] = z.imag();
  }
  const auto r = mean_se(re), c = mean_se(im);
  return {Complex(r.mean, c.mean), r.se, c.se, static_cast<long>(m)};
}

ComplexEstimate mc_laplace(const SimPlan& plan, Complex u, LaplaceTarget target, double p) {
  return mc_laplace(simulate_variance(plan), plan, u, target, p);
}

}  // namespace varpricer
