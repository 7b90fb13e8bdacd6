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

#include "varpricer/varpricer.h"

#include <cstdlib>
#include <cstring>
#include <cmath>
#include <exception>
#include <functional>
#include <set>
#include <string>

#include <json.hpp>

#include "varpricer/asymptotics.hpp"
#include "varpricer/laplace_transforms.hpp"
#include "varpricer/levy_models.hpp"
#include "varpricer/mc_oracle.hpp"
#include "varpricer/transform_pricer.hpp"
#include "varpricer/validation.hpp"

struct vp_model {
  varpricer::LevyModel model;
};

namespace {

using namespace varpricer;

thread_local std::string g_last_error;

vp_status fail(vp_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
vp_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return VP_OK;
  } catch (const InvalidArgument& e) {
    return fail(VP_INVALID_ARGUMENT, e.what());
  } catch (const PoleError& e) {
    return fail(VP_DOMAIN_ERROR, e.what());
  } catch (const DomainError& e) {
    return fail(VP_DOMAIN_ERROR, e.what());
  } catch (const ConvergenceError& e) {
    return fail(VP_CONVERGENCE_ERROR, e.what());
  } catch (const UnsupportedScheme& e) {
    return fail(VP_UNSUPPORTED, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(VP_INVALID_ARGUMENT, std::string("json: ") + e.what());
  } catch (const std::exception& e) {
    return fail(VP_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(VP_INTERNAL_ERROR, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

vp_status make_model(vp_model** out, const std::function<LevyModel()>& build) {
  return guarded([&] {
    require(out, "out");
    *out = new vp_model{build()};
  });
}

Side to_side(vp_side s) {
  if (s != VP_PUT && s != VP_CALL) throw InvalidArgument("side must be VP_PUT or VP_CALL");
  return s == VP_PUT ? Side::Put : Side::Call;
}

ContourSpec to_contour(const vp_contour* c) {
  ContourSpec cs;
  if (c == nullptr) return cs;
  if (c->damping != 0.0) cs.damping = c->damping;
  if (c->v_max != 0.0) cs.v_max = c->v_max;
  if (c->panel_tol != 0.0) cs.panel_tol = c->panel_tol;
  if (c->max_panels != 0) cs.max_panels = c->max_panels;
  cs.validate();
  return cs;
}

LevyModel model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw InvalidArgument("model config must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw InvalidArgument("model config needs a string field \"kind\"");
  const std::string kind = j["kind"];
  DriftMode drift = DriftMode::make_martingale();
  if (j.contains("drift")) {
    const auto& d = j["drift"];
    if (d.is_number()) {
      drift = DriftMode::make_explicit(d.get<double>());
    } else if (!(d.is_string() && d.get<std::string>() == "martingale")) {
      throw InvalidArgument("\"drift\" must be \"martingale\" or a number");
    }
  }
  std::set<std::string> used = {"kind", "drift"};
  auto num = [&](const char* key) {
    used.insert(key);
    if (!j.contains(key) || !j[key].is_number())
      throw InvalidArgument("model \"" + kind + "\" needs a numeric field \"" + key + "\"");
    return j[key].get<double>();
  };
  auto build = [&]() -> LevyModel {
    if (kind == "black_scholes" || kind == "bs") return LevyModel::black_scholes(num("sigma"), drift);
    if (kind == "merton")
      return LevyModel::merton(num("sigma"), num("lambda"), num("gamma"), num("delta"), drift);
    if (kind == "kou")
      return LevyModel::kou(num("sigma"), num("lambda_plus"), num("nu_plus"), num("lambda_minus"),
                            num("nu_minus"), drift);
    if (kind == "nig") return LevyModel::nig(num("alpha"), num("beta"), num("delta"), drift);
    if (kind == "cgmy") return LevyModel::cgmy(num("C"), num("G"), num("M"), num("Y"), drift);
    if (kind == "poisson") return LevyModel::poisson(num("lambda"), num("jump"), drift);
    throw InvalidArgument("unknown model kind \"" + kind + "\"");
  };
  LevyModel m = build();
  for (const auto& [key, value] : j.items())
    if (!used.count(key)) throw InvalidArgument("unknown field \"" + key + "\" for model \"" + kind + "\"");
  return m;
}

PriceResult price_impl(const vp_model* model, vp_method method, vp_side side, double T, int n,
                       double k, const vp_contour* contour, const vp_mc* mc) {
  require(model, "model");
  const Side s = to_side(side);
  const LevyModel& m = model->model;
  const ContourSpec cs = to_contour(contour);
  switch (method) {
    case VP_METHOD_EXACT_RV:
      return price_option_rv(m, T, n, k, s, cs);
    case VP_METHOD_QV:
      return price_option_qv(m, T, k, s, cs);
    case VP_METHOD_CORRECTED:
      return corrected_price(m, T, n, k, s, cs);
    case VP_METHOD_CLOSED_BS: {
      if (m.kind() != ModelKind::BlackScholes)
        throw InvalidArgument("closed-form pricing requires the Black-Scholes model");
      PriceResult r;
      r.method = Method::ClosedFormBs;
      r.side = s;
      r.k = k;
      r.T = T;
      r.n = n;
      r.swap_rate = swap_rate_rv(m, T, n);
      r.strike = k * r.swap_rate;
      r.price = bs_closed_form_rv(std::sqrt(m.sigma_sq()), m.triplet_drift(), T, n, k, s);
      return r;
    }
    case VP_METHOD_MC: {
      SimPlan plan{m};
      plan.T = T;
      plan.n = n;
      plan.paths = mc != nullptr && mc->paths > 0 ? mc->paths : 100000;
      plan.seed = mc != nullptr ? mc->seed : 0;
      if (mc != nullptr && mc->epsilon > 0.0) plan.epsilon = mc->epsilon;
      if (mc != nullptr) plan.threads = mc->threads;
      if (m.kind() == ModelKind::CGMY) plan.scheme = SimScheme::SmallJumpTruncation;
      return mc_price(plan, k, s, Underlying::Rv);
    }
  }
  throw InvalidArgument("unknown pricing method");
}

}  // namespace

extern "C" {

const char* vp_version(void) { return "1.0.0"; }

const char* vp_status_string(vp_status status) {
  switch (status) {
    case VP_OK: return "ok";
    case VP_INVALID_ARGUMENT: return "invalid argument";
    case VP_DOMAIN_ERROR: return "domain error";
    case VP_CONVERGENCE_ERROR: return "convergence error";
    case VP_UNSUPPORTED: return "unsupported";
    case VP_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* vp_last_error(void) { return g_last_error.c_str(); }

void vp_string_free(char* s) { std::free(s); }

vp_status vp_model_black_scholes(double sigma, vp_model** out) {
  return make_model(out, [&] { return LevyModel::black_scholes(sigma); });
}

vp_status vp_model_merton(double sigma, double lambda, double gamma, double delta, vp_model** out) {
  return make_model(out, [&] { return LevyModel::merton(sigma, lambda, gamma, delta); });
}

vp_status vp_model_kou(double sigma, double lambda_plus, double nu_plus, double lambda_minus,
                       double nu_minus, vp_model** out) {
  return make_model(out, [&] {
    return LevyModel::kou(sigma, lambda_plus, nu_plus, lambda_minus, nu_minus);
  });
}

vp_status vp_model_nig(double alpha, double beta, double delta, vp_model** out) {
  return make_model(out, [&] { return LevyModel::nig(alpha, beta, delta); });
}

vp_status vp_model_cgmy(double C, double G, double M, double Y, vp_model** out) {
  return make_model(out, [&] { return LevyModel::cgmy(C, G, M, Y); });
}

vp_status vp_model_poisson(double lambda, double jump, vp_model** out) {
  return make_model(out, [&] { return LevyModel::poisson(lambda, jump); });
}

vp_status vp_model_from_json(const char* json, vp_model** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new vp_model{model_from_json(json)};
  });
}

void vp_model_free(vp_model* model) { delete model; }

vp_status vp_model_describe(const vp_model* model, char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = dup_string(model->model.describe());
  });
}

vp_status vp_model_moments(const vp_model* model, double* sigma_sq, double* jump_variance,
                           double* drift) {
  return guarded([&] {
    require(model, "model");
    if (sigma_sq) *sigma_sq = model->model.sigma_sq();
    if (jump_variance) *jump_variance = model->model.jump_variance();
    if (drift) *drift = model->model.triplet_drift();
  });
}

vp_status vp_model_exponent(const vp_model* model, double u_re, double u_im, double* re, double* im) {
  return guarded([&] {
    require(model, "model");
    require(re, "re");
    require(im, "im");
    const Complex v = model->model.exponent(Complex(u_re, u_im));
    *re = v.real();
    *im = v.imag();
  });
}

vp_status vp_swap_rate_qv(const vp_model* model, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = swap_rate_qv(model->model);
  });
}

vp_status vp_swap_rate_rv(const vp_model* model, double T, int n, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = swap_rate_rv(model->model, T, n);
  });
}

vp_status vp_price(const vp_model* model, vp_method method, vp_side side, double T, int n,
                   double k, const vp_contour* contour, const vp_mc* mc, vp_price_result* out) {
  return guarded([&] {
    require(out, "out");
    const PriceResult r = price_impl(model, method, side, T, n, k, contour, mc);
    out->price = r.price;
    out->est_error = r.est_error;
    out->strike = r.strike;
    out->swap_rate = r.swap_rate;
    const auto it = r.diagnostics.find("truncated");
    out->truncated = it != r.diagnostics.end() && it->second != 0.0;
  });
}

vp_status vp_price_json(const vp_model* model, vp_method method, vp_side side, double T, int n,
                        double k, const vp_contour* contour, const vp_mc* mc, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(price_impl(model, method, side, T, n, k, contour, mc).to_json());
  });
}

vp_status vp_laplace(const vp_model* model, vp_transform transform, double u_re, double u_im,
                     double T, int n, double* re, double* im) {
  return guarded([&] {
    require(model, "model");
    require(re, "re");
    require(im, "im");
    const Complex u(u_re, u_im);
    Complex v;
    switch (transform) {
      case VP_TRANSFORM_QV: v = laplace_qv(model->model, u, T); break;
      case VP_TRANSFORM_XSQ: v = laplace_xsq(model->model, u, T); break;
      case VP_TRANSFORM_RV: v = laplace_rv(model->model, u, T, n); break;
      default: throw InvalidArgument("unknown transform");
    }
    *re = v.real();
    *im = v.imag();
  });
}

vp_status vp_q_fn(double k, int n, double r, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = q_fn(k, n, r);
  });
}

vp_status vp_r_fn(double k, int n, double r, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = r_fn(k, n, r);
  });
}

vp_status vp_limit(const vp_model* model, vp_underlying underlying, vp_side side, double k, int n,
                   double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const Side s = to_side(side);
    const LevyModel& m = model->model;
    if (underlying == VP_UNDERLYING_QV) {
      *out = s == Side::Put ? limit_put_qv(m, k) : limit_call_qv(m, k);
    } else if (underlying == VP_UNDERLYING_RV) {
      *out = s == Side::Put ? limit_put_rv(m, k, n) : limit_call_rv(m, k, n);
    } else {
      throw InvalidArgument("unknown underlying");
    }
  });
}

vp_status vp_discretization_gap(const vp_model* model, double k, int n, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = discretization_gap(model->model, k, n);
  });
}

vp_status vp_validate(const vp_model* model, vp_suite suite, long paths, uint64_t seed, int* passed,
                      char** report_json) {
  return guarded([&] {
    require(model, "model");
    Suite s;
    switch (suite) {
      case VP_SUITE_TRANSFORMS: s = Suite::Transforms; break;
      case VP_SUITE_PRICES: s = Suite::Prices; break;
      case VP_SUITE_LIMITS: s = Suite::Limits; break;
      case VP_SUITE_ALL: s = Suite::All; break;
      default: throw InvalidArgument("unknown suite");
    }
    const ValidationReport r = run_validation(model->model, s, paths, seed);
    if (passed) *passed = r.passed() ? 1 : 0;
    if (report_json) *report_json = dup_string(r.to_json());
  });
}

}  // extern "C"
