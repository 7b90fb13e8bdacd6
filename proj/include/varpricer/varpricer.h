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

#ifndef VARPRICER_H_
#define VARPRICER_H_

/* C interface to the varpricer library. Models are opaque handles; every
 * call returns a vp_status, and vp_last_error() describes the most recent
 * failure on the calling thread. All functions are thread safe. Strings
 * returned through char** are owned by the caller and released with
 * vp_string_free(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define VP_API __declspec(dllexport)
#else
#define VP_API __attribute__((visibility("default")))
#endif

typedef enum {
  VP_OK = 0,
  VP_INVALID_ARGUMENT = 1,
  VP_DOMAIN_ERROR = 2,
  VP_CONVERGENCE_ERROR = 3,
  VP_UNSUPPORTED = 4,
  VP_INTERNAL_ERROR = 5
} vp_status;

typedef enum { VP_PUT = 0, VP_CALL = 1 } vp_side;

typedef enum {
  VP_METHOD_EXACT_RV = 0,
  VP_METHOD_QV = 1,
  VP_METHOD_CORRECTED = 2,
  VP_METHOD_CLOSED_BS = 3,
  VP_METHOD_MC = 4
} vp_method;

typedef enum { VP_UNDERLYING_RV = 0, VP_UNDERLYING_QV = 1 } vp_underlying;

typedef enum { VP_TRANSFORM_QV = 0, VP_TRANSFORM_XSQ = 1, VP_TRANSFORM_RV = 2 } vp_transform;

typedef enum {
  VP_SUITE_TRANSFORMS = 0,
  VP_SUITE_PRICES = 1,
  VP_SUITE_LIMITS = 2,
  VP_SUITE_ALL = 3
} vp_suite;

typedef struct vp_model vp_model;

/* Contour settings; zero fields select the defaults. */
typedef struct {
  double damping;
  double v_max;
  double panel_tol;
  int max_panels;
} vp_contour;

/* Monte Carlo settings for VP_METHOD_MC; zero epsilon selects 1e-4 and
 * zero threads selects VARPRICER_THREADS or the hardware count. */
typedef struct {
  long paths;
  uint64_t seed;
  double epsilon;
  int threads;
} vp_mc;

typedef struct {
  double price;
  double est_error;
  double strike;
  double swap_rate;
  int truncated;
} vp_price_result;

VP_API const char* vp_version(void);
VP_API const char* vp_status_string(vp_status status);
VP_API const char* vp_last_error(void);
VP_API void vp_string_free(char* s);

VP_API vp_status vp_model_black_scholes(double sigma, vp_model** out);
VP_API vp_status vp_model_merton(double sigma, double lambda, double gamma, double delta,
                                 vp_model** out);
VP_API vp_status vp_model_kou(double sigma, double lambda_plus, double nu_plus,
                              double lambda_minus, double nu_minus, vp_model** out);
VP_API vp_status vp_model_nig(double alpha, double beta, double delta, vp_model** out);
VP_API vp_status vp_model_cgmy(double C, double G, double M, double Y, vp_model** out);
VP_API vp_status vp_model_poisson(double lambda, double jump, vp_model** out);
/* Model from a JSON object such as {"kind":"kou","sigma":0.3,...}. */
VP_API vp_status vp_model_from_json(const char* json, vp_model** out);
VP_API void vp_model_free(vp_model* model);

VP_API vp_status vp_model_describe(const vp_model* model, char** out);
/* Diffusion variance, jump variance and mean drift b = psi'(0). */
VP_API vp_status vp_model_moments(const vp_model* model, double* sigma_sq, double* jump_variance,
                                  double* drift);
VP_API vp_status vp_model_exponent(const vp_model* model, double u_re, double u_im, double* re,
                                   double* im);

VP_API vp_status vp_swap_rate_qv(const vp_model* model, double* out);
VP_API vp_status vp_swap_rate_rv(const vp_model* model, double T, int n, double* out);

/* T in years. n is ignored for VP_METHOD_QV. contour and mc may be NULL. */
VP_API vp_status vp_price(const vp_model* model, vp_method method, vp_side side, double T, int n,
                          double k, const vp_contour* contour, const vp_mc* mc,
                          vp_price_result* out);
/* Same as vp_price, returning the full result with diagnostics as JSON. */
VP_API vp_status vp_price_json(const vp_model* model, vp_method method, vp_side side, double T,
                               int n, double k, const vp_contour* contour, const vp_mc* mc,
                               char** out);

VP_API vp_status vp_laplace(const vp_model* model, vp_transform transform, double u_re,
                            double u_im, double T, int n, double* re, double* im);

VP_API vp_status vp_q_fn(double k, int n, double r, double* out);
VP_API vp_status vp_r_fn(double k, int n, double r, double* out);
/* Small-maturity limit of a put or call; n is ignored for quadratic variation. */
VP_API vp_status vp_limit(const vp_model* model, vp_underlying underlying, vp_side side, double k,
                          int n, double* out);
VP_API vp_status vp_discretization_gap(const vp_model* model, double k, int n, double* out);

/* Runs a property suite; *passed is 1 when every check passed. */
VP_API vp_status vp_validate(const vp_model* model, vp_suite suite, long paths, uint64_t seed,
                             int* passed, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* VARPRICER_H_ */
