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

#pragma once

#include "varpricer/errors.hpp"
#include "varpricer/quadrature.hpp"

namespace varpricer::specfun {

/// Complex gamma function. Lanczos approximation (g = 7, 9 terms) on
/// Re z >= 1/2 and the reflection formula elsewhere; about 14 significant
/// digits for |z| <= 100. Throws PoleError at 0, -1, -2, ...
Complex gamma_fn(Complex z);
double gamma_fn(double x);

/// Principal branch of log Gamma(z) assembled from the Lanczos sum.
Complex log_gamma(Complex z);

/// Regularized incomplete gamma functions P(s, x) and Q(s, x) = 1 - P.
/// Series below x = s + 1, Lentz continued fraction above.
double gamma_p(double s, double x);
double gamma_q(double s, double x);

/// Lower incomplete gamma gamma(s, x) = int_0^x t^(s-1) e^(-t) dt.
double lower_incomplete_gamma(double s, double x);

/// Confluent hypergeometric U(a, b, z) for a > 0 and Re z > 0 from
///   U(a,b,z) = z^(-a)/Gamma(a) int_0^inf e^(-s) s^(a-1) (1 + s/z)^(b-a-1) ds,
/// which is the Laplace integral with the path rotated onto arg t = -arg z.
/// Evaluated by exp-sinh quadrature.
Complex hyp_u(double a, double b, Complex z, const QuadratureSpec& spec = {});

/// I(kappa, nu, tau) = 2^-kappa tau^(-kappa/2) Gamma(kappa) U(kappa/2, 1/2, nu^2/(4 tau)),
/// equal to int_0^inf exp(-tau x^2 - nu x) x^(kappa-1) dx for Re tau > 0.
Complex i_function(double kappa, double nu, Complex tau,
                   const QuadratureSpec& spec = {});

}  // namespace varpricer::specfun
