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

#include <complex>
#include <stdexcept>
#include <string>

namespace varpricer {

using Complex = std::complex<double>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration or parameter outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the analyticity domain of a function
/// (pole, branch cut, or a transform gate that does not hold).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma function evaluated at a nonpositive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A quadrature or series did not reach its tolerance within budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Simulation scheme not available for the requested model.
class UnsupportedScheme : public Error {
 public:
  using Error::Error;
};

}  // namespace varpricer
