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

// Model instances shared by the test suites.

#include "varpricer/levy_models.hpp"

namespace varpricer::testing {

inline LevyModel bs_model(double sigma = 0.3) { return LevyModel::black_scholes(sigma); }

inline LevyModel merton_model() { return LevyModel::merton(0.2, 0.5, -0.1, 0.2); }

inline LevyModel kou_model(double sigma = 0.3) {
  return LevyModel::kou(sigma, 0.5955, 16.6667, 3.3745, 10.0);
}

inline LevyModel nig_model() { return LevyModel::nig(15.0, -5.0, 0.5); }

inline LevyModel cgmy_model() { return LevyModel::cgmy(0.3251, 3.7103, 18.4460, 0.6029); }

inline LevyModel poisson_model() { return LevyModel::poisson(1.0, 1.0); }

inline std::vector<LevyModel> catalog() {
  return {bs_model(), merton_model(), kou_model(), nig_model(), cgmy_model()};
}

}  // namespace varpricer::testing
