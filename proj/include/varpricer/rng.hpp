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

// Philox4x32-10 counter-based generator. Every draw is a pure function of
// (seed, path, step, stream, index), so parallel simulation reproduces the
// serial output bit for bit.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace varpricer {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  static Counter single_round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Stream of uniforms and normals for one (path, step, stream) cell.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t path, std::uint32_t step,
                std::uint32_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        path_(path),
        step_(step),
        stream_(stream) {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    if (used_ >= 2) refill();
    const std::uint32_t a = buf_[2 * used_];
    const std::uint32_t b = buf_[2 * used_ + 1];
    ++used_;
    const std::uint64_t bits = (std::uint64_t{a >> 5} << 26) | (b >> 6);
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double th = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
  }

  double exponential() { return -std::log(uniform()); }

  /// Poisson draw by sequential inversion; fine for the small means met
  /// per time step.
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 30.0) {
      // Split large means so that exp(-mean) stays well above underflow.
      const double half = 0.5 * mean;
      return poisson(half) + poisson(mean - half);
    }
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    long k = 0;
    while (u > cdf && k < 10000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
      if (p == 0.0) break;
    }
    return k;
  }

 private:
  void refill() {
    buf_ = Philox4x32::generate({block_++, step_, path_, stream_}, key_);
    used_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t path_, step_, stream_;
  std::uint32_t block_ = 0;
  Philox4x32::Counter buf_{};
  int used_ = 2;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace varpricer
