/*
   Copyright 2026 The cic Authors

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

#include <array>
#include <cstdint>
#include <string_view>

namespace cic {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A pure function of (counter, key): the same inputs always give the same
/// 128 output bits, so any trial can be regenerated without replaying the
/// ones before it.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) noexcept;
};

/// SplitMix64 finalizer; bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent seed for a named sub-computation:
/// mix64(seed ^ mix64(FNV-1a(label))).
std::uint64_t split_seed(std::uint64_t seed, std::string_view label) noexcept;

/// Uniform stream for one (seed, trial, stream tag) triple. Block b of the
/// stream is Philox(counter = {b, tag, trial_lo, trial_hi}, key = seed);
/// each block yields two doubles from its 64-bit halves.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t tag = 0) noexcept;

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() noexcept;

  /// Unit-mean exponential variate by inversion.
  double exponential() noexcept;

 private:
  void refill() noexcept;

  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  Philox4x32::Counter block_{};
  int next_ = 2;
};

}  // namespace cic
