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

#include <cstddef>

#include "cic/model.hpp"
#include "cic/specfun.hpp"

namespace cic {

/// Which PLR expression to evaluate for un-cached requests.
enum class Regime {
  general,      // partial CSI within params.r_b and noise params.noise_power
  no_csi,       // r_b → 0: no interference is cancelled
  full_cancel,  // r_b → ∞ and σ² → 0: every cancellable interferer removed
};

/// A (subset, packet) pair inside a concrete network and caching scheme.
/// Φ_b1 (cancellable) has intensity λ_b·η_i and Φ_b2 the remainder.
struct PlrQuery {
  NetworkParams params;
  PacketLibrary lib;
  CachingScheme scheme;
  std::size_t subset_index = 0;
  std::size_t packet_index = 0;
};

/// Loss probability of an un-cached packet with CSI inside radius r_b:
/// 1 − P_s − P_b, where P_s integrates serving distances below r_b
/// (cancellable interferers removed up to r_b) and P_b those beyond
/// (nothing cancellable is nearer than the server). Requires
/// 0 < params.r_b < ∞ and eta_i in [0, 1].
double plr_partial_csi(const NetworkParams& params, double eta_i,
                       const QuadratureSpec& spec = {});

/// Loss probability of an un-cached packet for any r_b in [0, ∞]: dispatches
/// to the no-CSI integral at r_b = 0, the global-CSI integral at r_b = ∞ and
/// plr_partial_csi otherwise.
double plr_uncached(const NetworkParams& params, double eta_i, const QuadratureSpec& spec = {});

/// No-CSI loss probability. With `interference_limited` the closed form
/// 1/(1 + 1/Z₁(T̄)) is returned and the noise power is ignored; otherwise the
/// radial integral is evaluated numerically with params.noise_power.
double plr_no_csi(const NetworkParams& params, bool interference_limited,
                  const QuadratureSpec& spec = {});

/// Interference-limited, global-CSI loss probability 1/(1 + (1−η)^{−1}/Z₁(T̄)).
double plr_full_cancellation(double eta_i, double t_bar, double beta);

/// (1 − q_{i,j}) times the regime's un-cached loss probability. Returns 0
/// when the network carries no downlink traffic.
double plr_pair(const PlrQuery& query, Regime regime, const QuadratureSpec& spec = {});

/// Σ_i p_i Σ_j P_{i,j} f_j over the scheme's rows.
double average_plr(const NetworkParams& params, const PacketLibrary& lib,
                   const CachingScheme& scheme, Regime regime, const QuadratureSpec& spec = {});

/// Average PLR under uniform popularity and q_j = M/N in the full-cancellation
/// regime: (1 − M/N)² / (1 + 1/Z₁(T̄) − M/N).
double plr_uniform(std::size_t n, std::size_t m, double t_bar, double beta);

/// PLR reduction bought by CSI radius params.r_b: no-CSI PLR minus partial-CSI
/// PLR at the same noise level. Never negative.
double plr_gain(const NetworkParams& params, double eta_i, const QuadratureSpec& spec = {});

}  // namespace cic
