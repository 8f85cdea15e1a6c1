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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cic/model.hpp"

namespace cic {

/// Explicit packet labels for interferers: each interfering BS transmits
/// packet j with probability alpha[j] and is cancellable iff cached[j].
struct LabeledInterference {
  std::vector<double> alpha;
  std::vector<bool> cached;
};

/// Typical-user experiment at the origin. BSs form a PPP of intensity
/// params.lambda_b inside a disk of radius `window_radius`; each interferer is
/// cancellable with probability `eta_i` (or per `labels` when set).
struct TrialConfig {
  NetworkParams params;
  double eta_i = 0.0;
  double window_radius = 0.0;  // 0 selects default_window_radius(lambda_b)
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<LabeledInterference> labels;
  unsigned workers = 1;  // 0 selects std::thread::hardware_concurrency()

  void validate() const;
  double effective_window() const;
};

/// 32 mean nearest-neighbour scales, 32/√(πλ_b). Interference from beyond
/// this radius shifts the β = 4 no-CSI loss rate by about 3e-4.
double default_window_radius(double lambda_b);

struct TrialOutcome {
  double serving_distance = 0.0;
  double sinr = 0.0;
  bool lost = false;
  std::size_t base_stations = 0;  // including the server
  std::size_t cancellable = 0;    // interferers marked cancellable
  std::size_t cancelled = 0;      // cancellable and within max(R, r_b)
  unsigned rejections = 0;        // empty windows redrawn before this trial
};

struct PlrEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t losses = 0;
  std::uint64_t rejections = 0;
};

PlrEstimate make_estimate(std::uint64_t losses, std::uint64_t trials,
                          std::uint64_t rejections = 0);

/// One slot for trial `trial_index` of cfg's seed.
///
/// Draw order (fixed, so results depend only on seed and trial index): serving
/// fading h0; then BSs outward from the origin with squared distance
/// increments Exp(1)/(πλ_b) until the window edge, each interferer drawing a
/// mark uniform and an Exp(1) fading power. An empty window is redrawn on the
/// next stream tag and counted in `rejections`.
TrialOutcome run_trial(const TrialConfig& cfg, std::uint64_t trial_index);

/// Fraction of lost trials over trial indices [0, cfg.trials). Bit-identical
/// for any worker count.
PlrEstimate estimate_plr(const TrialConfig& cfg);

struct SweepPoint {
  double r_b = 0.0;
  double eta = 0.0;
  PlrEstimate estimate;
};

/// Cross product of CSI radii and cancellable fractions with common random
/// numbers: every grid point reuses the same layouts, so each point equals
/// estimate_plr() for that (r_b, eta) with the base seed. Rows are ordered
/// by r_b, then eta, in grid order.
std::vector<SweepPoint> sweep(const TrialConfig& base, std::span<const double> r_b_grid,
                              std::span<const double> eta_grid);

/// Network-average loss rate: each trial samples a subset by density and a
/// packet by popularity; cached requests are never lost, the rest run one
/// slot with the subset's η. Uses params.r_b and params.noise_power as given.
PlrEstimate average_plr_sim(const NetworkParams& params, const PacketLibrary& lib,
                            const CachingScheme& scheme, std::uint64_t trials,
                            std::uint64_t seed, double window_radius = 0.0,
                            unsigned workers = 1);

/// Serving distances of trials [0, count).
std::vector<double> serving_distances(const TrialConfig& cfg, std::uint64_t count);

}  // namespace cic
