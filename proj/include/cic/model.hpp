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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cic {

/// Physical-layer and geometry constants of the downlink.
///
/// Units: densities in nodes/m², powers in watts, bandwidth in MHz, slot in
/// seconds, packet size in Mb, distances in meters. `r_b` may be 0 (no CSI)
/// or +infinity (global CSI); both are treated as exact regimes downstream.
/// `lambda_u` is carried for completeness only; no PLR expression depends on
/// it under the one-request-per-slot model.
struct NetworkParams {
  double lambda_b = 0.0;
  double lambda_u = 0.0;
  double tx_power = 0.0;
  double noise_power = 0.0;
  double beta = 4.0;
  double bandwidth = 0.0;
  double slot = 0.0;
  double packet_size = 0.0;
  double r_b = 0.0;

  /// Throws Error(validation) if any field is out of range. beta <= 2 is
  /// rejected since the interference Laplace exponent diverges there.
  void validate() const;

  bool interference_limited() const noexcept { return noise_power == 0.0; }
  bool global_csi() const noexcept { return std::isinf(r_b); }
  bool no_csi() const noexcept { return r_b == 0.0; }
};

double dbm_to_watts(double dbm);

/// The reference deployment used by the presets:
/// 100 BSs and 2000 users per π·500² m², 20 MHz, 0.5 s slots, 33 dBm,
/// interference-limited, β = 4, 10 Mb packets. `r_b` defaults to 0.
NetworkParams reference_network();

/// SINR threshold 2^{T/(τB)} − 1 (units of T/(τB) cancel: Mb / (s·MHz)).
double sinr_threshold(const NetworkParams& params);

/// N packets with per-slot access probabilities, stored in descending order.
class PacketLibrary {
 public:
  /// Sorts descending (stable on input index). Requires Σ f = 1 within 1e-12
  /// and every f in [0, 1].
  static PacketLibrary from_probabilities(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t j) const { return probs_[j]; }

 private:
  explicit PacketLibrary(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

/// f_i ∝ i^{−γ}, i = 1..n.
PacketLibrary zipf_popularity(std::size_t n, double gamma);

/// One user subset: the 0-based packet indices it caches (sorted, distinct)
/// and the fraction of users holding that cache content.
struct CacheRow {
  std::vector<std::uint32_t> packets;
  double density = 0.0;
};

/// Rows ordered by density descending; ties broken lexicographically by
/// packet set.
bool canonical_row_order(const CacheRow& a, const CacheRow& b);

/// Sparse view of the (P, Q) caching matrices. Only listed rows exist; every
/// other M-subset implicitly has density 0.
class CachingScheme {
 public:
  /// Validates and canonically sorts the rows. Each row must list exactly
  /// `cache_size` distinct packets below `n_packets`; densities must be in
  /// [0, 1] and sum to 1 within 1e-12; no subset may repeat.
  CachingScheme(std::size_t n_packets, std::size_t cache_size,
                std::vector<CacheRow> rows);

  std::size_t n_packets() const noexcept { return n_packets_; }
  std::size_t cache_size() const noexcept { return cache_size_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  const CacheRow& row(std::size_t i) const { return rows_[i]; }
  std::span<const CacheRow> all_rows() const noexcept { return rows_; }

  /// q_{i,j} as a 0/1 value.
  bool caches(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_packets_;
  std::size_t cache_size_;
  std::vector<CacheRow> rows_;
};

/// Network-average caching probability q_j = Σ_i p_i q_{i,j}.
std::vector<double> q_bar(const CachingScheme& scheme);

/// Fraction of transmitting BSs serving each packet. Returns std::nullopt
/// when no request ever reaches a BS (every requested packet is cached
/// everywhere); callers treat every PLR as 0 in that regime.
std::optional<std::vector<double>> alpha_fractions(const PacketLibrary& lib,
                                                   const CachingScheme& scheme);

/// η_i = Σ_j α_j q_{i,j} for every stored row.
std::vector<double> eta(const CachingScheme& scheme, std::span<const double> alpha);

struct DerivedLoad {
  std::vector<double> alpha;
  std::vector<double> q_bar;
  std::vector<double> eta;
  double t_bar = 0.0;
  bool no_downlink_traffic = false;
};

DerivedLoad derive_load(const NetworkParams& params, const PacketLibrary& lib,
                        const CachingScheme& scheme);

}  // namespace cic
