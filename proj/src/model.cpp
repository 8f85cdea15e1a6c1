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

#include "cic/model.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cic/error.hpp"
#include "summation.hpp"

namespace cic {

namespace {

constexpr double kSumTolerance = 1e-12;

void require(bool ok, const char* what) {
  if (!ok) {
    fail_validation(what);
  }
}

}  // namespace

void NetworkParams::validate() const {
  require(std::isfinite(lambda_b) && lambda_b > 0.0, "lambda_b must be positive and finite");
  require(std::isfinite(lambda_u) && lambda_u > 0.0, "lambda_u must be positive and finite");
  require(std::isfinite(tx_power) && tx_power > 0.0, "tx_power must be positive and finite");
  require(std::isfinite(noise_power) && noise_power >= 0.0, "noise_power must be >= 0 and finite");
  require(std::isfinite(beta) && beta > 2.0,
          "beta must exceed 2 (interference Laplace exponent diverges at beta <= 2)");
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth must be positive and finite");
  require(std::isfinite(slot) && slot > 0.0, "slot must be positive and finite");
  require(std::isfinite(packet_size) && packet_size > 0.0,
          "packet_size must be positive and finite");
  require(!std::isnan(r_b) && r_b >= 0.0, "r_b must be >= 0 (may be +inf)");
}

double dbm_to_watts(double dbm) {
  require(std::isfinite(dbm), "power in dBm must be finite");
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

NetworkParams reference_network() {
  NetworkParams p;
  const double area = std::numbers::pi * 500.0 * 500.0;
  p.lambda_b = 100.0 / area;
  p.lambda_u = 2000.0 / area;
  p.tx_power = dbm_to_watts(33.0);
  p.noise_power = 0.0;
  p.beta = 4.0;
  p.bandwidth = 20.0;
  p.slot = 0.5;
  p.packet_size = 10.0;
  p.r_b = 0.0;
  return p;
}

double sinr_threshold(const NetworkParams& params) {
  params.validate();
  const double exponent = params.packet_size / (params.slot * params.bandwidth);
  return std::expm1(exponent * std::numbers::ln2);
}

PacketLibrary PacketLibrary::from_probabilities(std::vector<double> probs) {
  require(!probs.empty(), "packet library must contain at least one packet");
  detail::CompensatedSum total;
  for (double f : probs) {
    require(std::isfinite(f) && f >= 0.0 && f <= 1.0, "access probabilities must lie in [0, 1]");
    total.add(f);
  }
  if (std::fabs(total.value() - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "access probabilities must sum to 1 (got " << total.value() << ")";
    fail_validation(os.str());
  }
  std::stable_sort(probs.begin(), probs.end(), std::greater<>());
  return PacketLibrary(std::move(probs));
}

PacketLibrary zipf_popularity(std::size_t n, double gamma) {
  require(n >= 1, "zipf library size must be >= 1");
  require(std::isfinite(gamma) && gamma >= 0.0, "zipf exponent must be finite and >= 0");
  std::vector<double> w(n);
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::pow(static_cast<double>(i + 1), -gamma);
    total.add(w[i]);
  }
  const double norm = total.value();
  for (double& x : w) {
    x /= norm;
  }
  return PacketLibrary::from_probabilities(std::move(w));
}

bool canonical_row_order(const CacheRow& a, const CacheRow& b) {
  if (a.density != b.density) {
    return a.density > b.density;
  }
  return a.packets < b.packets;
}

CachingScheme::CachingScheme(std::size_t n_packets, std::size_t cache_size,
                             std::vector<CacheRow> rows)
    : n_packets_(n_packets), cache_size_(cache_size), rows_(std::move(rows)) {
  require(n_packets_ >= 1, "caching scheme needs at least one packet");
  require(cache_size_ <= n_packets_, "cache size M must satisfy 0 <= M <= N");
  require(!rows_.empty(), "caching scheme needs at least one subset");
  detail::CompensatedSum total;
  for (CacheRow& row : rows_) {
    require(std::isfinite(row.density) && row.density >= 0.0 && row.density <= 1.0,
            "subset densities must lie in [0, 1]");
    total.add(row.density);
    std::sort(row.packets.begin(), row.packets.end());
    require(row.packets.size() == cache_size_, "every subset must cache exactly M packets");
    require(std::adjacent_find(row.packets.begin(), row.packets.end()) == row.packets.end(),
            "subset lists a packet twice");
    require(row.packets.empty() || row.packets.back() < n_packets_,
            "subset references a packet outside the library");
  }
  if (std::fabs(total.value() - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "subset densities must sum to 1 (got " << total.value() << ")";
    fail_validation(os.str());
  }
  std::stable_sort(rows_.begin(), rows_.end(), canonical_row_order);
  std::vector<const std::vector<std::uint32_t>*> sets;
  sets.reserve(rows_.size());
  for (const CacheRow& row : rows_) {
    sets.push_back(&row.packets);
  }
  std::sort(sets.begin(), sets.end(), [](auto* a, auto* b) { return *a < *b; });
  for (std::size_t i = 1; i < sets.size(); ++i) {
    require(*sets[i - 1] != *sets[i], "caching scheme lists the same subset twice");
  }
}

bool CachingScheme::caches(std::size_t i, std::size_t j) const {
  const auto& p = rows_.at(i).packets;
  return std::binary_search(p.begin(), p.end(), static_cast<std::uint32_t>(j));
}

std::vector<double> q_bar(const CachingScheme& scheme) {
  std::vector<detail::CompensatedSum> acc(scheme.n_packets());
  for (const CacheRow& row : scheme.all_rows()) {
    for (std::uint32_t j : row.packets) {
      acc[j].add(row.density);
    }
  }
  std::vector<double> q(scheme.n_packets());
  for (std::size_t j = 0; j < q.size(); ++j) {
    q[j] = std::clamp(acc[j].value(), 0.0, 1.0);
  }
  return q;
}

std::optional<std::vector<double>> alpha_fractions(const PacketLibrary& lib,
                                                   const CachingScheme& scheme) {
  require(lib.size() == scheme.n_packets(), "library and scheme disagree on N");
  const std::vector<double> q = q_bar(scheme);
  std::vector<double> alpha(lib.size());
  detail::CompensatedSum traffic;
  for (std::size_t j = 0; j < lib.size(); ++j) {
    // (1 − q_j) f_j; numerator and denominator share the same terms so the
    // ratio sums to one without separately forming 1 − Σ q_j f_j.
    alpha[j] = (1.0 - q[j]) * lib[j];
    traffic.add(alpha[j]);
  }
  const double denom = traffic.value();
  if (!(denom > 0.0)) {
    return std::nullopt;
  }
  for (double& a : alpha) {
    a /= denom;
  }
  return alpha;
}

std::vector<double> eta(const CachingScheme& scheme, std::span<const double> alpha) {
  require(alpha.size() == scheme.n_packets(), "alpha length must equal N");
  std::vector<double> out;
  out.reserve(scheme.rows());
  for (const CacheRow& row : scheme.all_rows()) {
    detail::CompensatedSum s;
    for (std::uint32_t j : row.packets) {
      s.add(alpha[j]);
    }
    out.push_back(std::clamp(s.value(), 0.0, 1.0));
  }
  return out;
}

DerivedLoad derive_load(const NetworkParams& params, const PacketLibrary& lib,
                        const CachingScheme& scheme) {
  DerivedLoad load;
  load.t_bar = sinr_threshold(params);
  load.q_bar = q_bar(scheme);
  auto alpha = alpha_fractions(lib, scheme);
  if (!alpha) {
    load.no_downlink_traffic = true;
    load.alpha.assign(lib.size(), 0.0);
    load.eta.assign(scheme.rows(), 0.0);
    return load;
  }
  load.alpha = std::move(*alpha);
  load.eta = eta(scheme, load.alpha);
  return load;
}

}  // namespace cic
