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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cic/analytics.hpp"
#include "cic/error.hpp"
#include "support/schemes.hpp"

using namespace cic;

namespace {

constexpr double kNoCsi = 0.43990084648844262;       // pi / (pi + 4)
constexpr double kFullCancel15 = 0.40033165457363538;

NetworkParams at_rb(double r_b, double noise = 0.0) {
  NetworkParams p = reference_network();
  p.r_b = r_b;
  p.noise_power = noise;
  return p;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("closed forms") {
  const NetworkParams p = reference_network();
  CHECK(std::fabs(plr_no_csi(p, true) - kNoCsi) < 1e-14);
  CHECK(std::fabs(plr_no_csi(p, false) - kNoCsi) < 1e-8);
  CHECK(std::fabs(plr_full_cancellation(0.15, 1.0, 4.0) - kFullCancel15) < 1e-14);
  CHECK(std::fabs(plr_full_cancellation(0.0, 1.0, 4.0) - kNoCsi) < 1e-14);
  CHECK(plr_full_cancellation(1.0, 1.0, 4.0) == 0.0);
  CHECK(std::fabs(plr_uniform(100, 3, 1.0, 4.0) - 0.41943804093872768) < 1e-14);
  CHECK(std::fabs(plr_uniform(7, 0, 1.0, 4.0) - kNoCsi) < 1e-14);
  CHECK(plr_uniform(5, 5, 1.0, 4.0) == 0.0);
  CHECK_THROWS_AS(plr_uniform(3, 4, 1.0, 4.0), Error);
}

TEST_CASE("partial CSI reference values") {
  // mpmath, 30 digits: tests/oracles/oracle_values.py
  CHECK(std::fabs(plr_partial_csi(at_rb(60), 0.05) - 0.436060218148323) < 1e-10);
  CHECK(std::fabs(plr_partial_csi(at_rb(120), 0.05) - 0.430406777749293) < 1e-10);
  CHECK(std::fabs(plr_partial_csi(at_rb(60), 0.15) - 0.428272443442588) < 1e-10);
  CHECK(std::fabs(plr_partial_csi(at_rb(120), 0.15) - 0.410647972923266) < 1e-10);
  const double noise = 1e-9;
  CHECK(std::fabs(plr_partial_csi(at_rb(120, noise), 0.15) - 0.411866864401348) < 1e-10);
  CHECK(std::fabs(plr_no_csi(at_rb(0, noise), false) - 0.440995209814366) < 1e-10);
  CHECK(std::fabs(plr_uncached(at_rb(0, noise), 0.15) - 0.440995209814366) < 1e-10);
}

TEST_CASE("eta zero collapses to no CSI") {
  for (double rb : {10.0, 60.0, 300.0}) {
    CHECK(std::fabs(plr_partial_csi(at_rb(rb), 0.0) - kNoCsi) < 1e-9);
  }
}

TEST_CASE("limits in r_b") {
  CHECK(std::fabs(plr_partial_csi(at_rb(1e-3), 0.15) - kNoCsi) < 1e-6);
  double prev = plr_partial_csi(at_rb(500), 0.15);
  double r = 500;
  while (true) {
    r *= 2;
    const double cur = plr_partial_csi(at_rb(r), 0.15);
    const bool settled = std::fabs(cur - prev) < 1e-5;
    prev = cur;
    if (settled) break;
    REQUIRE(r < 1e7);
  }
  CHECK(std::fabs(prev - kFullCancel15) < 1e-4);
  CHECK(std::fabs(plr_uncached(at_rb(INFINITY), 0.15) - kFullCancel15) < 1e-14);
  // global CSI with noise is finite and above the noiseless value
  const double noisy = plr_uncached(at_rb(INFINITY, 1e-9), 0.15);
  CHECK(noisy > kFullCancel15);
  CHECK(noisy < 1.0);
}

TEST_CASE("monotone in r_b and eta") {
  for (double eta : {0.05, 0.15, 0.6}) {
    double prev = plr_no_csi(reference_network(), true);
    for (int k = 1; k <= 20; ++k) {
      const double cur = plr_partial_csi(at_rb(15.0 * k), eta);
      CHECK(cur < prev - 1e-10);
      prev = cur;
    }
  }
  for (int k = 1; k <= 20; ++k) {
    CHECK(plr_partial_csi(at_rb(15.0 * k), 0.15) < plr_partial_csi(at_rb(15.0 * k), 0.05) - 1e-10);
  }
  double prev = 1.0;
  for (double eta = 0.0; eta < 1.0; eta += 0.05) {
    const double cur = plr_full_cancellation(eta, 1.0, 4.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("gain") {
  CHECK(plr_gain(at_rb(120), 0.0) < 1e-9);
  CHECK(plr_gain(at_rb(1e-4), 0.15) < 1e-6);
  const double g = plr_gain(at_rb(120), 0.15);
  CHECK(std::fabs(g - (kNoCsi - 0.410647972923266)) < 1e-9);
}

TEST_CASE("plr_uniform decreases with M, bandwidth and slot") {
  double prev = 1.0;
  for (std::size_t m = 0; m <= 10; ++m) {
    const double v = plr_uniform(10, m, 1.0, 4.0);
    if (m > 0) CHECK(v < prev);
    prev = v;
  }
  NetworkParams p = reference_network();
  double last_b = 1.0;
  for (double b : {5.0, 10.0, 20.0, 40.0}) {
    p.bandwidth = b;
    const double v = plr_uniform(100, 3, sinr_threshold(p), 4.0);
    CHECK(v < last_b);
    last_b = v;
  }
  p = reference_network();
  double last_tau = 1.0;
  for (double tau : {0.1, 0.25, 0.5, 1.0}) {
    p.slot = tau;
    const double v = plr_uniform(100, 3, sinr_threshold(p), 4.0);
    CHECK(v < last_tau);
    last_tau = v;
  }
}

TEST_CASE("pair and network averages") {
  const auto lib = zipf_popularity(4, 0.8);
  CachingScheme s(4, 1, {{{0}, 0.5}, {{1}, 0.5}});
  const NetworkParams p = reference_network();
  PlrQuery q{p, lib, s, 0, 0};
  CHECK(plr_pair(q, Regime::full_cancel) == 0.0);
  q.packet_index = 2;
  const auto load = derive_load(p, lib, s);
  CHECK(std::fabs(plr_pair(q, Regime::full_cancel) -
                  plr_full_cancellation(load.eta[0], 1.0, 4.0)) < 1e-14);
  CHECK(std::fabs(plr_pair(q, Regime::no_csi) - kNoCsi) < 1e-14);

  SUBCASE("everything cached") {
    CachingScheme all(4, 4, {{{0, 1, 2, 3}, 1.0}});
    CHECK(average_plr(p, lib, all, Regime::full_cancel) == 0.0);
    CHECK(average_plr(p, lib, all, Regime::general) == 0.0);
  }
  SUBCASE("single subset has no cancellation gain") {
    CachingScheme one(4, 2, {{{0, 1}, 1.0}});
    const double hit = lib[0] + lib[1];
    CHECK(std::fabs(average_plr(p, lib, one, Regime::full_cancel) - (1 - hit) * kNoCsi) < 1e-14);
  }
  SUBCASE("general regime at r_b infinity equals full cancellation") {
    NetworkParams g = p;
    g.r_b = INFINITY;
    CHECK(std::fabs(average_plr(g, lib, s, Regime::general) -
                    average_plr(g, lib, s, Regime::full_cancel)) < 1e-14);
  }
}

TEST_CASE("uniform popularity identity on random feasible schemes") {
  std::mt19937_64 rng(2024);
  const NetworkParams p = reference_network();
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 3 + rng() % 10;
    const std::size_t m = 1 + rng() % (n - 1);
    const auto lib = zipf_popularity(n, 0.0);
    const auto s = cic::testing::random_uniform_coverage(n, m, 1 + static_cast<int>(rng() % 4), rng);
    CAPTURE(n);
    CAPTURE(m);
    CHECK(std::fabs(average_plr(p, lib, s, Regime::full_cancel) - plr_uniform(n, m, 1.0, 4.0)) < 1e-10);
  }
}

TEST_CASE("outputs stay in range") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    NetworkParams p = reference_network();
    p.beta = 2.2 + 4.0 * u(rng);
    p.packet_size = 0.5 + 30.0 * u(rng);
    p.r_b = 400.0 * u(rng);
    p.noise_power = u(rng) < 0.5 ? 0.0 : 1e-10 * u(rng);
    const double v = plr_uncached(p, u(rng));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(plr_partial_csi(at_rb(0.0), 0.1), Error);
  CHECK_THROWS_AS(plr_partial_csi(at_rb(INFINITY), 0.1), Error);
  CHECK_THROWS_AS(plr_partial_csi(at_rb(50.0), 1.1), Error);
  CHECK_THROWS_AS(plr_full_cancellation(-0.1, 1.0, 4.0), Error);
}

}  // TEST_SUITE
