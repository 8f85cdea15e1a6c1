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
#include <vector>

#include "cic/analytics.hpp"
#include "cic/error.hpp"
#include "cic/montecarlo.hpp"
#include "support/stats.hpp"

using namespace cic;

namespace {

TrialConfig base_config(double r_b, double eta, std::uint64_t trials, std::uint64_t seed = 11) {
  TrialConfig cfg;
  cfg.params = reference_network();
  cfg.params.r_b = r_b;
  cfg.eta_i = eta;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

// Agreement within k standard errors plus the window truncation bias.
bool agrees(const PlrEstimate& e, double want, double k = 4.0) {
  return std::fabs(e.mean - want) <= k * e.std_error + 5e-4;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("configuration checks") {
  TrialConfig cfg = base_config(0.0, 0.1, 10);
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.effective_window() == doctest::Approx(1600.0).epsilon(1e-12));
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = base_config(0.0, 1.5, 10);
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = base_config(0.0, 0.1, 10);
  cfg.window_radius = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = base_config(0.0, 0.1, 10);
  cfg.labels = LabeledInterference{{0.5, 0.5}, {true}};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("estimate bookkeeping") {
  const auto e = make_estimate(25, 100);
  CHECK(e.mean == 0.25);
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)).epsilon(1e-15));
  CHECK_THROWS_AS(make_estimate(5, 0), Error);
}

TEST_CASE("trial outcomes are consistent") {
  const TrialConfig cfg = base_config(120.0, 0.3, 1);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto o = run_trial(cfg, t);
    CHECK(o.serving_distance > 0.0);
    CHECK(o.sinr >= 0.0);
    CHECK(o.lost == (o.sinr < 1.0));
    CHECK(o.cancelled <= o.cancellable);
    CHECK(o.cancellable < o.base_stations);
    const auto again = run_trial(cfg, t);
    CHECK(again.sinr == o.sinr);
  }
}

TEST_CASE("worker count does not change results") {
  TrialConfig cfg = base_config(60.0, 0.15, 3000);
  cfg.workers = 1;
  const auto one = estimate_plr(cfg);
  cfg.workers = 3;
  const auto three = estimate_plr(cfg);
  CHECK(one.losses == three.losses);
  CHECK(one.mean == three.mean);
}

TEST_CASE("sweep points equal single estimates") {
  const TrialConfig base = base_config(0.0, 0.0, 1500, 3);
  const std::vector<double> rbs = {0.0, 90.0, INFINITY};
  const std::vector<double> etas = {0.05, 0.5};
  const auto pts = sweep(base, rbs, etas);
  REQUIRE(pts.size() == 6);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(pts[k].r_b == rbs[k / 2]);
    CHECK(pts[k].eta == etas[k % 2]);
    TrialConfig one = base;
    one.params.r_b = pts[k].r_b;
    one.eta_i = pts[k].eta;
    CHECK(estimate_plr(one).losses == pts[k].estimate.losses);
  }
  // common random numbers make each layout monotone in r_b and eta
  CHECK(pts[0].estimate.losses >= pts[2].estimate.losses);
  CHECK(pts[2].estimate.losses >= pts[4].estimate.losses);
  CHECK(pts[4].estimate.losses >= pts[5].estimate.losses);
}

TEST_CASE("thinning fraction") {
  const TrialConfig cfg = base_config(0.0, 0.3, 1);
  double marked = 0.0, total = 0.0;
  for (std::uint64_t t = 0; t < 300; ++t) {
    const auto o = run_trial(cfg, t);
    marked += static_cast<double>(o.cancellable);
    total += static_cast<double>(o.base_stations - 1);
  }
  const double frac = marked / total;
  CHECK(std::fabs(frac - 0.3) < 4.0 * std::sqrt(0.3 * 0.7 / total));
}

TEST_CASE("serving distance follows the Rayleigh law") {
  const TrialConfig cfg = base_config(0.0, 0.0, 1);
  const auto r = serving_distances(cfg, 20000);
  const double lam = cfg.params.lambda_b;
  const double d = cic::testing::ks_statistic(
      r, [lam](double x) { return -std::expm1(-M_PI * lam * x * x); });
  CHECK(cic::testing::ks_pvalue(d, r.size()) > 0.01);
}

TEST_CASE("no-CSI and full-cancellation rates") {
  const auto none = estimate_plr(base_config(0.0, 0.15, 20000));
  CHECK(agrees(none, M_PI / (M_PI + 4)));
  const auto full = estimate_plr(base_config(INFINITY, 0.15, 20000));
  CHECK(agrees(full, plr_full_cancellation(0.15, 1.0, 4.0)));
  const auto partial = estimate_plr(base_config(120.0, 0.15, 20000));
  CHECK(agrees(partial, 0.410647972923266));
}

TEST_CASE("everything cancellable with global CSI is never lost") {
  const auto e = estimate_plr(base_config(INFINITY, 1.0, 2000));
  CHECK(e.losses == 0);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("larger windows only add far interference") {
  TrialConfig a = base_config(0.0, 0.0, 4000, 5);
  a.window_radius = 1600.0;
  TrialConfig b = a;
  b.window_radius = 2400.0;
  const auto ea = estimate_plr(a);
  const auto eb = estimate_plr(b);
  CHECK(eb.losses >= ea.losses);
  CHECK(eb.mean - ea.mean < 2e-3);
}

TEST_CASE("labelled interferers agree with Bernoulli marks") {
  TrialConfig bern = base_config(120.0, 0.4, 20000, 17);
  TrialConfig lab = bern;
  lab.seed = 18;
  lab.labels = LabeledInterference{{0.25, 0.15, 0.35, 0.25}, {true, true, false, false}};
  const auto eb = estimate_plr(bern);
  const auto el = estimate_plr(lab);
  const double se = std::hypot(eb.std_error, el.std_error);
  CHECK(std::fabs(eb.mean - el.mean) < 4.0 * se);
}

TEST_CASE("network average matches analytics") {
  NetworkParams p = reference_network();
  p.r_b = 120.0;
  const auto lib = zipf_popularity(6, 0.8);
  const CachingScheme s(6, 2, {{{0, 5}, 0.4}, {{1, 4}, 0.35}, {{2, 3}, 0.25}});
  const auto sim = average_plr_sim(p, lib, s, 20000, 23);
  CHECK(agrees(sim, average_plr(p, lib, s, Regime::general)));
  const CachingScheme all(6, 6, {{{0, 1, 2, 3, 4, 5}, 1.0}});
  CHECK(average_plr_sim(p, lib, all, 500, 1).losses == 0);
}

}  // TEST_SUITE
