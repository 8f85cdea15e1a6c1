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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. `--criterion k` runs a single one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cic/analytics.hpp"
#include "cic/montecarlo.hpp"
#include "cic/optimizer.hpp"
#include "cic/rng.hpp"
#include "cli/config.hpp"
#include "cli/runner.hpp"
#include "support/schemes.hpp"
#include "support/stats.hpp"
#include "support/vertex_oracle.hpp"

using namespace cic;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string f(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

NetworkParams at(double r_b) {
  NetworkParams p = reference_network();
  p.r_b = r_b;
  return p;
}

const double kNoCsi = M_PI / (M_PI + 4.0);

Verdict closed_form_anchor() {
  Verdict v;
  const NetworkParams p = reference_network();
  const double t = sinr_threshold(p);
  v.require(std::fabs(t - 1.0) < 1e-15, "threshold " + f(t, 17));
  const double closed = plr_no_csi(p, true);
  const double quad = plr_no_csi(p, false);
  v.require(std::fabs(closed - kNoCsi) < 1e-8, "closed form " + f(closed, 12));
  v.require(std::fabs(quad - kNoCsi) < 1e-8, "quadrature " + f(quad, 12));
  return v;
}

Verdict uniform_anchor() {
  Verdict v;
  const double u = plr_uniform(100, 3, 1.0, 4.0);
  v.require(std::fabs(u - 0.41944) <= 1e-4, "plr_uniform(100,3) = " + f(u, 10));
  // cyclic scheme: every packet cached by 3/100 of users
  std::vector<CacheRow> rows;
  for (std::uint32_t s = 0; s < 100; ++s) {
    Subset sub = {s, (s + 1) % 100, (s + 2) % 100};
    std::sort(sub.begin(), sub.end());
    rows.push_back({sub, 0.01});
  }
  const double avg =
      average_plr(reference_network(), zipf_popularity(100, 0.0), CachingScheme(100, 3, rows),
                  Regime::full_cancel);
  v.require(std::fabs(avg - u) < 1e-10, "network average " + f(avg, 12));
  return v;
}

Verdict theorem_vs_simulation() {
  Verdict v;
  const std::vector<double> rbs = {0.0, 60.0, 120.0, 180.0};
  const std::vector<double> etas = {0.05, 0.15};
  TrialConfig cfg;
  cfg.params = reference_network();
  cfg.trials = 200000;
  cfg.seed = split_seed(20260101, "acceptance/theorem");
  const auto pts = sweep(cfg, rbs, etas);
  double worst = 0.0;
  for (const auto& pt : pts) {
    const double a = plr_uncached(at(pt.r_b), pt.eta);
    const double d = std::fabs(a - pt.estimate.mean);
    const double tol = std::max(3.0 * pt.estimate.std_error, 0.005);
    worst = std::max(worst, d / tol);
    if (d > tol) {
      v.require(false, "r_b=" + f(pt.r_b) + " eta=" + f(pt.eta) + " analytic " + f(a) +
                           " simulated " + f(pt.estimate.mean));
    }
  }
  v.require(true, std::to_string(pts.size()) + " points x 2e5 trials, worst |diff|/tol " + f(worst, 3));
  return v;
}

Verdict limits() {
  Verdict v;
  for (double eta : {0.05, 0.15}) {
    const double small = plr_partial_csi(at(1e-3), eta);
    v.require(std::fabs(small - kNoCsi) < 1e-6, "eta " + f(eta) + " r_b=1e-3 gap " + f(std::fabs(small - kNoCsi), 3));
    double r = 250.0, prev = plr_partial_csi(at(r), eta);
    for (;;) {
      r *= 2.0;
      const double cur = plr_partial_csi(at(r), eta);
      const bool settled = std::fabs(cur - prev) < 1e-5;
      prev = cur;
      if (settled || r > 1e7) break;
    }
    const double full = plr_full_cancellation(eta, 1.0, 4.0);
    v.require(std::fabs(prev - full) < 1e-4,
              "eta " + f(eta) + " settles at r_b=" + f(r) + " gap " + f(std::fabs(prev - full), 3));
  }
  return v;
}

Verdict monotonicity() {
  Verdict v;
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(15.0 * k);
  std::size_t bad_r = 0, bad_eta = 0;
  double prev05 = kNoCsi, prev15 = kNoCsi;
  for (double r : grid) {
    const double a = plr_partial_csi(at(r), 0.05);
    const double b = plr_partial_csi(at(r), 0.15);
    bad_r += !(a < prev05 - 1e-10);
    bad_r += !(b < prev15 - 1e-10);
    bad_eta += !(b < a - 1e-10);
    prev05 = a;
    prev15 = b;
  }
  v.require(bad_r == 0, "decreasing in r_b on 20 points (" + std::to_string(bad_r) + " violations)");
  v.require(bad_eta == 0, "eta 0.15 below eta 0.05 (" + std::to_string(bad_eta) + " violations)");
  return v;
}

Verdict optimizer_oracle() {
  Verdict v;
  std::size_t instances = 0;
  double worst_gap = 0.0, worst_res = 0.0;
  // Every non-trivial (N, M) with at most 30 candidate subsets. The feasible
  // set does not depend on popularity, so vertices are enumerated once per
  // (N, M) and priced for each Zipf exponent.
  for (std::size_t n = 2; n <= 30; ++n) {
    for (std::size_t m = 1; m < n; ++m) {
      if (binomial(n, m) > 30) continue;
      const auto subsets = enumerate_subsets(n, m);
      cic::testing::Matrix a(n + 1, std::vector<double>(subsets.size(), 0.0));
      for (std::size_t k = 0; k < subsets.size(); ++k) {
        a[0][k] = 1.0;
        for (auto j : subsets[k]) a[1 + j][k] = 1.0;
      }
      std::vector<double> b(n + 1, static_cast<double>(m) / static_cast<double>(n));
      b[0] = 1.0;
      const auto vertices = cic::testing::feasible_vertices(a, b);
      for (double g : {0.0, 0.8, 1.2}) {
        const auto lib = zipf_popularity(n, g);
        const auto lp = build_lp(lib, subsets, m, 1.0, 4.0);
        const auto oracle = cic::testing::best_vertex(vertices, lp.costs);
        const auto r = optimize_caching(lib, m, 1.0, 4.0);
        ++instances;
        if (r.status != LpStatus::optimal || vertices.empty()) {
          v.require(false, "N=" + std::to_string(n) + " M=" + std::to_string(m) + " not solved");
          continue;
        }
        worst_gap = std::max(worst_gap, std::fabs(r.objective - oracle.objective));
        // constraints on the returned rows, all N+1 of them
        double total = 0.0;
        std::vector<double> cover(n, 0.0);
        for (const auto& row : r.rows) {
          total += row.density;
          for (auto j : row.packets) cover[j] += row.density;
        }
        worst_res = std::max(worst_res, std::fabs(total - 1.0));
        for (double c : cover) worst_res = std::max(worst_res, std::fabs(c - lp.coverage()));
      }
    }
  }
  v.require(worst_gap <= 1e-9, std::to_string(instances) + " instances, worst objective gap " + f(worst_gap, 3));
  v.require(worst_res <= 1e-9, "worst constraint residual " + f(worst_res, 3));
  return v;
}

Verdict fig3_reproduction() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = cli::preset("fig3");
  const auto out = cli::run_optimize(spec);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(secs <= 300.0, "preset fig3 in " + f(secs, 3) + " s");

  const auto lib = zipf_popularity(100, 0.8);
  const auto r = optimize_caching(lib, 3, 1.0, 4.0);
  v.require(r.status == LpStatus::optimal, std::string("status ") + to_string(r.status));
  v.require(out.table.rows.size() == r.support_size, "CLI and library agree on support");
  const double uniform = plr_uniform(100, 3, 1.0, 4.0);
  v.require(r.objective <= uniform, "objective " + f(r.objective, 12) + " <= plr_uniform " + f(uniform, 12));
  v.require(r.support_size <= 101, "support " + std::to_string(r.support_size) + " <= 101");
  if (r.status == LpStatus::optimal) {
    const double avg = average_plr(reference_network(), lib, r.scheme(), Regime::full_cancel);
    v.require(std::fabs(avg - r.objective) < 1e-9, "re-evaluated gap " + f(std::fabs(avg - r.objective), 3));
  }
  const auto small = optimize_caching(zipf_popularity(10, 0.8), 2, 1.0, 4.0);
  bool first_with_last = false;
  for (const auto& row : small.rows) first_with_last = first_with_last || row.packets == Subset{0, 9};
  v.require(popular_unpopular_rows(small) >= 1 && first_with_last,
            "N=10 M=2 pairs popular with unpopular packets (" +
                std::to_string(popular_unpopular_rows(small)) + " rows)");
  return v;
}

Verdict serving_distance_law() {
  Verdict v;
  TrialConfig cfg;
  cfg.params = reference_network();
  cfg.seed = split_seed(20260101, "acceptance/serving");
  const auto r = serving_distances(cfg, 100000);
  const double lam = cfg.params.lambda_b;
  const double d = cic::testing::ks_statistic(r, [lam](double x) { return -std::expm1(-M_PI * lam * x * x); });
  const double p = cic::testing::ks_pvalue(d, r.size());
  v.require(p > 0.01, "KS D=" + f(d, 4) + " p=" + f(p, 3) + " over 1e5 trials");
  return v;
}

Verdict uniform_identity() {
  Verdict v;
  std::mt19937_64 rng(91);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 3 + rng() % 20;
    const std::size_t m = 1 + rng() % (n - 1);
    const auto s = cic::testing::random_uniform_coverage(n, m, 1 + static_cast<int>(rng() % 5), rng);
    const double avg = average_plr(reference_network(), zipf_popularity(n, 0.0), s, Regime::full_cancel);
    worst = std::max(worst, std::fabs(avg - plr_uniform(n, m, 1.0, 4.0)));
  }
  v.require(worst < 1e-10, "50 random schemes, worst gap " + f(worst, 3));
  return v;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"closed-form no-CSI anchor", 1.0, closed_form_anchor},
      {"uniform-popularity anchor", 1.0, uniform_anchor},
      {"partial-CSI analysis vs simulation", 180.0, theorem_vs_simulation},
      {"limit consistency in r_b", 10.0, limits},
      {"monotonicity in r_b and eta", 10.0, monotonicity},
      {"optimizer vs vertex enumeration", 10.0, optimizer_oracle},
      {"fig3 reproduction", 600.0, fig3_reproduction},
      {"serving-distance law", 60.0, serving_distance_law},
      {"uniform-popularity identity", 5.0, uniform_identity},
  };
  std::size_t only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::strtoul(argv[++i], nullptr, 10);
      if (only < 1 || only > all.size()) {
        std::fprintf(stderr, "criterion must be 1..%zu\n", all.size());
        return 2;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
      return 2;
    }
  }
  bool ok = true;
  for (std::size_t k = 1; k <= all.size(); ++k) {
    if (only && k != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = all[k - 1].run();
    } catch (const std::exception& e) {
      v.require(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > all[k - 1].budget_s) v.require(false, "runtime over " + f(all[k - 1].budget_s) + " s");
    ok = ok && v.pass;
    std::printf("%s criterion %zu (%s): %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", k, all[k - 1].name,
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
