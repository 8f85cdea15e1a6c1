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

#include "cic/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "cic/error.hpp"
#include "cic/rng.hpp"

namespace cic {

namespace {

constexpr unsigned kMaxRedraws = 1000;
constexpr std::uint32_t kSelectionTag = 0xFFFF0000u;

struct Interferer {
  double d2;
  double mark;
  double fading;
};

struct Layout {
  double serving_d2 = 0.0;
  double h0 = 0.0;
  unsigned rejections = 0;
  std::vector<Interferer> interferers;
};

void generate_layout(std::uint64_t seed, std::uint64_t trial, double lambda_b, double window,
                     Layout& out) {
  const double step = 1.0 / (std::numbers::pi * lambda_b);
  const double w2 = window * window;
  out.interferers.clear();
  for (unsigned attempt = 0; attempt < kMaxRedraws; ++attempt) {
    RandomStream rs(seed, trial, attempt);
    const double h0 = rs.exponential();
    double d2 = rs.exponential() * step;
    if (d2 > w2) {
      continue;
    }
    out.serving_d2 = d2;
    out.h0 = h0;
    out.rejections = attempt;
    while (true) {
      d2 += rs.exponential() * step;
      if (d2 > w2) {
        break;
      }
      const double mark = rs.uniform();
      const double fading = rs.exponential();
      out.interferers.push_back({d2, mark, fading});
    }
    return;
  }
  fail_numerical("Monte Carlo window stayed empty after repeated redraws; enlarge window_radius");
}

class PathLoss {
 public:
  explicit PathLoss(double beta) : half_beta_(-0.5 * beta), fourth_(beta == 4.0) {}
  double operator()(double d2) const {
    return fourth_ ? 1.0 / (d2 * d2) : std::pow(d2, half_beta_);
  }

 private:
  double half_beta_;
  bool fourth_;
};

struct Evaluator {
  const NetworkParams& params;
  double t_bar;
  PathLoss gain;
  std::span<const double> alpha_cdf;
  const std::vector<bool>* cached = nullptr;

  bool cancellable(double mark, double eta) const {
    if (!cached) {
      return mark < eta;
    }
    const auto it = std::upper_bound(alpha_cdf.begin(), alpha_cdf.end(), mark);
    const auto j = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - alpha_cdf.begin(),
                                 static_cast<std::ptrdiff_t>(alpha_cdf.size()) - 1));
    return (*cached)[j];
  }

  TrialOutcome operator()(const Layout& layout, double r_b, double eta) const {
    TrialOutcome out;
    out.serving_distance = std::sqrt(layout.serving_d2);
    out.base_stations = layout.interferers.size() + 1;
    out.rejections = layout.rejections;
    const double cancel_d2 =
        std::isinf(r_b) ? r_b : std::max(layout.serving_d2, r_b * r_b);
    double interference = 0.0;
    for (const Interferer& bs : layout.interferers) {
      if (cancellable(bs.mark, eta)) {
        ++out.cancellable;
        if (bs.d2 <= cancel_d2) {
          ++out.cancelled;
          continue;
        }
      }
      interference += bs.fading * gain(bs.d2);
    }
    const double signal = params.tx_power * layout.h0 * gain(layout.serving_d2);
    const double denom = params.tx_power * interference + params.noise_power;
    out.sinr = denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
    out.lost = out.sinr < t_bar;
    return out;
  }
};

std::vector<double> cumulative(std::span<const double> w) {
  std::vector<double> cdf(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    cdf[i] = acc;
  }
  return cdf;
}

unsigned resolve_workers(unsigned requested, std::uint64_t trials) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(1, trials)));
}

// Runs body(begin, end, slot) over contiguous trial ranges, one per worker.
template <typename Body>
void parallel_trials(std::uint64_t trials, unsigned workers, Body body) {
  if (workers <= 1) {
    body(std::uint64_t{0}, trials, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t chunk = (trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(trials, w * chunk);
    const std::uint64_t end = std::min(trials, begin + chunk);
    pool.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace

double default_window_radius(double lambda_b) {
  if (!(lambda_b > 0.0)) {
    fail_validation("BS density must be positive");
  }
  return 32.0 / std::sqrt(std::numbers::pi * lambda_b);
}

void TrialConfig::validate() const {
  params.validate();
  if (!std::isfinite(eta_i) || eta_i < 0.0 || eta_i > 1.0) {
    fail_validation("eta_i must lie in [0, 1]");
  }
  if (std::isnan(window_radius) || window_radius < 0.0 || std::isinf(window_radius)) {
    fail_validation("window_radius must be finite and >= 0 (0 selects the default)");
  }
  if (trials < 1) {
    fail_validation("trials must be >= 1");
  }
  if (labels) {
    if (labels->alpha.size() != labels->cached.size() || labels->alpha.empty()) {
      fail_validation("labeled mode needs alpha and cached vectors of equal, nonzero length");
    }
    double s = 0.0;
    for (double a : labels->alpha) {
      if (!(a >= 0.0)) {
        fail_validation("labeled mode alpha entries must be >= 0");
      }
      s += a;
    }
    if (std::fabs(s - 1.0) > 1e-9) {
      fail_validation("labeled mode alpha must sum to 1");
    }
  }
}

double TrialConfig::effective_window() const {
  return window_radius > 0.0 ? window_radius : default_window_radius(params.lambda_b);
}

PlrEstimate make_estimate(std::uint64_t losses, std::uint64_t trials, std::uint64_t rejections) {
  if (losses > trials) {
    fail_validation("loss count exceeds trial count");
  }
  PlrEstimate e;
  e.trials = trials;
  e.losses = losses;
  e.rejections = rejections;
  if (trials > 0) {
    e.mean = static_cast<double>(losses) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  }
  return e;
}

TrialOutcome run_trial(const TrialConfig& cfg, std::uint64_t trial_index) {
  cfg.validate();
  Layout layout;
  generate_layout(cfg.seed, trial_index, cfg.params.lambda_b, cfg.effective_window(), layout);
  std::vector<double> cdf;
  Evaluator eval{cfg.params, sinr_threshold(cfg.params), PathLoss(cfg.params.beta), {}, nullptr};
  if (cfg.labels) {
    cdf = cumulative(cfg.labels->alpha);
    eval.alpha_cdf = cdf;
    eval.cached = &cfg.labels->cached;
  }
  return eval(layout, cfg.params.r_b, cfg.eta_i);
}

PlrEstimate estimate_plr(const TrialConfig& cfg) {
  const double r_b[] = {cfg.params.r_b};
  const double eta[] = {cfg.eta_i};
  return sweep(cfg, r_b, eta).front().estimate;
}

std::vector<SweepPoint> sweep(const TrialConfig& base, std::span<const double> r_b_grid,
                              std::span<const double> eta_grid) {
  base.validate();
  if (r_b_grid.empty() || eta_grid.empty()) {
    fail_validation("sweep grids must be non-empty");
  }
  for (double r : r_b_grid) {
    if (std::isnan(r) || r < 0.0) {
      fail_validation("CSI radius grid entries must be >= 0 (inf allowed)");
    }
  }
  for (double e : eta_grid) {
    if (!std::isfinite(e) || e < 0.0 || e > 1.0) {
      fail_validation("eta grid entries must lie in [0, 1]");
    }
  }
  const std::size_t points = r_b_grid.size() * eta_grid.size();
  const double window = base.effective_window();
  const double t_bar = sinr_threshold(base.params);
  std::vector<double> cdf;
  if (base.labels) {
    cdf = cumulative(base.labels->alpha);
  }
  const unsigned workers = resolve_workers(base.workers, base.trials);
  std::vector<std::vector<std::uint64_t>> losses(workers, std::vector<std::uint64_t>(points));
  std::vector<std::uint64_t> rejections(workers);

  parallel_trials(base.trials, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    Evaluator eval{base.params, t_bar, PathLoss(base.params.beta), cdf,
                   base.labels ? &base.labels->cached : nullptr};
    Layout layout;
    auto& mine = losses[w];
    for (std::uint64_t t = begin; t < end; ++t) {
      generate_layout(base.seed, t, base.params.lambda_b, window, layout);
      rejections[w] += layout.rejections;
      std::size_t k = 0;
      for (double r : r_b_grid) {
        for (double e : eta_grid) {
          mine[k++] += eval(layout, r, e).lost ? 1 : 0;
        }
      }
    }
  });

  std::uint64_t total_rejections = 0;
  for (auto r : rejections) {
    total_rejections += r;
  }
  std::vector<SweepPoint> out;
  out.reserve(points);
  std::size_t k = 0;
  for (double r : r_b_grid) {
    for (double e : eta_grid) {
      std::uint64_t sum = 0;
      for (const auto& l : losses) {
        sum += l[k];
      }
      out.push_back({r, e, make_estimate(sum, base.trials, total_rejections)});
      ++k;
    }
  }
  return out;
}

PlrEstimate average_plr_sim(const NetworkParams& params, const PacketLibrary& lib,
                            const CachingScheme& scheme, std::uint64_t trials,
                            std::uint64_t seed, double window_radius, unsigned workers) {
  params.validate();
  if (trials < 1) {
    fail_validation("trials must be >= 1");
  }
  const DerivedLoad load = derive_load(params, lib, scheme);
  if (load.no_downlink_traffic) {
    return make_estimate(0, trials);
  }
  std::vector<double> densities;
  for (const CacheRow& row : scheme.all_rows()) {
    densities.push_back(row.density);
  }
  const std::vector<double> subset_cdf = cumulative(densities);
  const std::vector<double> packet_cdf = cumulative(lib.probs());
  auto pick = [](const std::vector<double>& cdf, double u) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
  };

  TrialConfig cfg;
  cfg.params = params;
  cfg.seed = seed;
  cfg.window_radius = window_radius;
  cfg.trials = trials;
  cfg.validate();
  const double window = cfg.effective_window();
  const unsigned nworkers = resolve_workers(workers, trials);
  std::vector<std::uint64_t> losses(nworkers), rejections(nworkers);

  parallel_trials(trials, nworkers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    Evaluator eval{params, load.t_bar, PathLoss(params.beta), {}, nullptr};
    Layout layout;
    for (std::uint64_t t = begin; t < end; ++t) {
      RandomStream select(seed, t, kSelectionTag);
      const std::size_t i = pick(subset_cdf, select.uniform());
      const std::size_t j = pick(packet_cdf, select.uniform());
      if (scheme.caches(i, j)) {
        continue;
      }
      generate_layout(seed, t, params.lambda_b, window, layout);
      rejections[w] += layout.rejections;
      losses[w] += eval(layout, params.r_b, load.eta[i]).lost ? 1 : 0;
    }
  });
  std::uint64_t l = 0, r = 0;
  for (unsigned w = 0; w < nworkers; ++w) {
    l += losses[w];
    r += rejections[w];
  }
  return make_estimate(l, trials, r);
}

std::vector<double> serving_distances(const TrialConfig& cfg, std::uint64_t count) {
  cfg.validate();
  std::vector<double> out;
  out.reserve(count);
  Layout layout;
  const double window = cfg.effective_window();
  for (std::uint64_t t = 0; t < count; ++t) {
    generate_layout(cfg.seed, t, cfg.params.lambda_b, window, layout);
    out.push_back(std::sqrt(layout.serving_d2));
  }
  return out;
}

}  // namespace cic
