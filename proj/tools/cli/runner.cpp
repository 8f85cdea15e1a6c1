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

#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "api.hpp"

namespace cli {

namespace {

Library make_library(const ExperimentSpec& spec) {
  cic_library* lib = nullptr;
  if (!spec.popularity_file.empty()) {
    const auto probs = read_popularity(spec.popularity_file);
    if (probs.empty()) throw CliError(Category::config, "popularity file holds no values");
    check(cic_library_from_probs(probs.data(), probs.size(), &lib), "popularity file");
  } else {
    check(cic_library_zipf(spec.library_size, spec.zipf_gamma, &lib), "Zipf library");
  }
  return Library(lib);
}

double threshold(const cic_network_params& p) {
  double t = 0.0;
  check(cic_sinr_threshold(&p, &t), "SINR threshold");
  return t;
}

// Evaluates f(i) for i < n on up to `workers` threads; results land by index
// so the table order never depends on scheduling.
template <class F>
std::vector<double> parallel_map(std::size_t n, unsigned workers, F f) {
  std::vector<double> out(n);
  std::vector<std::string> errors(n);
  std::vector<Category> cats(n, Category::internal);
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  auto body = [&](unsigned k) {
    for (std::size_t i = k; i < n; i += w) {
      try {
        out[i] = f(i);
      } catch (const CliError& e) {
        errors[i] = e.what();
        cats[i] = e.category();
      }
    }
  };
  if (w == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < w; ++k) pool.emplace_back(body, k);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) throw CliError(cats[i], errors[i]);
  }
  return out;
}

struct GridPoint {
  double r_b;
  double eta;
};

std::vector<GridPoint> grid(const ExperimentSpec& spec) {
  std::vector<GridPoint> g;
  for (double r : spec.r_b_grid) {
    for (double e : spec.eta_grid) g.push_back({r, e});
  }
  return g;
}

std::vector<double> analytic_values(const ExperimentSpec& spec) {
  const auto g = grid(spec);
  return parallel_map(g.size(), spec.workers, [&](std::size_t i) {
    cic_network_params p = spec.params;
    p.r_b_m = g[i].r_b;
    double v = 0.0;
    check(cic_plr_uncached(&p, g[i].eta, &v), "analytic PLR");
    return v;
  });
}

std::vector<cic_plr_estimate> mc_values(const ExperimentSpec& spec, const char* label) {
  cic_mc_config cfg{};
  cfg.params = spec.params;
  cfg.params.r_b_m = 0.0;
  cfg.eta = 0.0;
  cfg.window_radius_m = spec.window_radius_m;
  cfg.trials = spec.trials;
  cfg.seed = cic_split_seed(spec.seed, label);
  cfg.workers = spec.workers;
  std::vector<cic_plr_estimate> out(spec.r_b_grid.size() * spec.eta_grid.size());
  check(cic_mc_sweep(&cfg, spec.r_b_grid.data(), spec.r_b_grid.size(), spec.eta_grid.data(),
                     spec.eta_grid.size(), out.data()),
        "Monte Carlo sweep");
  return out;
}

std::string fmt(double v) { return format_number(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

std::string describe_params(const ExperimentSpec& spec) {
  const auto& p = spec.params;
  std::ostringstream os;
  os << "lambda_b=" << fmt(p.lambda_b) << "/m2 P=" << fmt(p.tx_power_w) << "W noise="
     << fmt(p.noise_power_w) << "W beta=" << fmt(p.beta) << " B=" << fmt(p.bandwidth_mhz)
     << "MHz tau=" << fmt(p.slot_s) << "s T=" << fmt(p.packet_size_mb)
     << "Mb threshold=" << fmt(threshold(p));
  return os.str();
}

std::string csv_name(const ExperimentSpec& spec) { return std::string(kind_name(spec.kind)) + ".csv"; }

std::string joined_packets(const std::vector<std::uint32_t>& packets) {
  std::string s;
  for (std::size_t k = 0; k < packets.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(packets[k] + 1);
  }
  return s;
}

std::vector<std::uint32_t> split_packets(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const double v = parse_number(tok);
    if (!(v >= 1.0) || v != std::floor(v) || v > 4e9) {
      throw CliError(Category::config, "packet index '" + tok + "' is not a positive integer");
    }
    out.push_back(static_cast<std::uint32_t>(v) - 1);
  }
  return out;
}

Scheme scheme_from_table(const Table& t, std::size_t n_packets) {
  if (t.rows.empty()) throw CliError(Category::config, "scheme file has no rows");
  const std::size_t pc = t.column("packet_indices");
  std::vector<double> densities;
  std::vector<std::uint32_t> packets;
  std::size_t m = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto row = t.rows[r][pc].empty() ? std::vector<std::uint32_t>{} : split_packets(t.rows[r][pc]);
    if (r == 0) m = row.size();
    if (row.size() != m) throw CliError(Category::config, "scheme rows cache different numbers of packets");
    densities.push_back(t.number(r, "density"));
    packets.insert(packets.end(), row.begin(), row.end());
  }
  cic_scheme* s = nullptr;
  check(cic_scheme_create(n_packets, m, densities.size(), densities.data(), packets.data(), &s),
        "scheme file");
  return Scheme(s);
}

// Validated copy with sorted, de-duplicated grids, so row order is a function
// of the grid contents only.
ExperimentSpec prepared(const ExperimentSpec& in) {
  in.validate();
  ExperimentSpec s = in;
  for (auto* g : {&s.r_b_grid, &s.eta_grid}) {
    std::sort(g->begin(), g->end());
    g->erase(std::unique(g->begin(), g->end()), g->end());
  }
  return s;
}

}  // namespace

Table read_scheme_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(Category::io, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

RunOutput run_analytic(const ExperimentSpec& input) {
  const ExperimentSpec spec = prepared(input);
  RunOutput out;
  const auto g = grid(spec);
  const auto plr = analytic_values(spec);
  double base = 0.0;
  cic_network_params p0 = spec.params;
  p0.r_b_m = 0.0;
  out.table.header = {"r_b", "eta", "plr_analytic", "plr_gain"};
  for (std::size_t i = 0; i < g.size(); ++i) {
    check(cic_plr_uncached(&p0, g[i].eta, &base), "no-CSI PLR");
    out.table.rows.push_back({fmt(g[i].r_b), fmt(g[i].eta), fmt(plr[i]), fmt(std::max(0.0, base - plr[i]))});
  }
  out.artifacts.push_back({csv_name(spec), write_csv(out.table)});
  std::ostringstream os;
  os << "analytic sweep: " << g.size() << " points; " << describe_params(spec) << "\n";
  if (!spec.scheme_file.empty()) {
    const Library lib = make_library(spec);
    const Scheme scheme = scheme_from_table(read_scheme_table(spec.scheme_file), cic_library_size(lib.get()));
    Table avg;
    avg.header = {"r_b", "plr_average"};
    for (double r : spec.r_b_grid) {
      cic_network_params p = spec.params;
      p.r_b_m = r;
      double v = 0.0;
      check(cic_average_plr(&p, lib.get(), scheme.get(), CIC_REGIME_GENERAL, &v), "network average PLR");
      avg.rows.push_back({fmt(r), fmt(v)});
    }
    double full = 0.0;
    check(cic_average_plr(&spec.params, lib.get(), scheme.get(), CIC_REGIME_FULL_CANCEL, &full),
          "full-cancellation average");
    os << "network average over " << cic_scheme_rows(scheme.get()) << " subsets; full cancellation "
       << fmt(full) << "\n";
    out.artifacts.push_back({"analytic_average.csv", write_csv(avg)});
  }
  out.summary = os.str();
  return out;
}

RunOutput run_simulate(const ExperimentSpec& input) {
  const ExperimentSpec spec = prepared(input);
  RunOutput out;
  const auto g = grid(spec);
  const auto est = mc_values(spec, "simulate");
  out.table.header = {"r_b", "eta", "plr_mc", "std_err", "trials", "losses"};
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.table.rows.push_back({fmt(g[i].r_b), fmt(g[i].eta), fmt(est[i].mean), fmt(est[i].std_error),
                              fmt(est[i].trials), fmt(est[i].losses)});
  }
  out.artifacts.push_back({csv_name(spec), write_csv(out.table)});
  std::ostringstream os;
  os << "Monte Carlo sweep: " << g.size() << " points x " << spec.trials << " trials, seed "
     << spec.seed << "; " << describe_params(spec) << "\n";
  out.summary = os.str();
  return out;
}

RunOutput run_validate(const ExperimentSpec& input) {
  const ExperimentSpec spec = prepared(input);
  RunOutput out;
  const auto g = grid(spec);
  const auto plr = analytic_values(spec);
  const auto est = mc_values(spec, "validate");
  out.table.header = {"r_b", "eta", "plr_analytic", "plr_mc", "std_err", "abs_diff", "tolerance",
                      "wide_ci", "pass"};
  std::ostringstream os, bad;
  std::size_t failures = 0, wide = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double diff = std::fabs(plr[i] - est[i].mean);
    const double sig = spec.sigma_rule * est[i].std_error;
    const double tol = std::max(sig, spec.tolerance_floor);
    const bool ok = diff <= tol;
    const bool is_wide = sig > spec.tolerance_floor;
    wide += is_wide;
    out.table.rows.push_back({fmt(g[i].r_b), fmt(g[i].eta), fmt(plr[i]), fmt(est[i].mean),
                              fmt(est[i].std_error), fmt(diff), fmt(tol), is_wide ? "1" : "0",
                              ok ? "1" : "0"});
    if (!ok) {
      ++failures;
      bad << "  r_b=" << fmt(g[i].r_b) << " eta=" << fmt(g[i].eta) << ": analytic " << fmt(plr[i])
          << ", simulated " << fmt(est[i].mean) << " +/- " << fmt(est[i].std_error) << ", |diff| "
          << fmt(diff) << " > " << fmt(tol) << "\n";
    }
  }
  out.artifacts.push_back({csv_name(spec), write_csv(out.table)});
  os << "validation: " << g.size() - failures << "/" << g.size() << " points within max("
     << fmt(spec.sigma_rule) << " sigma, " << fmt(spec.tolerance_floor) << ") at " << spec.trials
     << " trials\n";
  if (wide) {
    os << "note: " << wide << " point(s) have " << fmt(spec.sigma_rule)
       << "-sigma bands wider than the floor; raise --trials for a sharper check\n";
  }
  out.summary = os.str();
  if (failures) {
    out.failed = true;
    out.failure = "analytic and simulated PLR disagree at " + std::to_string(failures) + " point(s):\n" + bad.str();
  }
  return out;
}

RunOutput run_fig2(const ExperimentSpec& input) {
  const ExperimentSpec spec = prepared(input);
  RunOutput out;
  const auto g = grid(spec);
  const auto plr = analytic_values(spec);
  const auto est = mc_values(spec, "fig2");
  out.table.header = {"r_b", "eta", "plr_analytic", "plr_mc", "std_err"};
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.table.rows.push_back(
        {fmt(g[i].r_b), fmt(g[i].eta), fmt(plr[i]), fmt(est[i].mean), fmt(est[i].std_error)});
  }
  out.artifacts.push_back({csv_name(spec), write_csv(out.table)});
  std::ostringstream os;
  os << "PLR versus CSI radius: " << spec.r_b_grid.size() << " radii x " << spec.eta_grid.size()
     << " cancellable fractions, " << spec.trials << " trials per point\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    char line[160];
    std::snprintf(line, sizeof line, "  r_b=%-6s eta=%-5s analytic %.6f  simulated %.6f +/- %.6f\n",
                  fmt(g[i].r_b).c_str(), fmt(g[i].eta).c_str(), plr[i], est[i].mean, est[i].std_error);
    os << line;
  }
  out.summary = os.str();
  return out;
}

RunOutput run_optimize(const ExperimentSpec& spec) {
  spec.validate();
  RunOutput out;
  const Library lib = make_library(spec);
  const std::size_t n = cic_library_size(lib.get());
  if (spec.cache_size > n) throw CliError(Category::config, "cache_size must not exceed the library size");
  const double t_bar = threshold(spec.params);
  cic_optimize_options opts{};
  opts.column_generation = spec.column_generation ? 1 : 0;
  cic_optimization* raw = nullptr;
  check(cic_optimize(lib.get(), spec.cache_size, t_bar, spec.params.beta, &opts, &raw), "optimizer");
  const Optimization opt(raw);
  if (cic_optimization_status(opt.get()) != CIC_LP_OPTIMAL) {
    throw CliError(Category::numerical, "optimizer did not reach an optimum");
  }
  const std::size_t support = cic_optimization_support(opt.get());
  out.table.header = {"subset_rank", "packet_indices", "density"};
  std::vector<std::uint32_t> packets(spec.cache_size);
  for (std::size_t r = 0; r < support; ++r) {
    double d = 0.0;
    check(cic_optimization_row(opt.get(), r, &d, packets.data()), "optimizer row");
    out.table.rows.push_back({std::to_string(r + 1), joined_packets(packets), fmt(d)});
  }
  char* json = nullptr;
  check(cic_optimization_to_json(opt.get(), &json), "result document");
  const std::string doc(json);
  cic_string_free(json);
  const std::string stem = kind_name(spec.kind);
  out.artifacts.push_back({stem + ".csv", write_csv(out.table)});
  out.artifacts.push_back({stem + ".json", doc});

  double uniform = 0.0, mixture = 0.0;
  check(cic_plr_uniform(n, spec.cache_size, t_bar, spec.params.beta, &uniform), "uniform PLR");
  check(cic_uniform_density_objective(lib.get(), spec.cache_size, t_bar, spec.params.beta, &mixture),
        "uniform-density objective");
  cic_solver_diagnostics diag{};
  check(cic_optimization_diagnostics(opt.get(), &diag), "diagnostics");
  std::ostringstream os;
  os.precision(12);
  os << "caching optimization: N=" << n << " M=" << spec.cache_size << " ("
     << (spec.column_generation ? "column generation" : "full enumeration") << ")\n"
     << "  objective            " << cic_optimization_objective(opt.get()) << "\n"
     << "  uniform-popularity   " << uniform << "\n"
     << "  uniform density      " << mixture << "\n"
     << "  support size         " << support << "\n"
     << "  popular+unpopular    " << cic_optimization_popular_unpopular_rows(opt.get()) << " rows\n"
     << "  simplex iterations   " << diag.iterations << " (phase 1: " << diag.phase1_iterations
     << "), columns " << diag.columns << ", max residual " << diag.max_residual << "\n";
  out.summary = os.str();
  return out;
}

Plot fig2_plot(const Table& t) {
  Plot plot;
  plot.title = "Packet loss rate versus CSI radius";
  plot.x_label = "CSI radius r_b (m)";
  plot.y_label = "packet loss rate";
  std::map<double, std::pair<Series, Series>> by_eta;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double eta = t.number(r, "eta");
    auto& [a, m] = by_eta[eta];
    if (a.name.empty()) {
      a.name = "analytic eta=" + format_number(eta);
      m.name = "simulated eta=" + format_number(eta);
      m.line = false;
    }
    const double rb = t.number(r, "r_b");
    a.x.push_back(rb);
    a.y.push_back(t.number(r, "plr_analytic"));
    m.x.push_back(rb);
    m.y.push_back(t.number(r, "plr_mc"));
    m.err.push_back(t.number(r, "std_err"));
  }
  for (auto& [eta, s] : by_eta) {
    plot.series.push_back(std::move(s.first));
    plot.series.push_back(std::move(s.second));
  }
  return plot;
}

Plot fig3_plot(const Table& t) {
  Plot plot;
  plot.title = "Optimal caching scheme";
  plot.x_label = "subset rank";
  plot.y_label = "cached packet index";
  Series s;
  s.name = "cached packets";
  s.line = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double rank = t.number(r, "subset_rank");
    for (auto j : split_packets(t.rows[r][t.column("packet_indices")])) {
      s.x.push_back(rank);
      s.y.push_back(static_cast<double>(j) + 1.0);
    }
  }
  plot.series.push_back(std::move(s));
  return plot;
}

RunOutput run(const ExperimentSpec& spec, bool svg) {
  RunOutput out;
  switch (spec.kind) {
    case Kind::analytic: out = run_analytic(spec); break;
    case Kind::simulate: out = run_simulate(spec); break;
    case Kind::validate: out = run_validate(spec); break;
    case Kind::fig2: out = run_fig2(spec); break;
    case Kind::optimize:
    case Kind::fig3: out = run_optimize(spec); break;
  }
  if (svg) {
    Plot plot;
    const std::string stem = kind_name(spec.kind);
    if (spec.kind == Kind::optimize || spec.kind == Kind::fig3) {
      plot = fig3_plot(out.table);
    } else if (spec.kind == Kind::fig2 || spec.kind == Kind::validate) {
      plot = fig2_plot(out.table);
    } else {
      plot.title = spec.kind == Kind::analytic ? "Analytic packet loss rate" : "Simulated packet loss rate";
      plot.x_label = "CSI radius r_b (m)";
      plot.y_label = "packet loss rate";
      const char* col = spec.kind == Kind::analytic ? "plr_analytic" : "plr_mc";
      std::map<double, Series> by_eta;
      for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
        const double eta = out.table.number(r, "eta");
        Series& s = by_eta[eta];
        s.name = "eta=" + format_number(eta);
        s.x.push_back(out.table.number(r, "r_b"));
        s.y.push_back(out.table.number(r, col));
        if (spec.kind == Kind::simulate) s.err.push_back(out.table.number(r, "std_err"));
      }
      for (auto& [eta, s] : by_eta) plot.series.push_back(std::move(s));
    }
    out.artifacts.push_back({stem + ".svg", render_svg(plot)});
  }
  return out;
}

void write_artifacts(const RunOutput& out, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw CliError(Category::io, "cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& a : out.artifacts) {
    const auto path = dir / a.file_name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << a.contents;
    f.close();
    if (!f) throw CliError(Category::io, "cannot write '" + path.string() + "'");
  }
}

}  // namespace cli
