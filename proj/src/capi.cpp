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

#include "cic/cic.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <new>
#include <string>

#include "cic/analytics.hpp"
#include "cic/error.hpp"
#include "cic/model.hpp"
#include "cic/montecarlo.hpp"
#include "cic/optimizer.hpp"
#include "cic/rng.hpp"
#include "cic/specfun.hpp"

struct cic_library {
  cic::PacketLibrary lib;
};

struct cic_scheme {
  cic::CachingScheme scheme;
};

struct cic_optimization {
  cic::OptimizationResult result;
};

namespace {

thread_local std::string g_last_error;

cic_status record(cic_status status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

template <typename Body>
cic_status guarded(Body body) {
  try {
    body();
    return CIC_OK;
  } catch (const cic::Error& e) {
    switch (e.kind()) {
      case cic::ErrorKind::validation:
        return record(CIC_ERR_INVALID_ARGUMENT, e.what());
      case cic::ErrorKind::numerical:
        return record(CIC_ERR_NUMERICAL, e.what());
      case cic::ErrorKind::divergence:
        return record(CIC_ERR_DIVERGENCE, e.what());
      case cic::ErrorKind::io:
        return record(CIC_ERR_IO, e.what());
    }
    return record(CIC_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return record(CIC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(CIC_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(CIC_ERR_INTERNAL, "unknown error");
  }
}

void require_ptr(const void* p, const char* name) {
  if (!p) {
    cic::fail_validation(std::string(name) + " must not be NULL");
  }
}

cic::NetworkParams to_cpp(const cic_network_params* p) {
  require_ptr(p, "params");
  cic::NetworkParams out;
  out.lambda_b = p->lambda_b;
  out.lambda_u = p->lambda_u;
  out.tx_power = p->tx_power_w;
  out.noise_power = p->noise_power_w;
  out.beta = p->beta;
  out.bandwidth = p->bandwidth_mhz;
  out.slot = p->slot_s;
  out.packet_size = p->packet_size_mb;
  out.r_b = p->r_b_m;
  out.validate();
  return out;
}

cic_network_params to_c(const cic::NetworkParams& p) {
  return {p.lambda_b, p.lambda_u, p.tx_power, p.noise_power, p.beta,
          p.bandwidth, p.slot, p.packet_size, p.r_b};
}

cic::Regime to_cpp(cic_regime r) {
  switch (r) {
    case CIC_REGIME_GENERAL:
      return cic::Regime::general;
    case CIC_REGIME_NO_CSI:
      return cic::Regime::no_csi;
    case CIC_REGIME_FULL_CANCEL:
      return cic::Regime::full_cancel;
  }
  cic::fail_validation("unknown regime");
}

cic::TrialConfig to_cpp(const cic_mc_config* c) {
  require_ptr(c, "config");
  cic::TrialConfig cfg;
  cfg.params = to_cpp(&c->params);
  cfg.eta_i = c->eta;
  cfg.window_radius = c->window_radius_m;
  cfg.trials = c->trials;
  cfg.seed = c->seed;
  cfg.workers = c->workers;
  cfg.validate();
  return cfg;
}

cic_plr_estimate to_c(const cic::PlrEstimate& e) {
  return {e.mean, e.std_error, e.trials, e.losses, e.rejections};
}

void copy_row(const cic::CacheRow& row, double* density, uint32_t* packets) {
  if (density) {
    *density = row.density;
  }
  if (packets) {
    std::copy(row.packets.begin(), row.packets.end(), packets);
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* cic_version(void) { return "1.0.0"; }

const char* cic_last_error(void) { return g_last_error.c_str(); }

const char* cic_status_string(cic_status status) {
  switch (status) {
    case CIC_OK:
      return "ok";
    case CIC_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CIC_ERR_NUMERICAL:
      return "numerical failure";
    case CIC_ERR_DIVERGENCE:
      return "divergence";
    case CIC_ERR_INFEASIBLE:
      return "infeasible";
    case CIC_ERR_IO:
      return "i/o error";
    case CIC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void cic_string_free(char* str) { std::free(str); }

cic_status cic_reference_network(cic_network_params* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = to_c(cic::reference_network());
  });
}

cic_status cic_network_validate(const cic_network_params* params) {
  return guarded([&] { to_cpp(params); });
}

cic_status cic_dbm_to_watts(double dbm, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::dbm_to_watts(dbm);
  });
}

cic_status cic_sinr_threshold(const cic_network_params* params, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::sinr_threshold(to_cpp(params));
  });
}

cic_status cic_library_zipf(size_t n, double gamma, cic_library** out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = new cic_library{cic::zipf_popularity(n, gamma)};
  });
}

cic_status cic_library_from_probs(const double* probs, size_t n, cic_library** out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(probs, "probs");
    *out = new cic_library{cic::PacketLibrary::from_probabilities({probs, probs + n})};
  });
}

size_t cic_library_size(const cic_library* lib) { return lib ? lib->lib.size() : 0; }

cic_status cic_library_probs(const cic_library* lib, double* out, size_t capacity) {
  return guarded([&] {
    require_ptr(lib, "lib");
    require_ptr(out, "out");
    if (capacity < lib->lib.size()) {
      cic::fail_validation("output buffer smaller than the library");
    }
    std::copy(lib->lib.probs().begin(), lib->lib.probs().end(), out);
  });
}

void cic_library_free(cic_library* lib) { delete lib; }

cic_status cic_scheme_create(size_t n_packets, size_t cache_size, size_t rows,
                             const double* densities, const uint32_t* packets,
                             cic_scheme** out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(densities, "densities");
    if (cache_size > 0) {
      require_ptr(packets, "packets");
    }
    std::vector<cic::CacheRow> list(rows);
    for (size_t i = 0; i < rows; ++i) {
      list[i].density = densities[i];
      list[i].packets.assign(packets + i * cache_size, packets + (i + 1) * cache_size);
    }
    *out = new cic_scheme{cic::CachingScheme(n_packets, cache_size, std::move(list))};
  });
}

size_t cic_scheme_rows(const cic_scheme* scheme) { return scheme ? scheme->scheme.rows() : 0; }

size_t cic_scheme_cache_size(const cic_scheme* scheme) {
  return scheme ? scheme->scheme.cache_size() : 0;
}

size_t cic_scheme_packets(const cic_scheme* scheme) {
  return scheme ? scheme->scheme.n_packets() : 0;
}

cic_status cic_scheme_row(const cic_scheme* scheme, size_t row, double* density,
                          uint32_t* packets) {
  return guarded([&] {
    require_ptr(scheme, "scheme");
    if (row >= scheme->scheme.rows()) {
      cic::fail_validation("row index out of range");
    }
    copy_row(scheme->scheme.row(row), density, packets);
  });
}

void cic_scheme_free(cic_scheme* scheme) { delete scheme; }

cic_status cic_derived_load(const cic_library* lib, const cic_scheme* scheme, double* alpha_out,
                            double* eta_out, int* no_traffic) {
  return guarded([&] {
    require_ptr(lib, "lib");
    require_ptr(scheme, "scheme");
    auto alpha = cic::alpha_fractions(lib->lib, scheme->scheme);
    if (no_traffic) {
      *no_traffic = alpha ? 0 : 1;
    }
    if (!alpha) {
      if (alpha_out) {
        std::fill(alpha_out, alpha_out + lib->lib.size(), 0.0);
      }
      if (eta_out) {
        std::fill(eta_out, eta_out + scheme->scheme.rows(), 0.0);
      }
      return;
    }
    if (alpha_out) {
      std::copy(alpha->begin(), alpha->end(), alpha_out);
    }
    if (eta_out) {
      const auto e = cic::eta(scheme->scheme, *alpha);
      std::copy(e.begin(), e.end(), eta_out);
    }
  });
}

cic_status cic_hyp2f1(double a, double b, double c, double x, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::hyp2f1_real(a, b, c, x);
  });
}

cic_status cic_z1(double beta, double t_bar, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::z1({beta, t_bar});
  });
}

cic_status cic_interference_exponent_tail(double beta, double t_bar, double r, double exclusion,
                                          double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::interference_exponent_tail({beta, t_bar}, r, exclusion);
  });
}

cic_status cic_plr_partial_csi(const cic_network_params* params, double eta, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::plr_partial_csi(to_cpp(params), eta);
  });
}

cic_status cic_plr_uncached(const cic_network_params* params, double eta, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::plr_uncached(to_cpp(params), eta);
  });
}

cic_status cic_plr_no_csi(const cic_network_params* params, int interference_limited,
                          double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::plr_no_csi(to_cpp(params), interference_limited != 0);
  });
}

cic_status cic_plr_full_cancellation(double eta, double t_bar, double beta, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::plr_full_cancellation(eta, t_bar, beta);
  });
}

cic_status cic_plr_pair(const cic_network_params* params, const cic_library* lib,
                        const cic_scheme* scheme, size_t subset, size_t packet,
                        cic_regime regime, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(lib, "lib");
    require_ptr(scheme, "scheme");
    const cic::PlrQuery q{to_cpp(params), lib->lib, scheme->scheme, subset, packet};
    *out = cic::plr_pair(q, to_cpp(regime));
  });
}

cic_status cic_average_plr(const cic_network_params* params, const cic_library* lib,
                           const cic_scheme* scheme, cic_regime regime, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(lib, "lib");
    require_ptr(scheme, "scheme");
    *out = cic::average_plr(to_cpp(params), lib->lib, scheme->scheme, to_cpp(regime));
  });
}

cic_status cic_plr_uniform(size_t n, size_t m, double t_bar, double beta, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::plr_uniform(n, m, t_bar, beta);
  });
}

cic_status cic_plr_gain(const cic_network_params* params, double eta, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::plr_gain(to_cpp(params), eta);
  });
}

cic_status cic_mc_default_window(double lambda_b, double* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = cic::default_window_radius(lambda_b);
  });
}

cic_status cic_mc_estimate(const cic_mc_config* config, cic_plr_estimate* out) {
  return guarded([&] {
    require_ptr(out, "out");
    *out = to_c(cic::estimate_plr(to_cpp(config)));
  });
}

cic_status cic_mc_sweep(const cic_mc_config* config, const double* r_b, size_t n_rb,
                        const double* eta, size_t n_eta, cic_plr_estimate* out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(r_b, "r_b");
    require_ptr(eta, "eta");
    const auto points = cic::sweep(to_cpp(config), {r_b, n_rb}, {eta, n_eta});
    for (size_t k = 0; k < points.size(); ++k) {
      out[k] = to_c(points[k].estimate);
    }
  });
}

cic_status cic_mc_average_plr(const cic_network_params* params, const cic_library* lib,
                              const cic_scheme* scheme, uint64_t trials, uint64_t seed,
                              double window_radius_m, unsigned workers, cic_plr_estimate* out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(lib, "lib");
    require_ptr(scheme, "scheme");
    *out = to_c(cic::average_plr_sim(to_cpp(params), lib->lib, scheme->scheme, trials, seed,
                                     window_radius_m, workers));
  });
}

cic_status cic_mc_serving_distances(const cic_mc_config* config, double* out, size_t count) {
  return guarded([&] {
    require_ptr(out, "out");
    const auto d = cic::serving_distances(to_cpp(config), count);
    std::copy(d.begin(), d.end(), out);
  });
}

uint64_t cic_split_seed(uint64_t seed, const char* label) {
  return cic::split_seed(seed, label ? label : "");
}

cic_status cic_optimize(const cic_library* lib, size_t cache_size, double t_bar, double beta,
                        const cic_optimize_options* options, cic_optimization** out) {
  return guarded([&] {
    require_ptr(out, "out");
    require_ptr(lib, "lib");
    const bool cg = options && options->column_generation;
    const std::uint64_t cap =
        options && options->subset_cap ? options->subset_cap : cic::kDefaultSubsetCap;
    auto result = cg ? cic::optimize_by_column_generation(lib->lib, cache_size, t_bar, beta)
                     : cic::optimize_caching(lib->lib, cache_size, t_bar, beta, {}, cap);
    *out = new cic_optimization{std::move(result)};
  });
}

cic_lp_status cic_optimization_status(const cic_optimization* opt) {
  if (!opt) {
    return CIC_LP_NUMERICAL_FAILURE;
  }
  switch (opt->result.status) {
    case cic::LpStatus::optimal:
      return CIC_LP_OPTIMAL;
    case cic::LpStatus::infeasible:
      return CIC_LP_INFEASIBLE;
    case cic::LpStatus::numerical_failure:
      return CIC_LP_NUMERICAL_FAILURE;
  }
  return CIC_LP_NUMERICAL_FAILURE;
}

double cic_optimization_objective(const cic_optimization* opt) {
  return opt ? opt->result.objective : 0.0;
}

size_t cic_optimization_support(const cic_optimization* opt) {
  return opt ? opt->result.rows.size() : 0;
}

cic_status cic_optimization_row(const cic_optimization* opt, size_t row, double* density,
                                uint32_t* packets) {
  return guarded([&] {
    require_ptr(opt, "opt");
    if (row >= opt->result.rows.size()) {
      cic::fail_validation("row index out of range");
    }
    copy_row(opt->result.rows[row], density, packets);
  });
}

cic_status cic_optimization_diagnostics(const cic_optimization* opt,
                                        cic_solver_diagnostics* out) {
  return guarded([&] {
    require_ptr(opt, "opt");
    require_ptr(out, "out");
    const auto& d = opt->result.diagnostics;
    *out = {d.iterations, d.phase1_iterations, d.refactorizations, d.basis_size,
            d.columns,    d.pricing_rounds,    d.max_residual};
  });
}

size_t cic_optimization_popular_unpopular_rows(const cic_optimization* opt) {
  return opt ? cic::popular_unpopular_rows(opt->result) : 0;
}

cic_status cic_optimization_scheme(const cic_optimization* opt, cic_scheme** out) {
  return guarded([&] {
    require_ptr(opt, "opt");
    require_ptr(out, "out");
    *out = new cic_scheme{opt->result.scheme()};
  });
}

cic_status cic_optimization_to_json(const cic_optimization* opt, char** out) {
  return guarded([&] {
    require_ptr(opt, "opt");
    require_ptr(out, "out");
    const auto& r = opt->result;
    nlohmann::ordered_json doc;
    doc["status"] = cic::to_string(r.status);
    doc["n_packets"] = r.n_packets;
    doc["cache_size"] = r.cache_size;
    doc["objective"] = r.objective;
    doc["support_size"] = r.support_size;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      std::vector<std::uint32_t> one_based(row.packets);
      for (auto& j : one_based) {
        ++j;
      }
      rows.push_back({{"packets", one_based}, {"density", row.density}});
    }
    doc["rows"] = std::move(rows);
    const auto& d = r.diagnostics;
    doc["diagnostics"] = {{"iterations", d.iterations},
                          {"phase1_iterations", d.phase1_iterations},
                          {"refactorizations", d.refactorizations},
                          {"basis_size", d.basis_size},
                          {"columns", d.columns},
                          {"pricing_rounds", d.pricing_rounds},
                          {"max_residual", d.max_residual}};
    if (!r.message.empty()) {
      doc["message"] = r.message;
    }
    *out = dup_string(doc.dump(2));
  });
}

void cic_optimization_free(cic_optimization* opt) { delete opt; }

cic_status cic_uniform_density_objective(const cic_library* lib, size_t cache_size,
                                         double t_bar, double beta, double* out) {
  return guarded([&] {
    require_ptr(lib, "lib");
    require_ptr(out, "out");
    *out = cic::uniform_density_objective(lib->lib, cache_size, t_bar, beta);
  });
}

}  // extern "C"
