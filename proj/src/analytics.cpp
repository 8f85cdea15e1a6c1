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

#include "cic/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cic/error.hpp"
#include "summation.hpp"

namespace cic {

namespace {

constexpr double kPi = std::numbers::pi;

void check_eta(double eta_i) {
  if (!std::isfinite(eta_i) || eta_i < 0.0 || eta_i > 1.0) {
    fail_validation("cancellable fraction eta must lie in [0, 1]");
  }
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// Radius beyond which the nearest-BS density 2πλr·exp(−πλr²) carries less
// than abs_tol/1000 of probability mass. Every radial integrand below is
// dominated by that envelope.
double envelope_cutoff(double lambda_b, const QuadratureSpec& spec) {
  return std::sqrt(std::log(1e3 / spec.abs_tol) / (kPi * lambda_b));
}

// ∫_lo^hi 2πλ r exp(−c_n r^β − π r² k(r)) dr, split at multiples of the
// mean nearest-neighbour scale so each piece sees a resolved integrand.
template <typename Exponent>
double radial_integral(const NetworkParams& params, double noise_coef, double lo, double hi,
                       Exponent k, const QuadratureSpec& spec, const char* label) {
  if (!(hi > lo)) {
    return 0.0;
  }
  const double lambda = params.lambda_b;
  const double beta = params.beta;
  auto integrand = [&](double r) {
    if (r <= 0.0) {
      return 0.0;
    }
    double e = kPi * r * r * k(r);
    if (noise_coef > 0.0) {
      e += noise_coef * std::pow(r, beta);
    }
    return 2.0 * kPi * lambda * r * std::exp(-e);
  };
  const double scale = 1.0 / std::sqrt(kPi * lambda);
  detail::CompensatedSum total;
  double a = lo;
  while (a < hi) {
    const double next = std::min(hi, (std::floor(a / scale) + 1.0) * scale);
    const double b = next > a ? next : hi;
    total.add(integrate(integrand, a, b, spec, label).value);
    a = b;
  }
  return total.value();
}

struct Setup {
  double t_bar;
  double z;           // G(r, r), independent of r
  double noise_coef;  // T̄ σ² / P
  LaplaceExponent le;
};

Setup setup(const NetworkParams& params, const QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  Setup s{};
  s.t_bar = sinr_threshold(params);
  s.le = LaplaceExponent{params.beta, s.t_bar};
  s.z = interference_exponent_tail(s.le, 1.0, 1.0, TailMethod::automatic, spec);
  s.noise_coef = s.t_bar * params.noise_power / params.tx_power;
  return s;
}

double global_csi(const NetworkParams& params, double eta_i, const QuadratureSpec& spec) {
  const Setup s = setup(params, spec);
  if (s.noise_coef == 0.0) {
    return plr_full_cancellation(eta_i, s.t_bar, params.beta);
  }
  const double lambda = params.lambda_b;
  const double weight = (1.0 - eta_i) * s.z + 1.0;
  const double success = radial_integral(
      params, s.noise_coef, 0.0, envelope_cutoff(lambda, spec),
      [weight, lambda](double) { return lambda * weight; }, spec, "global-CSI success");
  return clamp_probability(1.0 - success);
}

}  // namespace

double plr_partial_csi(const NetworkParams& params, double eta_i, const QuadratureSpec& spec) {
  check_eta(eta_i);
  params.validate();
  if (!(params.r_b > 0.0) || !std::isfinite(params.r_b)) {
    fail_validation("plr_partial_csi needs a finite positive CSI radius");
  }
  const Setup s = setup(params, spec);
  const double lambda = params.lambda_b;
  const double lambda_c = lambda * eta_i;
  const double lambda_u = lambda * (1.0 - eta_i);
  const double r_b = params.r_b;
  const double cutoff = envelope_cutoff(lambda, spec);

  // Serving BS inside the CSI disk: cancellable interferers survive only
  // beyond r_b.
  const double inner = radial_integral(
      params, s.noise_coef, 0.0, std::min(r_b, cutoff),
      [&](double r) {
        const double g_c =
            lambda_c > 0.0
                ? interference_exponent_tail(s.le, r, r_b, TailMethod::automatic, spec)
                : 0.0;
        return lambda_c * g_c + lambda_u * s.z + lambda;
      },
      spec, "P_s (serving distance below r_b)");

  // Serving BS beyond r_b: nothing nearer than the server is cancellable.
  double outer = 0.0;
  if (s.noise_coef == 0.0) {
    outer = std::exp(-kPi * lambda * r_b * r_b * (s.z + 1.0)) / (s.z + 1.0);
  } else if (r_b < cutoff) {
    const double weight = lambda * (s.z + 1.0);
    outer = radial_integral(
        params, s.noise_coef, r_b, cutoff, [weight](double) { return weight; }, spec,
        "P_b (serving distance beyond r_b)");
  }
  return clamp_probability(1.0 - inner - outer);
}

double plr_uncached(const NetworkParams& params, double eta_i, const QuadratureSpec& spec) {
  check_eta(eta_i);
  params.validate();
  if (params.no_csi()) {
    return plr_no_csi(params, params.interference_limited(), spec);
  }
  if (params.global_csi()) {
    return global_csi(params, eta_i, spec);
  }
  return plr_partial_csi(params, eta_i, spec);
}

double plr_no_csi(const NetworkParams& params, bool interference_limited,
                  const QuadratureSpec& spec) {
  const Setup s = setup(params, spec);
  if (interference_limited) {
    return s.z / (1.0 + s.z);
  }
  const double lambda = params.lambda_b;
  const double weight = lambda * (s.z + 1.0);
  const double success = radial_integral(
      params, s.noise_coef, 0.0, envelope_cutoff(lambda, spec),
      [weight](double) { return weight; }, spec, "no-CSI success");
  return clamp_probability(1.0 - success);
}

double plr_full_cancellation(double eta_i, double t_bar, double beta) {
  check_eta(eta_i);
  const double v = (1.0 - eta_i) * z1(LaplaceExponent{beta, t_bar});
  return v / (1.0 + v);
}

namespace {

double base_plr(const NetworkParams& params, double eta_i, double t_bar, Regime regime,
                const QuadratureSpec& spec) {
  switch (regime) {
    case Regime::general:
      return plr_uncached(params, eta_i, spec);
    case Regime::no_csi:
      return plr_no_csi(params, params.interference_limited(), spec);
    case Regime::full_cancel:
      return plr_full_cancellation(eta_i, t_bar, params.beta);
  }
  fail_validation("unknown regime");
}

}  // namespace

double plr_pair(const PlrQuery& query, Regime regime, const QuadratureSpec& spec) {
  const CachingScheme& scheme = query.scheme;
  if (query.subset_index >= scheme.rows() || query.packet_index >= scheme.n_packets()) {
    fail_validation("plr_pair: subset or packet index out of range");
  }
  const DerivedLoad load = derive_load(query.params, query.lib, scheme);
  if (load.no_downlink_traffic || scheme.caches(query.subset_index, query.packet_index)) {
    return 0.0;
  }
  return base_plr(query.params, load.eta[query.subset_index], load.t_bar, regime, spec);
}

double average_plr(const NetworkParams& params, const PacketLibrary& lib,
                   const CachingScheme& scheme, Regime regime, const QuadratureSpec& spec) {
  const DerivedLoad load = derive_load(params, lib, scheme);
  if (load.no_downlink_traffic) {
    return 0.0;
  }
  std::map<double, double> memo;
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < scheme.rows(); ++i) {
    const CacheRow& row = scheme.row(i);
    if (row.density == 0.0) {
      continue;
    }
    detail::CompensatedSum cached;
    for (std::uint32_t j : row.packets) {
      cached.add(lib[j]);
    }
    const double uncached = std::max(0.0, 1.0 - cached.value());
    if (uncached == 0.0) {
      continue;
    }
    auto it = memo.find(load.eta[i]);
    if (it == memo.end()) {
      it = memo.emplace(load.eta[i], base_plr(params, load.eta[i], load.t_bar, regime, spec))
               .first;
    }
    total.add(row.density * uncached * it->second);
  }
  return clamp_probability(total.value());
}

double plr_uniform(std::size_t n, std::size_t m, double t_bar, double beta) {
  if (n == 0 || m > n) {
    fail_validation("plr_uniform needs 0 <= M <= N and N >= 1");
  }
  const double z = z1(LaplaceExponent{beta, t_bar});
  const double u = 1.0 - static_cast<double>(m) / static_cast<double>(n);
  return z * u * u / (z * u + 1.0);
}

double plr_gain(const NetworkParams& params, double eta_i, const QuadratureSpec& spec) {
  NetworkParams without = params;
  without.r_b = 0.0;
  const double reference = plr_uncached(without, eta_i, spec);
  return std::max(0.0, reference - plr_uncached(params, eta_i, spec));
}

}  // namespace cic
