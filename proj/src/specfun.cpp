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

#include "cic/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "cic/error.hpp"

namespace cic {

namespace {

// Gauss–Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kXgk[k];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[k] * sum;
    if (k % 2 == 1) {
      gauss += kWg[k / 2] * sum;
    }
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

constexpr double kSeriesEps = 1e-17;
constexpr int kSeriesCap = 100000;

bool near_integer(double v) { return std::fabs(v - std::nearbyint(v)) < 1e-13; }

bool non_positive_integer(double v) { return v <= 0.0 && near_integer(v); }

double rgamma(double v) {
  if (non_positive_integer(v)) {
    return 0.0;
  }
  return 1.0 / std::tgamma(v);
}

// Plain power series; caller guarantees |x| < 1 with comfortable margin.
double hyp2f1_series(double a, double b, double c, double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < kSeriesCap; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (term == 0.0 || std::fabs(term) <= kSeriesEps * std::fabs(sum)) {
      return sum;
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "hyp2f1 series did not converge after " << kSeriesCap << " terms (a=" << a
     << ", b=" << b << ", c=" << c << ", x=" << x << ", last term=" << term << ")";
  fail_numerical(os.str());
}

double hyp2f1_pfaff(double a, double b, double c, double x) {
  return std::pow(1.0 - x, -a) * hyp2f1_series(a, c - b, c, x / (x - 1.0));
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
    fail_validation("quadrature tolerances must be positive and max_subdivisions >= 1");
  }
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                           const char* label) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    fail_validation("integrate() needs finite limits");
  }
  if (a == b) {
    return {};
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  int subdivisions = 1;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::fabs(value))) {
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream os;
      os.precision(6);
      os << "quadrature";
      if (label) {
        os << " of " << label;
      }
      os << " on [" << a << ", " << b << "] did not reach tolerance after " << subdivisions
         << " subdivisions (estimate " << value << ", error " << error << ")";
      fail_numerical(os.str());
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum to drop the drift of the incremental updates.
  double total = 0.0;
  double total_error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  return {sign * total, total_error, subdivisions};
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec,
                                       const char* label) {
  if (!std::isfinite(a)) {
    fail_validation("integrate_to_infinity() needs a finite lower limit");
  }
  auto mapped = [&f, a](double t) {
    const double s = 1.0 - t;
    return f(a + t / s) / (s * s);
  };
  return integrate(mapped, 0.0, 1.0, spec, label);
}

double hyp2f1_real(double a, double b, double c, double x) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(x)) {
    fail_validation("hyp2f1_real: arguments must be finite");
  }
  if (non_positive_integer(c)) {
    fail_validation("hyp2f1_real: c must not be a non-positive integer");
  }
  if (x > 0.0) {
    fail_validation("hyp2f1_real: only arguments x <= 0 are supported");
  }
  if (x == 0.0 || a == 0.0 || b == 0.0) {
    return 1.0;
  }
  if (x >= -0.5) {
    return hyp2f1_series(a, b, c, x);
  }
  if (x >= -3.0 || near_integer(a - b)) {
    return hyp2f1_pfaff(a, b, c, x);
  }
  // 1/x connection formula; both inner series run at |1/x| < 1/3.
  const double w = 1.0 / x;
  const double gc = std::tgamma(c);
  const double t1 = gc * std::tgamma(b - a) * rgamma(b) * rgamma(c - a) * std::pow(-x, -a) *
                    hyp2f1_series(a, a - c + 1.0, a - b + 1.0, w);
  const double t2 = gc * std::tgamma(a - b) * rgamma(a) * rgamma(c - b) * std::pow(-x, -b) *
                    hyp2f1_series(b, b - c + 1.0, b - a + 1.0, w);
  const double result = t1 + t2;
  if (!std::isfinite(result)) {
    std::ostringstream os;
    os.precision(17);
    os << "hyp2f1_real: connection formula overflowed (a=" << a << ", b=" << b << ", c=" << c
       << ", x=" << x << ")";
    fail_numerical(os.str());
  }
  return result;
}

void LaplaceExponent::validate() const {
  if (!std::isfinite(beta) || beta <= 2.0) {
    throw Error(ErrorKind::divergence,
                "Laplace exponent diverges for path-loss exponent beta <= 2");
  }
  if (!std::isfinite(t_bar) || t_bar <= 0.0) {
    fail_validation("SINR threshold must be positive and finite");
  }
}

namespace {

// ∫_lower^∞ du / (1 + u^{β/2}).
double tail_integral(double beta, double lower, const QuadratureSpec& spec,
                     bool closed_form_at_zero) {
  const double h = 0.5 * beta;
  if (lower == 0.0 && closed_form_at_zero) {
    // Closed form Γ(1+1/h)Γ(1−1/h) = (π/h)/sin(π/h).
    const double s = std::numbers::pi / h;
    return s / std::sin(s);
  }
  // Finite part by quadrature, the rest from the convergent expansion
  // 1/(1+u^h) = Σ_k (−1)^k u^{−(k+1)h} valid for u > 1.
  const double upper = std::max(4.0, 2.0 * lower);
  double head = 0.0;
  if (lower < upper) {
    head = integrate([h](double u) { return 1.0 / (1.0 + std::pow(u, h)); }, lower, upper,
                     spec, "interference exponent")
               .value;
  }
  const double start = std::max(lower, upper);
  const double ratio = std::pow(start, -h);
  double tail = 0.0;
  double power = start * ratio;  // start^{1 − (k+1)h}
  for (int k = 0; k < kSeriesCap; ++k) {
    const double term = power / ((k + 1) * h - 1.0);
    tail += (k % 2 == 0) ? term : -term;
    if (term <= kSeriesEps * std::fabs(tail)) {
      return head + tail;
    }
    power *= ratio;
  }
  fail_numerical("interference exponent tail expansion did not converge");
}

}  // namespace

double interference_exponent_tail(const LaplaceExponent& le, double r, double exclusion,
                                  TailMethod method, const QuadratureSpec& spec) {
  le.validate();
  if (!std::isfinite(r) || r <= 0.0) {
    fail_validation("interference_exponent_tail: serving distance must be positive");
  }
  if (std::isnan(exclusion) || exclusion < 0.0) {
    fail_validation("interference_exponent_tail: exclusion radius must be >= 0");
  }
  if (std::isinf(exclusion)) {
    return 0.0;
  }
  const double beta = le.beta;
  const double t_scale = std::pow(le.t_bar, 2.0 / beta);
  const double ratio = exclusion / r;
  // Lower limit x^{−2/β} = (exclusion/r)² T̄^{−2/β}.
  const double lower = ratio * ratio / t_scale;

  if (method == TailMethod::hypergeometric && exclusion > 0.0) {
    const double x = std::pow(r / exclusion, beta) * le.t_bar;
    if (std::isfinite(x)) {
      return t_scale * (2.0 / (beta - 2.0)) * std::pow(x, 1.0 - 2.0 / beta) *
             hyp2f1_real(1.0, 1.0 - 2.0 / beta, 2.0 - 2.0 / beta, -x);
    }
  }
  if (method == TailMethod::automatic && beta == 4.0) {
    if (exclusion == 0.0) {
      return t_scale * std::numbers::pi / 2.0;
    }
    // √T̄ · arctan(√x) = √T̄ · atan2(1, 1/√x); finite as exclusion → 0.
    return t_scale * std::atan2(1.0, lower);
  }
  return t_scale * tail_integral(beta, lower, spec, method != TailMethod::quadrature);
}

double z1(const LaplaceExponent& le) {
  le.validate();
  const double beta = le.beta;
  return 2.0 * le.t_bar / (beta - 2.0) *
         hyp2f1_real(1.0, 1.0 - 2.0 / beta, 2.0 - 2.0 / beta, -le.t_bar);
}

}  // namespace cic
