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

#include <functional>

namespace cic {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 200;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss–Kronrod (7/15) on a finite interval. Bisects the
/// interval with the largest error estimate until the total estimate is below
/// max(abs_tol, rel_tol·|value|). Throws Error(numerical) if the subdivision
/// budget runs out first; the message names `label` when given.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureSpec& spec = {}, const char* label = nullptr);

/// ∫_a^∞ f(u) du via u = a + t/(1−t), t ∈ [0, 1).
QuadratureResult integrate_to_infinity(const Integrand& f, double a,
                                       const QuadratureSpec& spec = {},
                                       const char* label = nullptr);

/// Gauss hypergeometric ₂F₁(a, b; c; x) for real parameters and x <= 0.
///
/// Direct series for x in [−1/2, 0], the Pfaff transformation
/// (1−x)^{−a} ₂F₁(a, c−b; c; x/(x−1)) for x in [−3, −1/2), and the 1/x
/// connection formula for x < −3 (Pfaff again when a − b is an integer).
/// Throws Error(validation) when c is a non-positive integer, x > 0 or an
/// argument is not finite, and Error(numerical) if a series fails to settle
/// within 10⁵ terms.
double hyp2f1_real(double a, double b, double c, double x);

/// Parameters of the Rayleigh-faded PPP interference Laplace exponent.
struct LaplaceExponent {
  double beta = 4.0;
  double t_bar = 1.0;

  void validate() const;
};

enum class TailMethod {
  automatic,      // closed form where one exists, otherwise quadrature
  quadrature,     // always integrate numerically
  hypergeometric  // ₂F₁ representation
};

/// Factor G with L_I(r^β T̄ / P) = exp(−π λ r² G) for a PPP of intensity λ
/// restricted to distances beyond `exclusion`, seen by a receiver whose
/// serving BS sits at distance r:
///
///   G = T̄^{2/β} ∫_{x^{−2/β}}^∞ du / (1 + u^{β/2}),   x = (r/exclusion)^β T̄.
///
/// exclusion = 0 integrates from 0 and exclusion = ∞ gives 0.
double interference_exponent_tail(const LaplaceExponent& le, double r, double exclusion,
                                  TailMethod method = TailMethod::automatic,
                                  const QuadratureSpec& spec = {});

/// Z₁(T̄) = 2T̄/(β−2) · ₂F₁(1, 1−2/β; 2−2/β; −T̄), the exclusion-at-serving-distance
/// exponent. Equal to interference_exponent_tail(le, r, r) for every r.
double z1(const LaplaceExponent& le);

}  // namespace cic
