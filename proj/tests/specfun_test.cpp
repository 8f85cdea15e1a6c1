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

#include "cic/error.hpp"
#include "cic/specfun.hpp"

using namespace cic;

namespace {

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("quadrature") {
  const auto r = integrate([](double x) { return std::exp(-x); }, 0.0, 5.0);
  CHECK(close(r.value, -std::expm1(-5.0), 1e-13));
  const auto s = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(close(s.value, 2.0, 1e-9));
  const auto t = integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0);
  CHECK(close(t.value, M_PI / 2, 1e-11));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
  QuadratureSpec tight;
  tight.max_subdivisions = 2;
  tight.abs_tol = 1e-15;
  tight.rel_tol = 1e-15;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, tight), Error);
}

TEST_CASE("hyp2f1 reference values") {
  // mpmath at 40 digits: tests/oracles/oracle_values.py
  struct Case { double a, b, c, x, want; };
  const std::vector<Case> cases = {
      {1, 0.5, 1.5, -1.0, 0.78539816339744831},
      {1, 0.5, 1.5, -4.0, 0.55357435889704525},
      {1, 1.0 / 3, 4.0 / 3, -0.999, 0.83576076414783055},
      {1, 1.0 / 3, 4.0 / 3, -1.001, 0.83553699822555324},
      {1, 1.0 / 3, 4.0 / 3, -7.5, 0.55436597186713549},
      {0.3, 1.7, 2.2, -25.0, 0.41674554607951919},
      {1, 0.6, 1.6, -0.4, 0.87877510190001277},
  };
  for (const auto& c : cases) {
    CAPTURE(c.x);
    CHECK(close(hyp2f1_real(c.a, c.b, c.c, c.x), c.want, 1e-13));
  }
  CHECK(hyp2f1_real(1, 0.5, 1.5, 0.0) == 1.0);
  // arctan identity: 2F1(1, 1/2; 3/2; -z²) = atan(z)/z
  for (double z : {0.1, 0.7, 1.0, 1.5, 3.0, 10.0, 100.0}) {
    CAPTURE(z);
    CHECK(close(hyp2f1_real(1, 0.5, 1.5, -z * z), std::atan(z) / z, 1e-13));
  }
}

TEST_CASE("hyp2f1 is continuous across branch boundaries") {
  for (double edge : {-0.5, -3.0}) {
    const double lo = hyp2f1_real(1, 0.3, 1.3, edge - 1e-12);
    const double hi = hyp2f1_real(1, 0.3, 1.3, edge + 1e-12);
    CHECK(std::fabs(lo - hi) < 1e-12);
    const double lo2 = hyp2f1_real(0.4, 1.9, 2.6, edge - 1e-12);
    const double hi2 = hyp2f1_real(0.4, 1.9, 2.6, edge + 1e-12);
    CHECK(std::fabs(lo2 - hi2) < 1e-12);
  }
}

TEST_CASE("hyp2f1 domain") {
  CHECK_THROWS_AS(hyp2f1_real(1, 1, 0, -0.5), Error);
  CHECK_THROWS_AS(hyp2f1_real(1, 1, -2, -0.5), Error);
  CHECK_THROWS_AS(hyp2f1_real(1, 1, 2, 0.5), Error);
  CHECK_THROWS_AS(hyp2f1_real(1, 1, 2, NAN), Error);
}

TEST_CASE("laplace exponent values") {
  const LaplaceExponent b4{4.0, 1.0};
  CHECK(close(interference_exponent_tail(b4, 1.0, 1.0), 0.78539816339744831, 1e-13));
  CHECK(close(interference_exponent_tail(b4, 1.0, 2.0), 0.24497866312686415, 1e-13));
  const LaplaceExponent b3{3.0, 1.0};
  CHECK(close(interference_exponent_tail(b3, 1.0, 1.0), 1.6712976965294421, 1e-12));
  CHECK(close(z1(b3), 1.6712976965294421, 1e-13));
  const LaplaceExponent b3t2{3.0, 2.0};
  CHECK(close(interference_exponent_tail(b3t2, 1.0, 1.7), 2.1570545261490935, 1e-12));
  const LaplaceExponent b5{5.0, 0.5};
  CHECK(close(interference_exponent_tail(b5, 2.0, 0.0), 1.0013629997138114, 1e-12));
  CHECK(close(z1(LaplaceExponent{4.0, 4.0}), 2.214297435588181, 1e-13));
  CHECK(interference_exponent_tail(b4, 1.0, INFINITY) == 0.0);
  // no exclusion, beta = 4: (pi/2)/sin(pi/2) * sqrt(T)
  CHECK(close(interference_exponent_tail(LaplaceExponent{4.0, 9.0}, 3.0, 0.0), 1.5 * M_PI, 1e-14));
}

TEST_CASE("three evaluation routes agree") {
  const std::vector<double> grid = {0.1, 0.3, 1.0, 3.0, 10.0};
  for (double beta : {2.5, 3.0, 3.7, 4.0, 5.0, 6.0}) {
    for (double t : grid) {
      const LaplaceExponent le{beta, t};
      for (double r : grid) {
        for (double e : grid) {
          CAPTURE(beta);
          CAPTURE(t);
          CAPTURE(r);
          CAPTURE(e);
          const double a = interference_exponent_tail(le, r, e, TailMethod::automatic);
          const double q = interference_exponent_tail(le, r, e, TailMethod::quadrature);
          const double h = interference_exponent_tail(le, r, e, TailMethod::hypergeometric);
          CHECK(close(q, a, 1e-9));
          CHECK(close(h, a, 1e-9));
        }
      }
    }
  }
}

TEST_CASE("serving-distance exclusion equals z1") {
  for (double beta : {2.5, 3.0, 4.0, 5.0}) {
    for (double t : {0.1, 1.0, 10.0}) {
      const LaplaceExponent le{beta, t};
      for (double r : {0.01, 1.0, 250.0}) {
        CHECK(close(interference_exponent_tail(le, r, r), z1(le), 1e-11));
      }
    }
  }
}

TEST_CASE("monotonicity") {
  const LaplaceExponent le{3.5, 1.3};
  double prev = interference_exponent_tail(le, 1.0, 0.0);
  for (double e = 0.05; e < 20.0; e *= 1.3) {
    const double g = interference_exponent_tail(le, 1.0, e);
    CHECK(g < prev);
    prev = g;
  }
  double prev_t = 0.0;
  for (double t = 0.01; t < 50.0; t *= 1.7) {
    const double z = z1(LaplaceExponent{3.5, t});
    CHECK(z > prev_t);
    prev_t = z;
  }
}

TEST_CASE("invalid exponent parameters") {
  CHECK_THROWS_AS(z1(LaplaceExponent{2.0, 1.0}), Error);
  CHECK_THROWS_AS(z1(LaplaceExponent{4.0, -1.0}), Error);
  try {
    z1(LaplaceExponent{1.5, 1.0});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divergence);
  }
  CHECK_THROWS_AS(interference_exponent_tail(LaplaceExponent{4.0, 1.0}, -1.0, 1.0), Error);
}

}  // TEST_SUITE
