// Copyright 2026 The phasemap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "phasemap/catalog.hpp"
#include "phasemap/positivity.hpp"
#include "support.hpp"

using namespace phasemap;
using phasemap::testing::direct_eval;
using phasemap::testing::grid_phi;
using phasemap::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

ErrorCode code_of(const FirstOrderPoly &P) {
  try {
    decompose_probability(P);
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

double grid_minimum(const FirstOrderPoly &P, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) m = std::min(m, direct_eval(P, grid_phi(k, n)).real());
  return m;
}

}  // namespace

TEST_CASE("decompose_probability examples", "[positivity]") {
  {
    const auto d = decompose_probability({0.25, 0.25, 0.5});
    CHECK(d.alpha_abs == 0.25);
    CHECK(d.theta == 0.0);
    CHECK(d.r == 1.0);
    CHECK(d.double_root());
    CHECK(std::abs(d.p0 - 1.0) < 1e-15);
    CHECK(std::abs(d.p1 - 1.0) < 1e-15);
  }
  {
    const auto d = decompose_probability({0.125, 0.125, 0.5});
    CHECK(std::abs(d.r - (2.0 + kSqrt3)) < 1e-10);
    CHECK(std::abs(d.p0 - (2.0 + kSqrt3)) < 1e-10);
    CHECK(std::abs(d.p1 - (2.0 - kSqrt3)) < 1e-10);
  }
  CHECK(code_of({0.25, 0.25, 0.25}) == ErrorCode::NotPositive);
  CHECK(grid_minimum({0.25, 0.25, 0.25}, 4096) == Catch::Approx(-0.25).margin(1e-12));
  CHECK(code_of({0.0, 0.0, 0.7}) == ErrorCode::ConstantProbability);
  CHECK(code_of({Complex(0, 1), Complex(0, 1), 0.0}) == ErrorCode::NotRealValued);
}

TEST_CASE("decomposition invariants and expansion", "[positivity][property]") {
  Rng rng(41);
  for (int k = 0; k < 2000; ++k) {
    const double alpha = rng.uniform(0.01, 5.0);
    const double R = alpha * rng.uniform(2.0, 10.0);
    const FirstOrderPoly P = rng.real_poly(alpha, R);
    const auto d = decompose_probability(P);
    CHECK(d.r >= 1.0);
    CHECK(std::abs(d.r + 1.0 / d.r - R / alpha) <= 1e-9 * (R / alpha));
    CHECK(std::abs(d.p0 - std::polar(d.r, d.theta)) <= 1e-15 * d.r);
    CHECK(std::abs(d.p1 - std::polar(1.0 / d.r, d.theta)) <= 1e-15);
    CHECK(max_abs_diff(expand(d.form()), P) <= 1e-10 * std::max(1.0, P.max_abs()));
  }
}

TEST_CASE("decompose succeeds iff brute-force grid minimum is non-negative",
          "[positivity][property]") {
  Rng rng(42);
  int positive = 0;
  int negative = 0;
  for (int k = 0; k < 10000; ++k) {
    const double alpha = rng.uniform(0.05, 3.0);
    double s = rng.uniform(0.0, 4.0);
    // Pile samples onto the boundary R/|alpha| = 2 as well.
    if (rng.chance(0.2)) s = 2.0 + rng.uniform(-1e-9, 1e-9);
    // The grid oracle cannot resolve minima closer to zero than its spacing.
    if (std::abs(s - 2.0) > 1e-9 && std::abs(s - 2.0) < 1e-6) continue;
    const FirstOrderPoly P = rng.real_poly(alpha, s * alpha);
    bool ok = true;
    try {
      decompose_probability(P);
    } catch (const Error &e) {
      REQUIRE(e.code() == ErrorCode::NotPositive);
      ok = false;
    }
    const double m = grid_minimum(P, 4096);
    const bool boundary = std::abs(s - 2.0) <= 1e-9;
    if (!boundary) {
      // min of P is alpha (s - 2); the grid overshoots by at most 3e-7 alpha.
      REQUIRE(ok == (m >= -1e-9));
    } else {
      CHECK(m >= -1e-9 * 3.0 * alpha - 1e-15);
      CHECK(ok);
    }
    (ok ? positive : negative)++;
  }
  CHECK(positive > 1000);
  CHECK(negative > 1000);
}

TEST_CASE("min_eigenvalue_profile examples", "[positivity]") {
  const auto cx = builtin("counterexample").triple();
  const auto prof = min_eigenvalue_profile(cx.out1, 8);
  REQUIRE(prof.size() == 8);
  CHECK(prof[0].phi == 0.0);
  CHECK(prof[0].lambda_min == Catch::Approx(-1.5).margin(1e-12));

  const auto c1 = builtin("case1-example").triple();
  for (const auto &pt : min_eigenvalue_profile(c1.out2, 256)) {
    const double want = std::min((std::cos(pt.phi) + 1.0) / 4.0, 0.25);
    CHECK(std::abs(pt.lambda_min - want) < 1e-12);
    CHECK(pt.lambda_min >= 0.0);
  }

  for (const auto &pt : min_eigenvalue_profile(PhaseOperator(3), 16)) CHECK(pt.lambda_min == 0.0);

  CHECK_THROWS_AS(min_eigenvalue_profile(builtin("footnote-linear-only").triple().out1, 8), Error);
  CHECK_THROWS_AS(min_eigenvalue_profile(cx.out1, 0), Error);
}

TEST_CASE("is_positive_over_phase examples", "[positivity]") {
  const auto cx = builtin("counterexample").triple();
  const auto v = is_positive_over_phase(cx.out1);
  CHECK_FALSE(v.positive);
  REQUIRE(v.witness_phi);
  CHECK(std::min(*v.witness_phi, 2 * kPi - *v.witness_phi) < 1e-6);
  CHECK(v.min_eigenvalue == Catch::Approx(-1.5).margin(1e-9));

  const auto c1 = builtin("case1-example").triple();
  const auto vj = is_positive_over_phase(c1.joint.flat());
  CHECK(vj.positive);
  CHECK_FALSE(vj.witness_phi);
  CHECK(vj.min_eigenvalue == Catch::Approx(0.0).margin(1e-12));

  for (double q : {0.2, 0.5, 0.9}) {
    CHECK(is_positive_over_phase(phase_state_operator(PhaseState(q))).positive);
  }

  try {
    is_positive_over_phase(builtin("footnote-linear-only").triple().out1);
    FAIL("expected NotHermitian");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("refinement finds a dip narrower than the grid", "[positivity]") {
  // Diagonal entry P_eps = eps + 1 - cos(phi - phi0) dips to eps at phi0,
  // placed halfway between grid points of a coarse 64-point grid.
  const double phi0 = 2 * kPi * 10.5 / 64;
  const double eps = -1e-4;
  const Complex a = -0.5 * std::polar(1.0, -phi0);
  PhaseOperator op(1);
  op(0, 0) = FirstOrderPoly(a, std::conj(a), 1.0 + eps);
  const auto coarse = min_eigenvalue_profile(op, 64);
  double grid_min = 1.0;
  for (const auto &pt : coarse) grid_min = std::min(grid_min, pt.lambda_min);
  CHECK(grid_min > 0.0);
  const auto v = is_positive_over_phase(op, 1e-9, 64);
  CHECK_FALSE(v.positive);
  CHECK(v.min_eigenvalue == Catch::Approx(eps).margin(1e-12));
  CHECK(std::abs(v.argmin_phi - phi0) < 1e-5);
}

TEST_CASE("analytic 2x2 lambda_min matches Jacobi along profiles", "[positivity][property]") {
  Rng rng(43);
  for (int k = 0; k < 100; ++k) {
    const PhaseOperator op = rng.hp_operator(2);
    for (std::size_t g = 0; g < 64; ++g) {
      const CMatrix m = eval_matrix(op, grid_phi(g, 64));
      CHECK(std::abs(min_eigenvalue(m) - jacobi_eigenvalues(m).front()) < 1e-10);
    }
  }
}

TEST_CASE("submatrix_positivity examples", "[positivity]") {
  const auto cx = builtin("counterexample").triple();
  CHECK_FALSE(submatrix_positivity(cx.out1, 0, 1).positive);
  const auto c1 = builtin("case1-example").triple();
  CHECK(submatrix_positivity(c1.out1, 0, 1).positive);

  // Diagonal cos^2(phi/2)/2 against off-diagonal magnitude 0.2 |cos(phi/2)|.
  const FirstOrderPoly P(0.25, 0.25, 0.5);
  const FirstOrderPoly off(0.0, 0.1, 0.1);
  const PhaseOperator op{{0.5 * P, off}, {off.conj(), 0.5 * P}};
  CHECK_FALSE(submatrix_positivity(op, 0, 1).positive);

  try {
    submatrix_positivity(cx.out1, 0, 2);
    FAIL("expected IndexOutOfRange");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
  CHECK_THROWS_AS(submatrix_positivity(cx.out1, 1, 1), Error);
}

TEST_CASE("positive operators have positive principal 2x2 blocks", "[positivity][property]") {
  Rng rng(44);
  int positives = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t d = 3;
    PhaseOperator op = rng.hp_operator(d);
    // Shift the diagonal so that some operators are positive.
    const double shift = rng.uniform(0.0, 6.0);
    for (std::size_t i = 0; i < d; ++i) op(i, i) = op(i, i) + FirstOrderPoly::constant(shift);
    if (!is_positive_over_phase(op, 1e-9, 512).positive) continue;
    ++positives;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        CHECK(submatrix_positivity(op, i, j, 1e-9, 512).positive);
  }
  CHECK(positives > 20);
}
