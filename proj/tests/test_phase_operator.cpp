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
#include "phasemap/phase_operator.hpp"
#include "support.hpp"

using namespace phasemap;
using phasemap::testing::grid_phi;
using phasemap::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

bool coeffs_eq(const FirstOrderPoly &p, Complex a, Complex b, Complex c,
               double tol = 0.0) {
  return std::abs(p.a() - a) <= tol && std::abs(p.b() - b) <= tol &&
         std::abs(p.c() - c) <= tol;
}

// Kronecker product of two constant matrices, written out directly.
CMatrix kron(const CMatrix &x, const CMatrix &y) {
  const std::size_t n = x.dim() * y.dim();
  CMatrix k(n);
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j)
      for (std::size_t m = 0; m < y.dim(); ++m)
        for (std::size_t l = 0; l < y.dim(); ++l)
          k(i * y.dim() + m, j * y.dim() + l) = x(i, j) * y(m, l);
  return k;
}

PhaseOperator constant_operator(const CMatrix &m) {
  PhaseOperator op(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) op(i, j) = FirstOrderPoly::constant(m(i, j));
  return op;
}

}  // namespace

TEST_CASE("eval_matrix examples", "[phase_operator]") {
  const auto cx = builtin("counterexample");
  const CMatrix at0 = eval_matrix(cx.triple().out1, 0.0);
  CHECK(max_abs_diff(at0, CMatrix{{0.5, 2.0}, {2.0, 0.5}}) < 1e-15);
  const CMatrix atpi = eval_matrix(cx.triple().out1, kPi);
  CHECK(max_abs_diff(atpi, CMatrix(2)) < 1e-15);

  const auto c1 = builtin("case1-example");
  const CMatrix out2 = eval_matrix(c1.triple().out2, 0.0);
  CHECK(max_abs_diff(out2, CMatrix{{0.5, 0.0}, {0.0, 0.25}}) < 1e-15);
}

TEST_CASE("trace_poly examples", "[phase_operator]") {
  const auto cx = builtin("counterexample");
  CHECK(coeffs_eq(trace_poly(cx.triple().out1), 0.25, 0.25, 0.5));
  CHECK(trace_poly(PhaseOperator(3)).is_zero());
  const auto c1 = builtin("case1-example");
  CHECK(coeffs_eq(trace_poly(c1.triple().out1), 0.125, 0.125, 0.5));
}

TEST_CASE("partial_trace examples", "[phase_operator]") {
  const auto cx = builtin("counterexample").triple();
  CHECK(max_abs_diff(partial_trace(cx.joint, 1), cx.out1) < 1e-12);
  CHECK(max_abs_diff(partial_trace(cx.joint, 2), cx.out2) < 1e-12);

  // Gamma1 (x) Gamma2 with unit-trace constant Gamma2, keep 1 -> Gamma1.
  Rng rng(31);
  const CMatrix g1 = rng.hermitian(2);
  CMatrix g2 = rng.hermitian(3);
  const Complex tr = g2.trace();
  for (std::size_t i = 0; i < 3; ++i) g2(i, i) += (1.0 - tr) / 3.0;
  const JointPhaseOperator j(2, 3, constant_operator(kron(g1, g2)));
  CHECK(max_abs_diff(partial_trace(j, 1), constant_operator(g1)) < 1e-12);

  const auto fn = builtin("footnote-linear-only").triple();
  const PhaseOperator kept = partial_trace(fn.joint, 1);
  CHECK(coeffs_eq(kept(0, 0), 0, 0, 1));
  CHECK(coeffs_eq(kept(0, 1), 0, 0, 0));
  CHECK(coeffs_eq(kept(1, 0), 1, 0, 0));
  CHECK(coeffs_eq(kept(1, 1), 0, 0, 0));

  CHECK_THROWS_AS(partial_trace(fn.joint, 3), Error);
}

TEST_CASE("is_hermitian_preserving examples", "[phase_operator]") {
  CHECK(is_hermitian_preserving(builtin("counterexample").triple().out1, 1e-12));
  CHECK_FALSE(is_hermitian_preserving(builtin("footnote-linear-only").triple().out1, 1e-12));
  PhaseOperator diag(3);
  Rng rng(32);
  for (std::size_t i = 0; i < 3; ++i) diag(i, i) = rng.real_poly(rng.uniform(0, 2), rng.uniform(-1, 1));
  CHECK(is_hermitian_preserving(diag, 1e-12));
}

TEST_CASE("hermitian-preserving iff pointwise hermitian", "[phase_operator][property]") {
  Rng rng(33);
  for (int k = 0; k < 500; ++k) {
    const std::size_t d = 2 + static_cast<std::size_t>(k % 3);
    PhaseOperator op = rng.hp_operator(d);
    const bool perturb = rng.chance(0.5);
    if (perturb) {
      const std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<double>(d)));
      const std::size_t j = (i + 1) % d;
      op(i, j) = op(i, j) + FirstOrderPoly(rng.complex(1e-3), 0.0, 0.0);
    }
    const bool hp = is_hermitian_preserving(op, 1e-10);
    bool pointwise = true;
    for (std::size_t g = 0; g < 64; ++g)
      pointwise = pointwise && is_hermitian(eval_matrix(op, grid_phi(g, 64)), 1e-10);
    CHECK(hp == pointwise);
    CHECK(hp == !perturb);
    if (hp) CHECK(is_real_valued(trace_poly(op), 1e-12));
  }
}

TEST_CASE("tensor examples", "[phase_operator]") {
  const auto cx = builtin("counterexample").triple();
  const LaurentMatrix t = tensor(cx.out1, cx.out2);
  // Row (0,0), column (1,1): [out1]_01 [out2]_01 = (1/x + 1)^2.
  CHECK(t(0, 3) == (LaurentPoly{{-2, 1.0}, {-1, 2.0}, {0, 1.0}}));

  const LaurentMatrix id = tensor(PhaseOperator::identity(2), PhaseOperator::identity(3));
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c)
      CHECK(id(r, c) == (r == c ? LaurentPoly{{0, 1.0}} : LaurentPoly{}));

  const auto fn = builtin("footnote-linear-only").triple();
  const LaurentMatrix ft = tensor(fn.out1, fn.out2);
  CHECK(ft(0, 0) == LaurentPoly{{0, 1.0}});
  CHECK(ft(1, 0) == LaurentPoly{{-1, 1.0}});
  CHECK(ft(2, 0) == LaurentPoly{{1, 1.0}});
  CHECK(ft(3, 0) == LaurentPoly{{0, 1.0}});
}

TEST_CASE("trace of tensor is the product of traces", "[phase_operator][property]") {
  Rng rng(34);
  for (int k = 0; k < 300; ++k) {
    const PhaseOperator o1 = rng.hp_operator(2 + static_cast<std::size_t>(k % 2));
    const PhaseOperator o2 = rng.hp_operator(2 + static_cast<std::size_t>(k % 3));
    const LaurentMatrix t = tensor(o1, o2);
    LaurentPoly tr;
    for (std::size_t r = 0; r < t.dim; ++r) tr = tr + t(r, r);
    const LaurentPoly want = mul(trace_poly(o1), trace_poly(o2));
    CHECK((tr - want).max_abs() <= 1e-12 * (1.0 + want.max_abs()));
  }
}

TEST_CASE("validate_triple examples", "[phase_operator]") {
  const auto cx = builtin("counterexample").triple();
  const RelationReport r = validate_triple(cx, 1e-12);
  CHECK(r.ok());
  CHECK(r.max_residual() < 1e-12);

  CHECK(validate_triple(builtin("case1-example").triple(), 1e-12).ok());

  UncorrelatedTriple bad = cx;
  PhaseOperator flat = bad.joint.flat();
  flat(0, 0) = flat(0, 0) + FirstOrderPoly::constant(0.01);
  bad = UncorrelatedTriple(JointPhaseOperator(2, 2, flat), cx.out1, cx.out2);
  const RelationReport rb = validate_triple(bad, 1e-9);
  CHECK_FALSE(rb.relation_holds);
  CHECK(rb.relation_residual == Catch::Approx(0.01).margin(1e-12));

  PhaseOperator zero(2);
  const UncorrelatedTriple z(JointPhaseOperator(2, 2), zero, zero);
  try {
    validate_triple(z, 1e-12);
    FAIL("expected ZeroProbabilityEverywhere");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ZeroProbabilityEverywhere);
  }
}

TEST_CASE("valid triples have equal traces and consistent partial traces", "[phase_operator][property]") {
  for (auto name : kCatalogNames) {
    const auto e = builtin(name);
    if (!e.is_triple()) continue;
    const auto &t = e.triple();
    const FirstOrderPoly P = trace_poly(t.out1);
    CHECK(max_abs_diff(trace_poly(t.joint), P) <= 1e-12);
    CHECK(max_abs_diff(trace_poly(t.out2), P) <= 1e-12);
    CHECK(max_abs_diff(trace_poly(partial_trace(t.joint, 1)), trace_poly(t.joint)) <= 1e-12);
  }
}

TEST_CASE("tensor_over divides entrywise", "[phase_operator]") {
  const auto cx = builtin("counterexample").triple();
  const FirstOrderPoly P = trace_poly(cx.out1);
  const JointPhaseOperator j = tensor_over(cx.out1, cx.out2, P, 1e-12);
  CHECK(max_abs_diff(j.flat(), cx.joint.flat()) < 1e-12);
  // An entry with neither factor of P times a single-factor entry is not divisible.
  const PhaseOperator o{{FirstOrderPoly(0, 0, 1), {}}, {{}, {}}};
  CHECK_THROWS_AS(tensor_over(o, cx.out2, P, 1e-9), Error);
}

TEST_CASE("swap_systems reverses roles", "[phase_operator]") {
  const auto t = builtin("case1-example").triple();
  const UncorrelatedTriple s = swap_systems(t);
  CHECK(s.out1 == t.out2);
  CHECK(s.out2 == t.out1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t n = 0; n < 2; ++n) CHECK(s.joint(m, i, n, j) == t.joint(i, m, j, n));
  CHECK(swap_systems(s) == t);
}

TEST_CASE("phase_state_operator", "[phase_operator]") {
  const PhaseOperator half = phase_state_operator(PhaseState(0.5));
  CHECK(coeffs_eq(half(0, 1), 0, 0.5, 0));
  CHECK(coeffs_eq(half(1, 0), 0.5, 0, 0));

  for (double q : {0.1, 0.3, 0.5, 0.77, 0.99}) {
    const PhaseOperator op = phase_state_operator(PhaseState(q));
    CHECK(coeffs_eq(trace_poly(op), 0, 0, 1, 1e-15));
    CHECK(is_hermitian_preserving(op, 1e-15));
    for (std::size_t g = 0; g < 32; ++g) {
      const CMatrix m = eval_matrix(op, grid_phi(g, 32));
      const auto ev = jacobi_eigenvalues(m);
      CHECK(std::abs(ev[0]) < 1e-12);
      CHECK(std::abs(ev[1] - 1.0) < 1e-12);
      // Rank one: |psi><psi| with psi = (sqrt q, sqrt(1-q) e^{i phi}).
      const double phi = grid_phi(g, 32);
      const Complex psi[2] = {std::sqrt(q), std::polar(std::sqrt(1.0 - q), phi)};
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          CHECK(std::abs(m(i, j) - psi[i] * std::conj(psi[j])) < 1e-12);
    }
  }
  CHECK_THROWS_AS(PhaseState(0.0), Error);
  CHECK_THROWS_AS(PhaseState(1.0), Error);
}

TEST_CASE("normalized_output examples", "[phase_operator]") {
  const auto cx = builtin("counterexample").triple();
  const FirstOrderPoly P = trace_poly(cx.out1);
  CHECK(max_abs_diff(normalized_output(cx.out1, P, 0.0, 1e-12),
                     CMatrix{{0.5, 2.0}, {2.0, 0.5}}) < 1e-15);
  // Off-diagonal 4/(x+1) per the normalized state.
  const double phi = 1.1;
  const CMatrix m = normalized_output(cx.out1, P, phi, 1e-12);
  CHECK(std::abs(m(0, 1) - 4.0 / (std::polar(1.0, phi) + 1.0)) < 1e-12);
  try {
    normalized_output(cx.out1, P, kPi, 1e-12);
    FAIL("expected ZeroProbabilityAtPhase");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ZeroProbabilityAtPhase);
  }

  const auto c1 = builtin("case1-example").triple();
  const FirstOrderPoly P1 = trace_poly(c1.out1);
  for (std::size_t g = 0; g < 64; ++g) {
    const CMatrix n = normalized_output(c1.out1, P1, grid_phi(g, 64), 1e-12);
    CHECK(max_abs_diff(n, CMatrix{{0.5, 0.0}, {0.0, 0.5}}) < 1e-12);
  }
}

TEST_CASE("operator construction errors", "[phase_operator]") {
  CHECK_THROWS_AS(PhaseOperator(0), Error);
  CHECK_THROWS_AS(JointPhaseOperator(2, 2, PhaseOperator(3)), Error);
  CHECK_THROWS_AS(UncorrelatedTriple(JointPhaseOperator(2, 2), PhaseOperator(2),
                                     PhaseOperator(3)),
                  Error);
  const PhaseOperator op(2);
  try {
    (void)op.at(2, 0);
    FAIL("expected IndexOutOfRange");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
}
