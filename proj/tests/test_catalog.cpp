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

#include "phasemap/catalog.hpp"

using namespace phasemap;

TEST_CASE("catalog examples", "[catalog]") {
  const auto cx = builtin("counterexample").triple();
  CHECK(cx.out1(0, 0) == FirstOrderPoly(0.125, 0.125, 0.25));

  const auto d = decompose_probability(trace_poly(builtin("case1-example").triple().out1));
  CHECK(std::abs(d.r - (2.0 + std::sqrt(3.0))) < 1e-10);

  const auto pd = builtin("projective-discard", 0.3).triple();
  CHECK(trace_poly(pd.out1) == FirstOrderPoly::constant(0.3));
  CHECK(trace_poly(pd.out2) == FirstOrderPoly::constant(0.3));

  const auto ps = builtin("phase-state", 0.25);
  REQUIRE_FALSE(ps.is_triple());
  CHECK(ps.op()(0, 1) == FirstOrderPoly(0.0, std::sqrt(0.25 * 0.75), 0.0));
}

TEST_CASE("every entry passes its own expectations", "[catalog]") {
  for (auto name : kCatalogNames) {
    const auto e = builtin(name);
    CHECK(e.name == name);
    INFO(std::string(name));
    CHECK(expectation_mismatches(e).empty());
  }
  for (double q : {0.1, 0.5, 0.9}) {
    CHECK(expectation_mismatches(builtin("projective-discard", q)).empty());
    CHECK(expectation_mismatches(builtin("phase-state", q)).empty());
  }
}

TEST_CASE("worked triples satisfy the relation", "[catalog]") {
  for (auto name : {"counterexample", "case1-example", "case3-example"}) {
    const auto e = builtin(name);
    const auto rep = validate_triple(e.triple(), e.tol);
    INFO(name);
    CHECK(rep.ok());
    CHECK(rep.max_residual() <= e.tol);
  }
  CHECK(validate_triple(builtin("counterexample").triple(), 1e-14).ok());
}

TEST_CASE("mismatches are reported", "[catalog]") {
  auto e = builtin("counterexample");
  e.expected.positive = true;
  e.expected.case_label = CaseLabel::Case1;
  const auto bad = expectation_mismatches(e);
  CHECK(bad == std::vector<std::string>{"positive", "case_label"});
}

TEST_CASE("catalog errors", "[catalog]") {
  try {
    builtin("universal-cloner");
    FAIL("expected UnknownName");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::UnknownName);
  }
  CHECK_THROWS_AS(builtin("projective-discard", 1.0), Error);
  CHECK_THROWS_AS(builtin("phase-state", 0.0), Error);
}
