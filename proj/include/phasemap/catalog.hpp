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

// Named reference maps. Coefficients are dyadic rationals and therefore
// exact in double precision.

#ifndef PHASEMAP_CATALOG_HPP_
#define PHASEMAP_CATALOG_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "phasemap/cloning.hpp"
#include "phasemap/error.hpp"
#include "phasemap/phase_operator.hpp"
#include "phasemap/positivity.hpp"
#include "phasemap/trigpoly.hpp"

namespace phasemap {

/// Properties a catalog entry is known to have. Unset fields are not asserted.
struct ExpectedReport {
  std::optional<bool> hp;
  std::optional<bool> relation;
  std::optional<bool> positive;
  std::optional<CaseLabel> case_label;
  std::optional<bool> out1_phase_dependent;
  std::optional<bool> out2_phase_dependent;
};

struct CatalogEntry {
  std::string name;
  std::variant<UncorrelatedTriple, PhaseOperator> payload;
  ExpectedReport expected;
  /// Comparison tolerance for analyses of this entry.
  double tol = 1e-12;

  bool is_triple() const noexcept {
    return std::holds_alternative<UncorrelatedTriple>(payload);
  }
  const UncorrelatedTriple &triple() const & {
    return std::get<UncorrelatedTriple>(payload);
  }
  UncorrelatedTriple triple() && {
    return std::get<UncorrelatedTriple>(std::move(payload));
  }
  const PhaseOperator &op() const & { return std::get<PhaseOperator>(payload); }
  PhaseOperator op() && { return std::get<PhaseOperator>(std::move(payload)); }
};

inline constexpr std::array<std::string_view, 6> kCatalogNames = {
    "counterexample",     "case1-example",      "case3-example",
    "footnote-linear-only", "projective-discard", "phase-state"};

namespace detail {

inline FirstOrderPoly fo(double a, double b, double c) { return {a, b, c}; }

inline CatalogEntry counterexample_entry() {
  // Both marginals: diagonal P/2, off-diagonal (1/x + 1) and (x + 1).
  const FirstOrderPoly diag = fo(1.0 / 8, 1.0 / 8, 1.0 / 4);
  const PhaseOperator out{{diag, fo(0, 1, 1)}, {fo(1, 0, 1), diag}};

  const FirstOrderPoly jd = fo(1.0 / 16, 1.0 / 16, 1.0 / 8);
  const FirstOrderPoly up = fo(0, 0.5, 0.5);
  const FirstOrderPoly down = fo(0.5, 0, 0.5);
  const PhaseOperator joint{{jd, up, up, fo(0, 4, 0)},
                            {down, jd, fo(0, 0, 4), up},
                            {down, fo(0, 0, 4), jd, up},
                            {fo(4, 0, 0), down, down, jd}};

  ExpectedReport e;
  e.hp = true;
  e.relation = true;
  e.positive = false;
  e.case_label = CaseLabel::Case2;
  e.out1_phase_dependent = true;
  e.out2_phase_dependent = true;
  return {"counterexample",
          UncorrelatedTriple(JointPhaseOperator(2, 2, joint), out, out), e};
}

inline CatalogEntry case1_entry() {
  // P = (x + 1/x)/8 + 1/2 = (x + 2 + sqrt3)((2 - sqrt3)/x + 1) / 8.
  const FirstOrderPoly half_p = fo(1.0 / 16, 1.0 / 16, 1.0 / 4);
  const PhaseOperator out1{{half_p, {}}, {{}, half_p}};
  const PhaseOperator out2{{fo(1.0 / 8, 1.0 / 8, 1.0 / 4), {}},
                           {{}, fo(0, 0, 1.0 / 4)}};
  const FirstOrderPoly jd = fo(1.0 / 16, 1.0 / 16, 1.0 / 8);
  const FirstOrderPoly k = fo(0, 0, 1.0 / 8);
  const PhaseOperator joint{{jd, {}, {}, {}},
                            {{}, k, {}, {}},
                            {{}, {}, jd, {}},
                            {{}, {}, {}, k}};
  ExpectedReport e;
  e.hp = true;
  e.relation = true;
  e.positive = true;
  e.case_label = CaseLabel::Case1;
  e.out1_phase_dependent = false;
  CatalogEntry entry{"case1-example",
                     UncorrelatedTriple(JointPhaseOperator(2, 2, joint), out1, out2),
                     e};
  entry.tol = 1e-10;
  return entry;
}

inline CatalogEntry case3_entry() {
  CatalogEntry c = case1_entry();
  CatalogEntry entry{"case3-example", swap_systems(c.triple()), {}};
  entry.expected.hp = true;
  entry.expected.relation = true;
  entry.expected.positive = true;
  entry.expected.case_label = CaseLabel::Case3;
  entry.expected.out2_phase_dependent = false;
  entry.tol = 1e-10;
  return entry;
}

inline CatalogEntry footnote_entry() {
  const FirstOrderPoly one = fo(0, 0, 1);
  const PhaseOperator out1{{one, {}}, {fo(1, 0, 0), {}}};
  const PhaseOperator out2{{one, {}}, {fo(0, 1, 0), {}}};
  const PhaseOperator joint{{one, {}, {}, {}},
                            {fo(0, 1, 0), {}, {}, {}},
                            {fo(1, 0, 0), {}, {}, {}},
                            {one, {}, {}, {}}};
  ExpectedReport e;
  e.hp = false;
  e.relation = true;
  return {"footnote-linear-only",
          UncorrelatedTriple(JointPhaseOperator(2, 2, joint), out1, out2), e};
}

inline CatalogEntry projective_discard_entry(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "q must be in (0, 1)");
  }
  const PhaseOperator out{{fo(0, 0, q), {}}, {{}, {}}};
  PhaseOperator joint(4);
  joint(0, 0) = fo(0, 0, q);
  ExpectedReport e;
  e.hp = true;
  e.relation = true;
  e.positive = true;
  e.case_label = CaseLabel::ConstantProbability;
  e.out1_phase_dependent = false;
  e.out2_phase_dependent = false;
  return {"projective-discard",
          UncorrelatedTriple(JointPhaseOperator(2, 2, joint), out, out), e};
}

inline CatalogEntry phase_state_entry(double q) {
  ExpectedReport e;
  e.hp = true;
  e.positive = true;
  return {"phase-state", phase_state_operator(PhaseState(q)), e};
}

}  // namespace detail

/// `q` is used by "projective-discard" and "phase-state" (default 1/2).
inline CatalogEntry builtin(std::string_view name,
                            std::optional<double> q = std::nullopt) {
  if (name == "counterexample") return detail::counterexample_entry();
  if (name == "case1-example") return detail::case1_entry();
  if (name == "case3-example") return detail::case3_entry();
  if (name == "footnote-linear-only") return detail::footnote_entry();
  if (name == "projective-discard") {
    return detail::projective_discard_entry(q.value_or(0.5));
  }
  if (name == "phase-state") return detail::phase_state_entry(q.value_or(0.5));
  throw Error(ErrorCode::UnknownName, "no catalog entry named '" +
                                          std::string(name) + "'");
}

/// Names of fields in `expected` that the analysis contradicts.
inline std::vector<std::string> expectation_mismatches(const CatalogEntry &entry) {
  std::vector<std::string> bad;
  const ExpectedReport &e = entry.expected;
  auto check = [&](const char *field, const std::optional<bool> &want, bool got) {
    if (want && *want != got) bad.emplace_back(field);
  };

  if (!entry.is_triple()) {
    const PhaseOperator &op = entry.op();
    const bool hp = is_hermitian_preserving(op, entry.tol);
    check("hp", e.hp, hp);
    if (e.positive) {
      check("positive", e.positive,
            hp && is_positive_over_phase(op, kPositivityTol).positive);
    }
    return bad;
  }

  const CloningReport r = analyze(entry.triple(), {entry.tol, kPositivityTol});
  check("hp", e.hp, r.hp_ok());
  check("relation", e.relation, r.relation_ok());
  check("positive", e.positive, r.all_positive());
  if (e.case_label &&
      (!r.case_verdict || r.case_verdict->label != *e.case_label)) {
    bad.emplace_back("case_label");
  }
  check("out1_phase_dependent", e.out1_phase_dependent, r.out1_phase_dependent);
  check("out2_phase_dependent", e.out2_phase_dependent, r.out2_phase_dependent);
  return bad;
}

}  // namespace phasemap

#endif  // PHASEMAP_CATALOG_HPP_
