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

// Uncorrelated-cloning analysis of a triple (Lambda_12, Lambda_1, Lambda_2).
//
// With P = alpha (x + p0)(p1 x^{-1} + 1), the relation
//   x P * x [Lambda_12] = x [Lambda_1] * x [Lambda_2]
// forces the factors (x + p0), (x + p1) to be distributed over the entries of
// Lambda_1 and Lambda_2. Which entries of Lambda_2 carry them decides the case:
//   Case 1  some nonzero entry of Lambda_2 carries neither factor
//   Case 2  otherwise, some nonzero entry carries exactly one
//   Case 3  every nonzero entry carries both
// In Cases 1 and 3 one output is P times a constant operator. In Case 2 that
// conclusion needs positivity on top of hermiticity.

#ifndef PHASEMAP_CLONING_HPP_
#define PHASEMAP_CLONING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string_view>
#include <variant>
#include <vector>

#include "phasemap/error.hpp"
#include "phasemap/hermitian.hpp"
#include "phasemap/phase_operator.hpp"
#include "phasemap/positivity.hpp"
#include "phasemap/trigpoly.hpp"

namespace phasemap {

// Relative distance at which a root of x W(x) counts as a factor of P.
inline constexpr double kRootMatchTol = 1e-8;
inline constexpr double kDefaultTol = 1e-9;

enum class CaseLabel { ConstantProbability, Case1, Case2, Case3 };

inline std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::ConstantProbability: return "ConstantProbability";
    case CaseLabel::Case1: return "Case 1";
    case CaseLabel::Case2: return "Case 2";
    case CaseLabel::Case3: return "Case 3";
  }
  return "?";
}

/// Shape of a nonzero Lambda_1 entry in Case 2:
/// x [Lambda_1]_ij = scale (x + f0)            when M = 0
///                 = scale (x + f0)(x + f)     when M = 1
/// where f0 is the factor of P that every Lambda_1 entry must carry.
struct EntryForm {
  std::size_t i = 0;
  std::size_t j = 0;
  int M = 0;
  Complex scale;
  std::optional<Complex> f;
};

struct CaseVerdict {
  CaseLabel label = CaseLabel::ConstantProbability;
  /// Filled for Case 2 only.
  std::vector<EntryForm> entry_forms;
};

/// A phi-independent operator Gamma with Lambda = P Gamma.
struct ConstantOperator {
  CMatrix matrix;

  std::size_t dim() const noexcept { return matrix.dim(); }
  Complex trace() const { return matrix.trace(); }
};

struct PhaseDependence {
  bool depends = true;
  std::optional<ConstantOperator> gamma;
};

// ---------------------------------------------------------------------------

namespace detail {

struct Inlay {
  bool has_p0 = false;
  bool has_p1 = false;
  bool both = false;
  bool neither = false;
};

inline Inlay inlay_of(const FirstOrderPoly &w,
                      const ProbabilityDecomposition &d) {
  Inlay in;
  if (d.double_root()) {
    const int m = contains_root(w, d.p0, kRootMatchTol);
    in.has_p0 = in.has_p1 = m >= 1;
    in.both = m >= 2;
    in.neither = m == 0;
    return in;
  }
  in.has_p0 = contains_root(w, d.p0, kRootMatchTol) >= 1;
  in.has_p1 = contains_root(w, d.p1, kRootMatchTol) >= 1;
  in.both = in.has_p0 && in.has_p1;
  in.neither = !in.has_p0 && !in.has_p1;
  return in;
}

inline void require_valid(const UncorrelatedTriple &t, double tol) {
  if (!is_hermitian_preserving(t.out1, tol) ||
      !is_hermitian_preserving(t.out2, tol) ||
      !is_hermitian_preserving(t.joint.flat(), tol)) {
    throw Error(ErrorCode::PreconditionViolated, "triple is not hermitian-preserving");
  }
  if (!validate_triple(t, tol).ok()) {
    throw Error(ErrorCode::PreconditionViolated, "triple fails the relation");
  }
}

inline std::vector<EntryForm> case2_entry_forms(const PhaseOperator &out1,
                                                Complex complement,
                                                double tol) {
  std::vector<EntryForm> forms;
  for (std::size_t i = 0; i < out1.dim(); ++i)
    for (std::size_t j = 0; j < out1.dim(); ++j) {
      const FirstOrderPoly &w = out1(i, j);
      if (w.max_abs() <= tol) continue;
      const DecompositionForm f = factorize(w);
      EntryForm e{i, j, 0, form_scale(f), std::nullopt};
      if (const auto *full = std::get_if<FullForm>(&f)) {
        e.M = 1;
        e.f = std::abs(full->w0 - complement) <= std::abs(full->w1 - complement)
                  ? full->w1
                  : full->w0;
      }
      forms.push_back(e);
    }
  return forms;
}

}  // namespace detail

/// Whether Lambda / P varies with phi. Gamma is read off at the phase where
/// |P| is largest, then every entry is checked against Gamma_ij P.
inline PhaseDependence output_depends_on_phase(const PhaseOperator &out,
                                               const FirstOrderPoly &P,
                                               double tol = kDefaultTol) {
  constexpr int kCoarse = 64;
  double best_phi = 0.0;
  double best_abs = -1.0;
  for (int k = 0; k < kCoarse; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / kCoarse;
    const double v = std::abs(eval(P, phi));
    if (v > best_abs) {
      best_abs = v;
      best_phi = phi;
    }
  }
  if (best_abs <= tol) {
    throw Error(ErrorCode::ZeroProbabilityEverywhere, "P vanishes identically");
  }

  ConstantOperator gamma{normalized_output(out, P, best_phi, 0.0)};
  for (std::size_t i = 0; i < out.dim(); ++i)
    for (std::size_t j = 0; j < out.dim(); ++j) {
      const FirstOrderPoly expected = gamma.matrix(i, j) * P;
      if (max_abs_diff(out(i, j), expected) > tol * (1.0 + out(i, j).max_abs())) {
        return {true, std::nullopt};
      }
    }
  return {false, std::move(gamma)};
}

inline CaseVerdict classify(const UncorrelatedTriple &t,
                            double tol = kDefaultTol) {
  detail::require_valid(t, tol);
  const FirstOrderPoly P = trace_poly(t.out1);

  ProbabilityDecomposition d;
  try {
    d = decompose_probability(P, tol);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::ConstantProbability) {
      return {CaseLabel::ConstantProbability, {}};
    }
    throw;
  }

  bool any_neither = false;
  bool any_one = false;
  std::optional<Complex> complement;
  for (std::size_t mu = 0; mu < t.out2.dim(); ++mu)
    for (std::size_t nu = 0; nu < t.out2.dim(); ++nu) {
      const FirstOrderPoly &w = t.out2(mu, nu);
      if (w.max_abs() <= tol) continue;
      const detail::Inlay in = detail::inlay_of(w, d);
      if (in.neither) {
        any_neither = true;
      } else if (!in.both) {
        any_one = true;
        if (!complement) complement = in.has_p1 ? d.p0 : d.p1;
      }
    }

  if (any_neither) return {CaseLabel::Case1, {}};
  if (any_one) {
    return {CaseLabel::Case2,
            detail::case2_entry_forms(t.out1, *complement, tol)};
  }
  return {CaseLabel::Case3, {}};
}

struct Case2Forcing {
  /// Lambda_1 = P Gamma_1 with Gamma_1 diagonal >= 0.
  bool out1_constant = false;
  /// Checked only when the swapped triple is Case 2 as well.
  std::optional<bool> out2_constant;

  bool holds() const noexcept {
    return out1_constant && out2_constant.value_or(true);
  }
};

namespace detail {

inline bool forced_constant(const PhaseOperator &out, const FirstOrderPoly &P,
                            double tol) {
  const PhaseDependence dep = output_depends_on_phase(out, P, tol);
  if (dep.depends) return false;
  for (std::size_t i = 0; i < out.dim(); ++i)
    if (dep.gamma->matrix(i, i).real() < -tol) return false;
  return true;
}

}  // namespace detail

/// For a positive Case 2 triple, positivity must force Lambda_1 = P Gamma_1.
/// The same check runs on Lambda_2 when the swapped triple is also Case 2.
inline Case2Forcing case2_forcing_detail(const UncorrelatedTriple &t,
                                         double tol = kDefaultTol,
                                         std::size_t grid = kDefaultGrid) {
  const CaseVerdict v = classify(t, tol);
  if (v.label != CaseLabel::Case2) {
    throw Error(ErrorCode::PreconditionViolated, "triple is not Case 2");
  }
  for (const PhaseOperator *op : {&t.joint.flat(), &t.out1, &t.out2}) {
    if (!is_positive_over_phase(*op, kPositivityTol, grid).positive) {
      throw Error(ErrorCode::PreconditionViolated, "triple is not positive");
    }
  }
  const FirstOrderPoly P = trace_poly(t.out1);
  Case2Forcing out;
  out.out1_constant = detail::forced_constant(t.out1, P, tol);
  if (classify(swap_systems(t), tol).label == CaseLabel::Case2) {
    out.out2_constant = detail::forced_constant(t.out2, P, tol);
  }
  return out;
}

inline bool case2_forcing_check(const UncorrelatedTriple &t,
                                double tol = kDefaultTol,
                                std::size_t grid = kDefaultGrid) {
  return case2_forcing_detail(t, tol, grid).holds();
}

/// True iff Lambda_1 (x) Lambda_2 has an e^{+-2i phi} term somewhere, which
/// no linear joint map can produce.
inline bool deterministic_tensor_obstruction(const PhaseOperator &o1,
                                             const PhaseOperator &o2,
                                             double tol = kDefaultTol) {
  const LaurentMatrix t = tensor(o1, o2);
  return std::any_of(t.entries.begin(), t.entries.end(),
                     [tol](const LaurentPoly &p) {
                       return has_second_order(p, tol);
                     });
}

// ---------------------------------------------------------------------------
// Full report
// ---------------------------------------------------------------------------

struct AnalysisOptions {
  double tol = kDefaultTol;
  double positivity_tol = kPositivityTol;
  std::size_t grid = kDefaultGrid;
};

struct OperatorChecks {
  bool hp = false;
  /// Absent when the operator is not hermitian-preserving.
  std::optional<PositivityVerdict> positivity;

  bool positive() const noexcept {
    return positivity.has_value() && positivity->positive;
  }
};

struct CloningReport {
  OperatorChecks joint;
  OperatorChecks out1;
  OperatorChecks out2;
  std::optional<RelationReport> relation;
  std::variant<ProbabilityDecomposition, ErrorCode> probability;
  std::optional<CaseVerdict> case_verdict;
  std::optional<ErrorCode> case_error;
  bool out1_phase_dependent = false;
  bool out2_phase_dependent = false;
  bool theorem_consistent = true;

  bool hp_ok() const noexcept { return joint.hp && out1.hp && out2.hp; }
  bool relation_ok() const noexcept { return relation && relation->ok(); }
  bool all_positive() const noexcept {
    return joint.positive() && out1.positive() && out2.positive();
  }
  /// Smallest eigenvalue seen over the three operators (+inf if none ran).
  double min_eigenvalue() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (const OperatorChecks *c : {&joint, &out1, &out2})
      if (c->positivity) m = std::min(m, c->positivity->min_eigenvalue);
    return m;
  }
};

inline CloningReport analyze(const UncorrelatedTriple &t,
                             const AnalysisOptions &opt = {}) {
  CloningReport rep;
  auto check_op = [&](const PhaseOperator &op, OperatorChecks &out) {
    out.hp = is_hermitian_preserving(op, opt.tol);
    if (out.hp) out.positivity = is_positive_over_phase(op, opt.positivity_tol, opt.grid);
  };
  check_op(t.joint.flat(), rep.joint);
  check_op(t.out1, rep.out1);
  check_op(t.out2, rep.out2);

  try {
    rep.relation = validate_triple(t, opt.tol);
  } catch (const Error &) {
    rep.relation.reset();
  }

  const FirstOrderPoly P = trace_poly(t.out1);
  try {
    rep.probability = decompose_probability(P, opt.tol);
  } catch (const Error &e) {
    rep.probability = e.code();
  }

  if (rep.hp_ok() && rep.relation_ok()) {
    try {
      rep.case_verdict = classify(t, opt.tol);
    } catch (const Error &e) {
      rep.case_error = e.code();
    }
  } else {
    rep.case_error = ErrorCode::PreconditionViolated;
  }

  try {
    rep.out1_phase_dependent = output_depends_on_phase(t.out1, P, opt.tol).depends;
    rep.out2_phase_dependent = output_depends_on_phase(t.out2, P, opt.tol).depends;
  } catch (const Error &) {
    // P vanishes identically: there is no output to depend on phi.
    rep.out1_phase_dependent = rep.out2_phase_dependent = false;
  }

  rep.theorem_consistent = !(rep.all_positive() && rep.hp_ok() &&
                             rep.relation_ok() && rep.out1_phase_dependent &&
                             rep.out2_phase_dependent);
  return rep;
}

inline std::ostream &operator<<(std::ostream &os, const CaseVerdict &v) {
  os << to_string(v.label);
  if (v.label == CaseLabel::Case2) {
    for (const auto &e : v.entry_forms) {
      os << "\n  entry (" << e.i << "," << e.j << "): M=" << e.M
         << " s=" << e.scale;
      if (e.f) os << " f=" << *e.f;
    }
  }
  return os;
}

}  // namespace phasemap

#endif  // PHASEMAP_CLONING_HPP_
