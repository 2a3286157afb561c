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

// Map outputs restricted to the phase-set of qubit states
// sqrt(q)|0> + sqrt(1-q) e^{i phi}|1>. A linear map turns each matrix element
// into a FirstOrderPoly in e^{i phi}, so an output is a square matrix of them.

#ifndef PHASEMAP_PHASE_OPERATOR_HPP_
#define PHASEMAP_PHASE_OPERATOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "phasemap/error.hpp"
#include "phasemap/hermitian.hpp"
#include "phasemap/trigpoly.hpp"

namespace phasemap {

class PhaseOperator {
 public:
  explicit PhaseOperator(std::size_t dim = 1) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
  }

  PhaseOperator(std::initializer_list<std::initializer_list<FirstOrderPoly>> rows)
      : PhaseOperator(rows.size()) {
    std::size_t i = 0;
    for (const auto &row : rows) {
      if (row.size() != dim_) {
        throw Error(ErrorCode::DimensionMismatch, "PhaseOperator not square");
      }
      std::size_t j = 0;
      for (const auto &p : row) (*this)(i, j++) = p;
      ++i;
    }
  }

  static PhaseOperator identity(std::size_t dim) {
    PhaseOperator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op(i, i) = FirstOrderPoly::constant(1.0);
    return op;
  }

  std::size_t dim() const noexcept { return dim_; }

  FirstOrderPoly &operator()(std::size_t i, std::size_t j) {
    return entries_[i * dim_ + j];
  }
  const FirstOrderPoly &operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  const FirstOrderPoly &at(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "(" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    return (*this)(i, j);
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto &p : entries_) m = std::max(m, p.max_abs());
    return m;
  }

  friend bool operator==(const PhaseOperator &, const PhaseOperator &) = default;

 private:
  std::size_t dim_;
  std::vector<FirstOrderPoly> entries_;
};

inline double max_abs_diff(const PhaseOperator &x, const PhaseOperator &y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j)
      m = std::max(m, max_abs_diff(x(i, j), y(i, j)));
  return m;
}

/// Output on the joint system 1 (x) 2. Row and column index = i * dim2 + mu.
class JointPhaseOperator {
 public:
  JointPhaseOperator(std::size_t dim1, std::size_t dim2)
      : dim1_(dim1), dim2_(dim2), flat_(dim1 * dim2) {}

  JointPhaseOperator(std::size_t dim1, std::size_t dim2, PhaseOperator flat)
      : dim1_(dim1), dim2_(dim2), flat_(std::move(flat)) {
    if (flat_.dim() != dim1 * dim2) {
      throw Error(ErrorCode::DimensionMismatch,
                  "joint operator of size " + std::to_string(flat_.dim()) +
                      " is not " + std::to_string(dim1) + " x " +
                      std::to_string(dim2));
    }
  }

  std::size_t dim1() const noexcept { return dim1_; }
  std::size_t dim2() const noexcept { return dim2_; }
  const PhaseOperator &flat() const noexcept { return flat_; }

  FirstOrderPoly &operator()(std::size_t i, std::size_t mu, std::size_t j,
                             std::size_t nu) {
    return flat_(i * dim2_ + mu, j * dim2_ + nu);
  }
  const FirstOrderPoly &operator()(std::size_t i, std::size_t mu,
                                   std::size_t j, std::size_t nu) const {
    return flat_(i * dim2_ + mu, j * dim2_ + nu);
  }

  friend bool operator==(const JointPhaseOperator &,
                         const JointPhaseOperator &) = default;

 private:
  std::size_t dim1_;
  std::size_t dim2_;
  PhaseOperator flat_;
};

/// (Lambda_12, Lambda_1, Lambda_2) claimed to satisfy
/// P Lambda_12 = Lambda_1 (x) Lambda_2 with P = Tr Lambda_1.
struct UncorrelatedTriple {
  JointPhaseOperator joint;
  PhaseOperator out1;
  PhaseOperator out2;

  UncorrelatedTriple(JointPhaseOperator j, PhaseOperator o1, PhaseOperator o2)
      : joint(std::move(j)), out1(std::move(o1)), out2(std::move(o2)) {
    if (joint.dim1() != out1.dim() || joint.dim2() != out2.dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "joint dims do not match marginal dims");
    }
  }

  friend bool operator==(const UncorrelatedTriple &,
                         const UncorrelatedTriple &) = default;
};

class PhaseState {
 public:
  explicit PhaseState(double q) : q_(q) {
    if (!(q > 0.0 && q < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "phase-state q must be in (0, 1)");
    }
  }
  double q() const noexcept { return q_; }

 private:
  double q_;
};

/// Matrix of second-order Laurent polynomials (the raw tensor product).
struct LaurentMatrix {
  std::size_t dim = 0;
  std::vector<LaurentPoly> entries;

  const LaurentPoly &operator()(std::size_t i, std::size_t j) const {
    return entries[i * dim + j];
  }
};

// ---------------------------------------------------------------------------

inline void eval_matrix_into(const PhaseOperator &op, Complex x, CMatrix &out) {
  const std::size_t d = op.dim();
  if (out.dim() != d) out = CMatrix(d);
  const Complex xc = std::conj(x);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const FirstOrderPoly &p = op(i, j);
      out(i, j) = p.a() * x + p.b() * xc + p.c();
    }
}

inline CMatrix eval_matrix(const PhaseOperator &op, double phi) {
  CMatrix m(op.dim());
  eval_matrix_into(op, std::polar(1.0, phi), m);
  return m;
}

inline FirstOrderPoly trace_poly(const PhaseOperator &op) {
  FirstOrderPoly t;
  for (std::size_t i = 0; i < op.dim(); ++i) t = t + op(i, i);
  return t;
}

inline FirstOrderPoly trace_poly(const JointPhaseOperator &j) {
  return trace_poly(j.flat());
}

/// Partial trace keeping system `keep` (1 or 2).
inline PhaseOperator partial_trace(const JointPhaseOperator &j, int keep) {
  if (keep == 1) {
    PhaseOperator out(j.dim1());
    for (std::size_t a = 0; a < j.dim1(); ++a)
      for (std::size_t b = 0; b < j.dim1(); ++b)
        for (std::size_t mu = 0; mu < j.dim2(); ++mu)
          out(a, b) = out(a, b) + j(a, mu, b, mu);
    return out;
  }
  if (keep == 2) {
    PhaseOperator out(j.dim2());
    for (std::size_t mu = 0; mu < j.dim2(); ++mu)
      for (std::size_t nu = 0; nu < j.dim2(); ++nu)
        for (std::size_t i = 0; i < j.dim1(); ++i)
          out(mu, nu) = out(mu, nu) + j(i, mu, i, nu);
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "keep must be 1 or 2");
}

/// Entry (j, i) must be the pointwise conjugate of entry (i, j).
inline bool is_hermitian_preserving(const PhaseOperator &op, double tol) {
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = i; j < op.dim(); ++j)
      if (max_abs_diff(op(j, i), op(i, j).conj()) > tol) return false;
  return true;
}

inline LaurentMatrix tensor(const PhaseOperator &o1, const PhaseOperator &o2) {
  const std::size_t d1 = o1.dim();
  const std::size_t d2 = o2.dim();
  LaurentMatrix out{d1 * d2, std::vector<LaurentPoly>(d1 * d1 * d2 * d2)};
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t mu = 0; mu < d2; ++mu)
        for (std::size_t nu = 0; nu < d2; ++nu)
          out.entries[(i * d2 + mu) * out.dim + (j * d2 + nu)] =
              mul(o1(i, j), o2(mu, nu));
  return out;
}

/// Lambda_1 (x) Lambda_2 / P entrywise. Throws NotDivisible on the first entry
/// that does not reduce to first order.
inline JointPhaseOperator tensor_over(const PhaseOperator &o1,
                                      const PhaseOperator &o2,
                                      const FirstOrderPoly &P, double tol) {
  const LaurentMatrix t = tensor(o1, o2);
  PhaseOperator flat(t.dim);
  for (std::size_t r = 0; r < t.dim; ++r)
    for (std::size_t c = 0; c < t.dim; ++c)
      flat(r, c) = exact_div(t(r, c), P, tol);
  return {o1.dim(), o2.dim(), std::move(flat)};
}

/// Exchange the roles of systems 1 and 2.
inline UncorrelatedTriple swap_systems(const UncorrelatedTriple &t) {
  const std::size_t d1 = t.joint.dim1();
  const std::size_t d2 = t.joint.dim2();
  JointPhaseOperator j(d2, d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t jj = 0; jj < d1; ++jj)
      for (std::size_t mu = 0; mu < d2; ++mu)
        for (std::size_t nu = 0; nu < d2; ++nu)
          j(mu, i, nu, jj) = t.joint(i, mu, jj, nu);
  return {std::move(j), t.out2, t.out1};
}

struct RelationReport {
  bool traces_equal = false;
  bool relation_holds = false;
  bool partial_traces_consistent = false;
  double trace_residual = 0.0;
  double relation_residual = 0.0;
  double partial_trace_residual = 0.0;

  bool ok() const noexcept {
    return traces_equal && relation_holds && partial_traces_consistent;
  }
  double max_residual() const noexcept {
    return std::max({trace_residual, relation_residual, partial_trace_residual});
  }
};

/// Checks the trace equalities and P [Lambda_12]_{i mu, j nu} =
/// [Lambda_1]_{ij} [Lambda_2]_{mu nu} for every entry pair.
inline RelationReport validate_triple(const UncorrelatedTriple &t, double tol) {
  const FirstOrderPoly P = trace_poly(t.out1);
  if (P.max_abs() <= tol) {
    throw Error(ErrorCode::ZeroProbabilityEverywhere, "Tr Lambda_1 is zero");
  }
  RelationReport rep;
  rep.trace_residual = std::max(max_abs_diff(P, trace_poly(t.out2)),
                                max_abs_diff(P, trace_poly(t.joint)));
  rep.traces_equal = rep.trace_residual <= tol;

  const std::size_t d1 = t.out1.dim();
  const std::size_t d2 = t.out2.dim();
  const double p_norm = P.max_abs();
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t mu = 0; mu < d2; ++mu)
        for (std::size_t nu = 0; nu < d2; ++nu) {
          const Quotient q = divide(mul(t.out1(i, j), t.out2(mu, nu)), P);
          const double r = std::max(max_abs_diff(q.value, t.joint(i, mu, j, nu)),
                                    q.residual / p_norm);
          rep.relation_residual = std::max(rep.relation_residual, r);
        }
  rep.relation_holds = rep.relation_residual <= tol;

  rep.partial_trace_residual =
      std::max(max_abs_diff(partial_trace(t.joint, 1), t.out1),
               max_abs_diff(partial_trace(t.joint, 2), t.out2));
  rep.partial_traces_consistent = rep.partial_trace_residual <= tol;
  return rep;
}

/// |phi><phi| for the phase-set state with parameter q.
inline PhaseOperator phase_state_operator(const PhaseState &s) {
  const double q = s.q();
  const double off = std::sqrt(q * (1.0 - q));
  return {{FirstOrderPoly(0.0, 0.0, q), FirstOrderPoly(0.0, off, 0.0)},
          {FirstOrderPoly(off, 0.0, 0.0), FirstOrderPoly(0.0, 0.0, 1.0 - q)}};
}

/// Output state Lambda(phi) / P(phi).
inline CMatrix normalized_output(const PhaseOperator &op,
                                 const FirstOrderPoly &P, double phi,
                                 double tol) {
  const Complex p = eval(P, phi);
  if (std::abs(p) <= tol) {
    throw Error(ErrorCode::ZeroProbabilityAtPhase,
                "P(" + std::to_string(phi) + ") = 0");
  }
  CMatrix m = eval_matrix(op, phi);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) m(i, j) /= p;
  return m;
}

}  // namespace phasemap

#endif  // PHASEMAP_PHASE_OPERATOR_HPP_
