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

#ifndef PHASEMAP_POSITIVITY_HPP_
#define PHASEMAP_POSITIVITY_HPP_

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "phasemap/error.hpp"
#include "phasemap/hermitian.hpp"
#include "phasemap/phase_operator.hpp"
#include "phasemap/trigpoly.hpp"

namespace phasemap {

inline constexpr double kPositivityTol = 1e-9;
inline constexpr std::size_t kDefaultGrid = 4096;

/// Factored form of a positive probability
///   P = 2|alpha| cos(phi - theta) + R
///     = |alpha| e^{-i theta} (x + p0)(p1 x^{-1} + 1),
/// with p0 = r e^{i theta}, p1 = e^{i theta} / r and r + 1/r = R / |alpha|.
struct ProbabilityDecomposition {
  double alpha_abs = 0.0;
  double theta = 0.0;
  double R = 0.0;
  double r = 1.0;
  Complex p0;
  Complex p1;

  FullForm form() const {
    return {std::polar(alpha_abs, -theta), p0, p1};
  }
  bool double_root() const noexcept { return r == 1.0; }
};

inline ProbabilityDecomposition decompose_probability(const FirstOrderPoly &P,
                                                      double tol = kPositivityTol) {
  if (!is_real_valued(P, tol)) {
    throw Error(ErrorCode::NotRealValued, "probability must be real for all phi");
  }
  const Complex alpha = P.a();
  ProbabilityDecomposition d;
  d.alpha_abs = std::abs(alpha);
  d.R = P.c().real();
  if (d.alpha_abs <= tol) {
    throw Error(ErrorCode::ConstantProbability, "alpha = 0");
  }
  // alpha = |alpha| e^{-i theta}
  d.theta = -std::arg(alpha);

  const double s = d.R / d.alpha_abs;
  if (s < 2.0 - tol) {
    throw Error(ErrorCode::NotPositive,
                "R/|alpha| = " + std::to_string(s) + " < 2");
  }
  if (s <= 2.0 + tol) {
    d.r = 1.0;
  } else {
    d.r = 0.5 * (s + std::sqrt((s - 2.0) * (s + 2.0)));
  }
  d.p0 = std::polar(d.r, d.theta);
  d.p1 = std::polar(1.0 / d.r, d.theta);
  return d;
}

struct ProfilePoint {
  double phi;
  double lambda_min;
};

struct PositivityVerdict {
  bool positive = true;
  /// Minimizing phase, present iff not positive.
  std::optional<double> witness_phi;
  double min_eigenvalue = 0.0;
  double argmin_phi = 0.0;
};

namespace detail {

inline double hermitian_tol(const PhaseOperator &op) {
  return 1e-9 * std::max(1.0, op.max_abs());
}

inline void require_hermitian(const PhaseOperator &op) {
  if (!is_hermitian_preserving(op, hermitian_tol(op))) {
    throw Error(ErrorCode::NotHermitian, "operator is not hermitian-preserving");
  }
}

inline double lambda_min_at(const PhaseOperator &op, double phi, CMatrix &buf) {
  eval_matrix_into(op, std::polar(1.0, phi), buf);
  return min_eigenvalue(buf);
}

}  // namespace detail

/// lambda_min(phi_k) on phi_k = 2 pi k / n.
inline std::vector<ProfilePoint> min_eigenvalue_profile(const PhaseOperator &op,
                                                        std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  detail::require_hermitian(op);
  std::vector<ProfilePoint> out;
  out.reserve(n);
  CMatrix buf(op.dim());
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(n);
    out.push_back({phi, detail::lambda_min_at(op, phi, buf)});
  }
  return out;
}

/// Grid minimum of lambda_min, refined by golden-section search on the two
/// cells around the best grid point.
inline PositivityVerdict is_positive_over_phase(const PhaseOperator &op,
                                                double tol = kPositivityTol,
                                                std::size_t n = kDefaultGrid) {
  const auto profile = min_eigenvalue_profile(op, n);
  std::size_t best = 0;
  for (std::size_t k = 1; k < profile.size(); ++k)
    if (profile[k].lambda_min < profile[best].lambda_min) best = k;

  double min_phi = profile[best].phi;
  double min_val = profile[best].lambda_min;

  CMatrix buf(op.dim());
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  double lo = min_phi - h;
  double hi = min_phi + h;
  const double inv_gold = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_gold * (hi - lo);
  double x2 = lo + inv_gold * (hi - lo);
  double f1 = detail::lambda_min_at(op, x1, buf);
  double f2 = detail::lambda_min_at(op, x2, buf);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_gold * (hi - lo);
      f1 = detail::lambda_min_at(op, x1, buf);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_gold * (hi - lo);
      f2 = detail::lambda_min_at(op, x2, buf);
    }
  }
  const double refined_phi = 0.5 * (lo + hi);
  const double refined = detail::lambda_min_at(op, refined_phi, buf);
  if (refined < min_val) {
    min_val = refined;
    min_phi = std::remainder(refined_phi, 2.0 * std::numbers::pi);
    if (min_phi < 0.0) min_phi += 2.0 * std::numbers::pi;
  }

  PositivityVerdict v;
  v.min_eigenvalue = min_val;
  v.argmin_phi = min_phi;
  v.positive = min_val >= -tol;
  if (!v.positive) v.witness_phi = min_phi;
  return v;
}

/// Positivity of the principal 2x2 family built from entries ii, ij, ji, jj.
inline PositivityVerdict submatrix_positivity(const PhaseOperator &op,
                                              std::size_t i, std::size_t j,
                                              double tol = kPositivityTol,
                                              std::size_t n = kDefaultGrid) {
  if (i >= op.dim() || j >= op.dim()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "(" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  if (i == j) throw Error(ErrorCode::InvalidArgument, "i and j must differ");
  detail::require_hermitian(op);
  const PhaseOperator sub{{op(i, i), op(i, j)}, {op(j, i), op(j, j)}};
  return is_positive_over_phase(sub, tol, n);
}

}  // namespace phasemap

#endif  // PHASEMAP_POSITIVITY_HPP_
