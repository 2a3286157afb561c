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

#ifndef PHASEMAP_HERMITIAN_HPP_
#define PHASEMAP_HERMITIAN_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <vector>

#include "phasemap/error.hpp"

namespace phasemap {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : CMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto &row : rows) {
      if (row.size() != dim_) {
        throw Error(ErrorCode::DimensionMismatch, "CMatrix rows not square");
      }
      std::size_t j = 0;
      for (const auto &v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static CMatrix identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  Complex &operator()(std::size_t i, std::size_t j) {
    return data_[i * dim_ + j];
  }
  const Complex &operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

inline double max_abs_diff(const CMatrix &x, const CMatrix &y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < x.data().size(); ++k)
    m = std::max(m, std::abs(x.data()[k] - y.data()[k]));
  return m;
}

inline bool is_hermitian(const CMatrix &m, double tol) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

inline std::ostream &operator<<(std::ostream &os, const CMatrix &m) {
  os << "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

/// Smaller eigenvalue of the Hermitian 2x2 matrix [[h00, h01], [h10, h11]].
/// Only the Hermitian part is used.
inline double min_eigenvalue_2x2(Complex h00, Complex h01, Complex h10,
                                 Complex h11) {
  const double tr = h00.real() + h11.real();
  const double diff = h00.real() - h11.real();
  const double off = std::abs(0.5 * (h01 + std::conj(h10)));
  return 0.5 * (tr - std::hypot(diff, 2.0 * off));
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted ascending. Sweeps stop once the off-diagonal Frobenius norm falls
/// below tol * max(1, |A|_F).
inline std::vector<double> jacobi_eigenvalues(CMatrix a, double tol = 1e-12,
                                              int max_sweeps = 60) {
  const std::size_t n = a.dim();
  double frob = 0.0;
  for (const auto &v : a.data()) frob += std::norm(v);
  const double target = tol * std::max(1.0, std::sqrt(frob));

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps && off_norm() >= target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag < std::numeric_limits<double>::min()) continue;
        const Complex phase = g / mag;  // e^{i beta}
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex cph = std::conj(phase);

        // A <- A U, U = diag-phase times real rotation on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * cph * akq;
          a(k, q) = s * akp + c * cph * akq;
        }
        // A <- U^H A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Smallest eigenvalue: closed form for d <= 2, Jacobi otherwise.
inline double min_eigenvalue(const CMatrix &m) {
  switch (m.dim()) {
    case 0:
      throw Error(ErrorCode::InvalidArgument, "empty matrix");
    case 1:
      return m(0, 0).real();
    case 2:
      return min_eigenvalue_2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    default:
      return jacobi_eigenvalues(m).front();
  }
}

}  // namespace phasemap

#endif  // PHASEMAP_HERMITIAN_HPP_
