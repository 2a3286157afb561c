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

// Trigonometric Laurent polynomials in x = e^{i phi}.
//
// A FirstOrderPoly is W = a x + b x^{-1} + c. Products of two of them are
// LaurentPoly values with degrees in [-2, 2]. Every nonzero FirstOrderPoly
// has a unique (up to root order) decomposition form:
//
//   a != 0          W = a (x + w0)(w1 x^{-1} + 1)     (x W = a (x + w0)(x + w1))
//   a == 0, c != 0  W = c (w x^{-1} + 1)
//   a == c == 0     W = b x^{-1}

#ifndef PHASEMAP_TRIGPOLY_HPP_
#define PHASEMAP_TRIGPOLY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "phasemap/error.hpp"

namespace phasemap {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Coefficients at or below this fraction of (1 + max |coefficient|) count as
// zero when choosing a decomposition branch.
inline constexpr double kZeroThreshold = 1e-13;

class FirstOrderPoly {
 public:
  FirstOrderPoly() = default;

  FirstOrderPoly(Complex a, Complex b, Complex c) : a_(a), b_(b), c_(c) {
    if (!is_finite(a) || !is_finite(b) || !is_finite(c)) {
      throw Error(ErrorCode::NonFinite, "FirstOrderPoly coefficient");
    }
  }

  static FirstOrderPoly constant(Complex c) { return {0.0, 0.0, c}; }

  /// Coefficient of e^{i phi}.
  Complex a() const noexcept { return a_; }
  /// Coefficient of e^{-i phi}.
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }

  double max_abs() const noexcept {
    return std::max({std::abs(a_), std::abs(b_), std::abs(c_)});
  }

  bool is_zero() const noexcept {
    return a_ == 0.0 && b_ == 0.0 && c_ == 0.0;
  }

  bool is_phase_dependent() const noexcept { return a_ != 0.0 || b_ != 0.0; }

  // Pointwise complex conjugate as a function of phi: conj(W(phi)).
  FirstOrderPoly conj() const {
    return {std::conj(b_), std::conj(a_), std::conj(c_)};
  }

  friend FirstOrderPoly operator+(const FirstOrderPoly &p,
                                  const FirstOrderPoly &q) {
    return {p.a_ + q.a_, p.b_ + q.b_, p.c_ + q.c_};
  }
  friend FirstOrderPoly operator-(const FirstOrderPoly &p,
                                  const FirstOrderPoly &q) {
    return {p.a_ - q.a_, p.b_ - q.b_, p.c_ - q.c_};
  }
  friend FirstOrderPoly operator*(Complex k, const FirstOrderPoly &p) {
    return {k * p.a_, k * p.b_, k * p.c_};
  }
  friend FirstOrderPoly operator*(const FirstOrderPoly &p, Complex k) {
    return k * p;
  }
  friend bool operator==(const FirstOrderPoly &, const FirstOrderPoly &) =
      default;

 private:
  Complex a_{};
  Complex b_{};
  Complex c_{};
};

inline double max_abs_diff(const FirstOrderPoly &p, const FirstOrderPoly &q) {
  return (p - q).max_abs();
}

/// Laurent polynomial with degrees restricted to [-2, 2].
class LaurentPoly {
 public:
  static constexpr int kMinDegree = -2;
  static constexpr int kMaxDegree = 2;

  LaurentPoly() = default;

  LaurentPoly(std::initializer_list<std::pair<int, Complex>> terms) {
    for (const auto &[k, v] : terms) set(k, coeff(k) + v);
  }

  Complex coeff(int k) const noexcept {
    if (k < kMinDegree || k > kMaxDegree) return 0.0;
    return coeffs_[static_cast<std::size_t>(k - kMinDegree)];
  }

  void set(int k, Complex v) {
    if (k < kMinDegree || k > kMaxDegree) {
      throw Error(ErrorCode::InvalidArgument,
                  "LaurentPoly degree outside [-2, 2]");
    }
    if (!is_finite(v)) throw Error(ErrorCode::NonFinite, "LaurentPoly coeff");
    coeffs_[static_cast<std::size_t>(k - kMinDegree)] = v;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto &v : coeffs_) m = std::max(m, std::abs(v));
    return m;
  }

  friend LaurentPoly operator-(const LaurentPoly &p, const LaurentPoly &q) {
    LaurentPoly r;
    for (int k = kMinDegree; k <= kMaxDegree; ++k)
      r.set(k, p.coeff(k) - q.coeff(k));
    return r;
  }
  friend LaurentPoly operator+(const LaurentPoly &p, const LaurentPoly &q) {
    LaurentPoly r;
    for (int k = kMinDegree; k <= kMaxDegree; ++k)
      r.set(k, p.coeff(k) + q.coeff(k));
    return r;
  }
  friend bool operator==(const LaurentPoly &, const LaurentPoly &) = default;

 private:
  std::array<Complex, 5> coeffs_{};
};

inline LaurentPoly to_laurent(const FirstOrderPoly &p) {
  return {{1, p.a()}, {-1, p.b()}, {0, p.c()}};
}

// ---------------------------------------------------------------------------
// Decomposition forms
// ---------------------------------------------------------------------------

/// W = scale (x + w0)(w1 x^{-1} + 1); roots -w0, -w1 of x W(x).
struct FullForm {
  Complex scale;
  Complex w0;
  Complex w1;
};

/// W = scale (w x^{-1} + 1).
struct AffineForm {
  Complex scale;
  Complex w;
};

/// W = b x^{-1}.
struct PureNegForm {
  Complex b;
};

using DecompositionForm = std::variant<FullForm, AffineForm, PureNegForm>;

inline Complex form_scale(const DecompositionForm &f) {
  return std::visit(
      [](const auto &v) -> Complex {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PureNegForm>) {
          return v.b;
        } else {
          return v.scale;
        }
      },
      f);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

inline Complex eval_at(const FirstOrderPoly &p, Complex x) {
  return p.a() * x + p.b() * std::conj(x) + p.c();
}

inline Complex eval(const FirstOrderPoly &p, double phi) {
  return eval_at(p, std::polar(1.0, phi));
}

inline Complex eval(const LaurentPoly &p, double phi) {
  Complex sum = 0.0;
  for (int k = LaurentPoly::kMinDegree; k <= LaurentPoly::kMaxDegree; ++k)
    sum += p.coeff(k) * std::polar(1.0, k * phi);
  return sum;
}

/// True when W(phi) is real for every phi: b = conj(a) and c real.
inline bool is_real_valued(const FirstOrderPoly &p, double tol) {
  return std::abs(p.b() - std::conj(p.a())) <= tol &&
         std::abs(p.c().imag()) <= tol;
}

inline LaurentPoly mul(const FirstOrderPoly &p, const FirstOrderPoly &q) {
  return {{2, p.a() * q.a()},
          {-2, p.b() * q.b()},
          {1, p.a() * q.c() + p.c() * q.a()},
          {-1, p.b() * q.c() + p.c() * q.b()},
          {0, p.a() * q.b() + p.b() * q.a() + p.c() * q.c()}};
}

inline bool has_second_order(const LaurentPoly &lp, double tol) {
  return std::abs(lp.coeff(2)) > tol || std::abs(lp.coeff(-2)) > tol;
}

struct Quotient {
  FirstOrderPoly value;
  /// max |num - den * value| over all coefficients.
  double residual = 0.0;
};

// Best first-order quotient of num by den. With N(x) = x^2 num,
// D(x) = x den and Q(x) = x q, N = D Q is a 5x3 linear system in the
// coefficients of Q (a convolution matrix of full column rank), solved in the
// least-squares sense by Householder QR. Never throws on non-divisibility;
// the residual reports how far off the quotient is.
inline Quotient divide(const LaurentPoly &num, const FirstOrderPoly &den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by zero");

  const std::array<Complex, 3> d{den.b(), den.c(), den.a()};
  std::array<std::array<Complex, 3>, 5> A{};
  std::array<Complex, 5> rhs{};
  for (int k = 0; k < 5; ++k) {
    rhs[static_cast<std::size_t>(k)] = num.coeff(k - 2);
    for (int j = 0; j < 3; ++j) {
      const int m = k - j;
      if (m >= 0 && m <= 2) {
        A[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
            d[static_cast<std::size_t>(m)];
      }
    }
  }

  for (std::size_t j = 0; j < 3; ++j) {
    double norm = 0.0;
    for (std::size_t k = j; k < 5; ++k) norm += std::norm(A[k][j]);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const Complex x0 = A[j][j];
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * norm;
    std::array<Complex, 5> v{};
    for (std::size_t k = j; k < 5; ++k) v[k] = A[k][j];
    v[j] -= alpha;
    double vnorm = 0.0;
    for (std::size_t k = j; k < 5; ++k) vnorm += std::norm(v[k]);
    if (vnorm == 0.0) continue;
    // Apply H = I - 2 v v^H / (v^H v) to the trailing columns and rhs.
    auto reflect = [&](auto &&get) {
      Complex dot = 0.0;
      for (std::size_t k = j; k < 5; ++k) dot += std::conj(v[k]) * get(k);
      const Complex f = 2.0 * dot / vnorm;
      for (std::size_t k = j; k < 5; ++k) get(k) -= f * v[k];
    };
    for (std::size_t c = j; c < 3; ++c) {
      reflect([&](std::size_t k) -> Complex & { return A[k][c]; });
    }
    reflect([&](std::size_t k) -> Complex & { return rhs[k]; });
  }

  std::array<Complex, 3> q{};
  for (std::size_t j = 3; j-- > 0;) {
    Complex acc = rhs[j];
    for (std::size_t c = j + 1; c < 3; ++c) acc -= A[j][c] * q[c];
    q[j] = acc / A[j][j];
  }

  Quotient out;
  out.value = FirstOrderPoly(q[2], q[0], q[1]);
  out.residual = (num - mul(den, out.value)).max_abs();
  return out;
}

/// Exact division num / den; the quotient must be first order.
inline FirstOrderPoly exact_div(const LaurentPoly &num,
                                const FirstOrderPoly &den, double tol) {
  const Quotient q = divide(num, den);
  if (q.residual > tol * num.max_abs()) {
    throw Error(ErrorCode::NotDivisible,
                "residual " + std::to_string(q.residual));
  }
  return q.value;
}

/// Roots of a2 x^2 + a1 x + a0 with a2 != 0, larger magnitude first.
inline std::array<Complex, 2> quadratic_roots(Complex a2, Complex a1,
                                              Complex a0) {
  const Complex sq = std::sqrt(a1 * a1 - 4.0 * a2 * a0);
  // Pick the sign that avoids cancellation in a1 + sign * sq.
  const double sign = (std::real(std::conj(a1) * sq) >= 0.0) ? 1.0 : -1.0;
  const Complex q = -0.5 * (a1 + sign * sq);
  if (q == 0.0) return {Complex{}, Complex{}};
  return {q / a2, a0 / q};
}

namespace detail {

// Descending modulus, then ascending argument.
inline void canonical_order(Complex &w0, Complex &w1) {
  const double m0 = std::abs(w0);
  const double m1 = std::abs(w1);
  const double scale = std::max({1.0, m0, m1});
  bool swap = false;
  if (std::abs(m0 - m1) > 1e-12 * scale) {
    swap = m1 > m0;
  } else {
    swap = std::arg(w1) < std::arg(w0);
  }
  if (swap) std::swap(w0, w1);
}

}  // namespace detail

inline DecompositionForm factorize(const FirstOrderPoly &p) {
  const double thr = kZeroThreshold * (1.0 + p.max_abs());
  if (p.max_abs() <= thr || p.is_zero()) {
    throw Error(ErrorCode::ZeroPolynomial, "factorize of zero polynomial");
  }
  if (std::abs(p.a()) > thr) {
    // x W = a x^2 + c x + b = a (x + w0)(x + w1)
    const auto roots = quadratic_roots(p.a(), p.c(), p.b());
    Complex w0 = -roots[0];
    Complex w1 = -roots[1];
    detail::canonical_order(w0, w1);
    return FullForm{p.a(), w0, w1};
  }
  if (std::abs(p.c()) > thr) return AffineForm{p.c(), p.b() / p.c()};
  return PureNegForm{p.b()};
}

inline FirstOrderPoly expand(const DecompositionForm &f) {
  return std::visit(
      [](const auto &v) -> FirstOrderPoly {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullForm>) {
          return {v.scale, v.scale * v.w0 * v.w1, v.scale * (v.w0 + v.w1)};
        } else if constexpr (std::is_same_v<T, AffineForm>) {
          return {0.0, v.scale * v.w, v.scale};
        } else {
          return {0.0, v.b, 0.0};
        }
      },
      f);
}

// Computed roots of a double root split by about sqrt(eps); pairs closer than
// this (relative) are treated as one root of multiplicity two.
inline constexpr double kDoubleRootMerge = 1e-6;

/// Multiplicity of -z as a root of x W(x), i.e. how many times the factor
/// (x + z) divides x W(x).
inline int contains_root(const FirstOrderPoly &p, Complex z, double tol) {
  if (z == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "contains_root needs z != 0");
  }
  const DecompositionForm f = factorize(p);
  const double radius = tol * std::max(1.0, std::abs(z));
  auto near = [&](Complex w) { return std::abs(w - z) <= radius; };

  if (const auto *full = std::get_if<FullForm>(&f)) {
    const double scale =
        std::max({1.0, std::abs(full->w0), std::abs(full->w1)});
    if (std::abs(full->w0 - full->w1) <= kDoubleRootMerge * scale) {
      return near(0.5 * (full->w0 + full->w1)) ? 2 : 0;
    }
    return (near(full->w0) ? 1 : 0) + (near(full->w1) ? 1 : 0);
  }
  if (const auto *affine = std::get_if<AffineForm>(&f)) {
    return near(affine->w) ? 1 : 0;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

inline std::ostream &operator<<(std::ostream &os, const FirstOrderPoly &p) {
  return os << "(" << p.a() << ", " << p.b() << ", " << p.c() << ")";
}

inline std::ostream &operator<<(std::ostream &os, const DecompositionForm &f) {
  std::visit(
      [&os](const auto &v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FullForm>) {
          os << "Full{scale=" << v.scale << ", w0=" << v.w0 << ", w1=" << v.w1
             << "}";
        } else if constexpr (std::is_same_v<T, AffineForm>) {
          os << "Affine{scale=" << v.scale << ", w=" << v.w << "}";
        } else {
          os << "PureNeg{b=" << v.b << "}";
        }
      },
      f);
  return os;
}

}  // namespace phasemap

#endif  // PHASEMAP_TRIGPOLY_HPP_
