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

// Shared helpers for the test suite: seeded random objects and brute-force
// oracles that do not go through the library's own algebra.

#ifndef PHASEMAP_TESTS_SUPPORT_HPP_
#define PHASEMAP_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <variant>
#include <vector>

#include "phasemap/hermitian.hpp"
#include "phasemap/phase_operator.hpp"
#include "phasemap/trigpoly.hpp"

namespace phasemap::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }
  Complex complex(double magnitude = 1.0) {
    return std::polar(magnitude, uniform(0.0, kTwoPi));
  }
  /// Complex number with log-uniform magnitude in [lo, hi].
  Complex spread(double lo, double hi) { return complex(log_uniform(lo, hi)); }

  /// Random first-order polynomial; each coefficient is dropped with
  /// probability `sparse` so all decomposition branches are exercised.
  FirstOrderPoly poly(double sparse = 0.0) {
    for (;;) {
      const Complex a = chance(sparse) ? Complex{} : spread(1e-2, 1e2);
      const Complex b = chance(sparse) ? Complex{} : spread(1e-2, 1e2);
      const Complex c = chance(sparse) ? Complex{} : spread(1e-2, 1e2);
      if (a != 0.0 || b != 0.0 || c != 0.0) return {a, b, c};
    }
  }

  /// Real-valued first-order polynomial (b = conj a, c real).
  FirstOrderPoly real_poly(double alpha_abs, double R) {
    const Complex a = complex(alpha_abs);
    return {a, std::conj(a), R};
  }

  /// Hermitian-preserving operator with phase-dependent entries.
  PhaseOperator hp_operator(std::size_t d) {
    PhaseOperator op(d);
    for (std::size_t i = 0; i < d; ++i) {
      const Complex a = complex(uniform(0.1, 1.0));
      op(i, i) = {a, std::conj(a), uniform(-1.0, 1.0)};
      for (std::size_t j = i + 1; j < d; ++j) {
        op(i, j) = {complex(uniform(0.0, 1.0)), complex(uniform(0.0, 1.0)),
                    complex(uniform(0.0, 1.0))};
        op(j, i) = op(i, j).conj();
      }
    }
    return op;
  }

  CMatrix hermitian(std::size_t d) {
    CMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
      m(i, i) = uniform(-2.0, 2.0);
      for (std::size_t j = i + 1; j < d; ++j) {
        m(i, j) = complex(uniform(0.0, 2.0));
        m(j, i) = std::conj(m(i, j));
      }
    }
    return m;
  }

  std::mt19937_64 &engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// a e^{i phi} + b e^{-i phi} + c evaluated with cos/sin, independent of eval().
inline Complex direct_eval(const FirstOrderPoly &p, double phi) {
  const Complex e(std::cos(phi), std::sin(phi));
  const Complex ebar(std::cos(phi), -std::sin(phi));
  return p.a() * e + p.b() * ebar + p.c();
}

inline Complex direct_eval(const LaurentPoly &p, double phi) {
  Complex s = 0.0;
  for (int k = -2; k <= 2; ++k)
    s += p.coeff(k) * Complex(std::cos(k * phi), std::sin(k * phi));
  return s;
}

inline double grid_phi(std::size_t k, std::size_t n) {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(n);
}

/// Sum of coefficient magnitudes: bounds |p(phi)| for every phi.
inline double coef_norm1(const FirstOrderPoly &p) {
  return std::abs(p.a()) + std::abs(p.b()) + std::abs(p.c());
}

// Roots of x W(x) as a multiset, read from the form.
inline std::vector<Complex> roots_of(const DecompositionForm &f) {
  if (const auto *full = std::get_if<FullForm>(&f)) return {full->w0, full->w1};
  if (const auto *aff = std::get_if<AffineForm>(&f)) return {aff->w};
  return {};
}

inline bool same_multiset(std::vector<Complex> x, std::vector<Complex> y, double tol) {
  if (x.size() != y.size()) return false;
  if (x.size() == 1) {
    return std::abs(x[0] - y[0]) <= tol * std::max(1.0, std::abs(x[0]));
  }
  if (x.empty()) return true;
  auto ok = [&](Complex p, Complex q) {
    return std::abs(p - q) <= tol * std::max(1.0, std::abs(p));
  };
  return (ok(x[0], y[0]) && ok(x[1], y[1])) || (ok(x[0], y[1]) && ok(x[1], y[0]));
}

}  // namespace phasemap::testing

#endif  // PHASEMAP_TESTS_SUPPORT_HPP_
