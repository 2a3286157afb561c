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

// Randomized search for uncorrelated-cloning triples that survive linearity,
// hermiticity and positivity while both outputs stay phase dependent.
//
// Candidates are drawn from the Case 2 family: P = alpha (x + p0)(p1/x + 1),
// every Lambda_1 entry carries the factor (x + p0), and off-diagonal entries
// take one of the forms
//   proportional   kappa P
//   affine         s (p0 / x + 1)
//   single factor  s (x + p0)(f / x + 1),  f != p1
// with the (j, i) entry set to the pointwise conjugate of (i, j). The joint
// output is Lambda_1 (x) Lambda_2 / P; samples where that is not first order
// are rejected and counted.

#ifndef PHASEMAP_SEARCH_HPP_
#define PHASEMAP_SEARCH_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "phasemap/cloning.hpp"
#include "phasemap/error.hpp"
#include "phasemap/phase_operator.hpp"
#include "phasemap/positivity.hpp"
#include "phasemap/trigpoly.hpp"

namespace phasemap {

enum class OffDiagonalBranch { Zero, Proportional, Affine, SingleFactor, Free };

struct SamplerParams {
  std::size_t dim = 2;
  /// Probability of drawing the double-root case r = 1.
  double r_one_probability = 0.5;
  /// For r > 1, probability of giving Lambda_1 a non-proportional off-diagonal
  /// (such samples are usually rejected).
  double out1_nonproportional_probability = 0.15;
  /// Probability that a diagonal weight vector has a negative component.
  double negative_weight_probability = 0.1;

  std::optional<double> alpha_abs;
  std::optional<double> theta;
  std::optional<double> r;
  std::optional<OffDiagonalBranch> out1_branch;
  std::optional<OffDiagonalBranch> out2_branch;
  std::optional<Complex> out1_off_scale;
  std::optional<Complex> out2_off_scale;
  std::optional<std::vector<double>> out1_weights;
  std::optional<std::vector<double>> out2_weights;
};

namespace detail {

// Independent stream per (seed, trial).
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

class Draw {
 public:
  explicit Draw(std::mt19937_64 &rng) : rng_(rng) {}

  // 53-bit uniform in [0, 1); portable across standard libraries.
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool chance(double p) { return unit() < p; }
  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }
  Complex phase(double magnitude) { return std::polar(magnitude, angle()); }

 private:
  std::mt19937_64 &rng_;
};

inline std::vector<double> draw_weights(Draw &draw, std::size_t d,
                                        double negative_probability) {
  std::vector<double> w(d);
  double sum = 0.0;
  for (auto &v : w) sum += (v = draw.uniform(0.2, 1.0));
  for (auto &v : w) v /= sum;
  if (d > 1 && draw.chance(negative_probability)) {
    // One negative weight; the rest rescaled so the total stays 1.
    const double delta = draw.uniform(0.05, 0.5);
    const double rest = 1.0 - w[d - 1];
    for (std::size_t i = 0; i + 1 < d; ++i) w[i] *= (1.0 + delta) / rest;
    w[d - 1] = -delta;
  }
  return w;
}

struct FamilyContext {
  FirstOrderPoly P;
  Complex alpha;
  Complex p0;
  Complex p1;
  double r;
};

inline FirstOrderPoly off_diagonal_entry(Draw &draw, OffDiagonalBranch branch,
                                         const FamilyContext &ctx,
                                         std::optional<Complex> scale,
                                         double wi, double wj) {
  const double amag = std::abs(ctx.alpha);
  switch (branch) {
    case OffDiagonalBranch::Zero:
      return {};
    case OffDiagonalBranch::Proportional: {
      const double bound = std::sqrt(std::abs(wi * wj));
      const Complex kappa = scale ? *scale / ctx.alpha
                                  : draw.phase(draw.uniform(0.0, 1.2) * bound);
      return kappa * ctx.P;
    }
    case OffDiagonalBranch::Affine: {
      const Complex s = scale.value_or(draw.phase(draw.uniform(0.1, 1.0) * amag));
      return expand(AffineForm{s, ctx.p0});
    }
    case OffDiagonalBranch::SingleFactor: {
      Complex f;
      do {
        f = draw.phase(draw.uniform(0.0, 2.5));
      } while (std::abs(f - ctx.p1) < 0.25);
      const Complex s = scale.value_or(
          draw.phase(draw.uniform(0.1, 1.0) * amag / std::max(1.0, std::abs(f))));
      return expand(FullForm{s, ctx.p0, f});
    }
    case OffDiagonalBranch::Free: {
      const Complex s = scale.value_or(draw.phase(draw.uniform(0.1, 1.0) * amag));
      return {s * draw.phase(draw.uniform(0.0, 1.0)),
              s * draw.phase(draw.uniform(0.0, 1.0)), s};
    }
  }
  return {};
}

inline PhaseOperator build_output(Draw &draw, const FamilyContext &ctx,
                                  const std::vector<double> &weights,
                                  const std::vector<OffDiagonalBranch> &branches,
                                  std::optional<Complex> scale) {
  const std::size_t d = weights.size();
  PhaseOperator op(d);
  for (std::size_t i = 0; i < d; ++i) op(i, i) = weights[i] * ctx.P;
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      op(i, j) = off_diagonal_entry(draw, branches[k++], ctx, scale, weights[i],
                                    weights[j]);
      op(j, i) = op(i, j).conj();
    }
  return op;
}

inline OffDiagonalBranch pick(Draw &draw,
                              std::initializer_list<std::pair<OffDiagonalBranch, double>> table) {
  double u = draw.unit();
  for (const auto &[b, p] : table) {
    if (u < p) return b;
    u -= p;
  }
  return table.begin()->first;
}

}  // namespace detail

/// One draw from the structured Case 2 family; nullopt when the joint
/// output is not first order.
inline std::optional<UncorrelatedTriple> try_generate_case2_candidate(
    std::uint64_t seed, std::uint64_t trial, const SamplerParams &params = {},
    double tol = kDefaultTol) {
  using B = OffDiagonalBranch;
  auto rng = detail::trial_rng(seed, trial);
  detail::Draw draw(rng);
  const std::size_t d = params.dim;
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");

  const double alpha_abs = params.alpha_abs.value_or(draw.uniform(0.1, 2.0));
  const double theta = params.theta.value_or(draw.angle());
  double r = 1.0;
  if (params.r) {
    r = *params.r;
  } else if (!draw.chance(params.r_one_probability)) {
    r = draw.uniform(1.0, 4.0);
  }
  if (r < 1.0) throw Error(ErrorCode::InvalidArgument, "r must be >= 1");

  detail::FamilyContext ctx;
  ctx.alpha = std::polar(alpha_abs, -theta);
  ctx.r = r;
  ctx.p0 = std::polar(r, theta);
  ctx.p1 = std::polar(1.0 / r, theta);
  // Built directly in real-valued form so hermiticity is exact.
  ctx.P = FirstOrderPoly(ctx.alpha, std::conj(ctx.alpha), alpha_abs * (r + 1.0 / r));

  const std::size_t pairs = d * (d - 1) / 2;
  std::vector<B> b1(pairs);
  std::vector<B> b2(pairs);
  const bool double_root = r == 1.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    if (params.out1_branch) {
      b1[k] = *params.out1_branch;
    } else if (double_root) {
      b1[k] = detail::pick(draw, {{B::Proportional, 0.25}, {B::Affine, 0.3},
                                  {B::SingleFactor, 0.3}, {B::Zero, 0.15}});
    } else if (draw.chance(params.out1_nonproportional_probability)) {
      b1[k] = detail::pick(draw, {{B::Affine, 0.5}, {B::SingleFactor, 0.5}});
    } else {
      b1[k] = detail::pick(draw, {{B::Proportional, 0.8}, {B::Zero, 0.2}});
    }
    if (params.out2_branch) {
      b2[k] = *params.out2_branch;
    } else if (double_root) {
      b2[k] = detail::pick(draw, {{B::Proportional, 0.25}, {B::Affine, 0.3},
                                  {B::SingleFactor, 0.3}, {B::Zero, 0.15}});
    } else {
      b2[k] = detail::pick(draw, {{B::Proportional, 0.3}, {B::SingleFactor, 0.35},
                                  {B::Affine, 0.15}, {B::Free, 0.1}, {B::Zero, 0.1}});
    }
  }

  const auto w1 = params.out1_weights.value_or(
      detail::draw_weights(draw, d, params.negative_weight_probability));
  const auto w2 = params.out2_weights.value_or(
      detail::draw_weights(draw, d, params.negative_weight_probability));
  if (w1.size() != d || w2.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "weight vector size");
  }

  PhaseOperator out1 = detail::build_output(draw, ctx, w1, b1, params.out1_off_scale);
  PhaseOperator out2 = detail::build_output(draw, ctx, w2, b2, params.out2_off_scale);
  try {
    JointPhaseOperator joint = tensor_over(out1, out2, ctx.P, tol);
    return UncorrelatedTriple(std::move(joint), std::move(out1), std::move(out2));
  } catch (const Error &e) {
    if (e.code() == ErrorCode::NotDivisible) return std::nullopt;
    throw;
  }
}

inline UncorrelatedTriple generate_case2_candidate(std::uint64_t seed,
                                                   std::uint64_t trial = 0,
                                                   const SamplerParams &params = {},
                                                   double tol = kDefaultTol) {
  auto t = try_generate_case2_candidate(seed, trial, params, tol);
  if (!t) throw Error(ErrorCode::SampleRejected, "joint output not first order");
  return std::move(*t);
}

// ---------------------------------------------------------------------------

struct SearchWitness {
  std::size_t trial = 0;
  double lambda_min = 0.0;
  double phi = 0.0;
};

struct SearchReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t constant_probability = 0;
  std::size_t case1 = 0;
  std::size_t case2 = 0;
  std::size_t case3 = 0;
  std::size_t unclassified = 0;
  std::size_t all_positive = 0;
  std::size_t both_phase_dependent = 0;
  std::size_t case2_forcing_checked = 0;
  std::size_t case2_forcing_failed = 0;
  /// Trials with theorem_consistent == false.
  std::vector<std::size_t> violations;
  /// One per sample with both outputs phase dependent.
  std::vector<SearchWitness> witnesses;
  /// Both-dependent samples without lambda_min < -kWitnessMargin.
  std::vector<std::size_t> missing_witnesses;

  static constexpr double kWitnessMargin = 1e-6;

  double acceptance_rate() const noexcept {
    return trials ? static_cast<double>(accepted) / static_cast<double>(trials) : 0.0;
  }
  bool ok() const noexcept {
    return violations.empty() && missing_witnesses.empty() &&
           case2_forcing_failed == 0;
  }
};

struct SearchOptions {
  double tol = kDefaultTol;
  /// Phase grid for positivity; refined by golden section around the minimum.
  std::size_t grid = 1024;
  SamplerParams sampler;
};

inline void record_trial(SearchReport &rep, std::size_t trial,
                         const UncorrelatedTriple &t, const CloningReport &cr,
                         double tol) {
  if (!cr.case_verdict) {
    ++rep.unclassified;
  } else {
    switch (cr.case_verdict->label) {
      case CaseLabel::ConstantProbability: ++rep.constant_probability; break;
      case CaseLabel::Case1: ++rep.case1; break;
      case CaseLabel::Case2: ++rep.case2; break;
      case CaseLabel::Case3: ++rep.case3; break;
    }
  }
  if (cr.all_positive()) ++rep.all_positive;
  if (!cr.theorem_consistent) rep.violations.push_back(trial);

  if (cr.out1_phase_dependent && cr.out2_phase_dependent) {
    ++rep.both_phase_dependent;
    SearchWitness w{trial, std::numeric_limits<double>::infinity(), 0.0};
    for (const OperatorChecks *c : {&cr.joint, &cr.out1, &cr.out2}) {
      if (c->positivity && c->positivity->min_eigenvalue < w.lambda_min) {
        w.lambda_min = c->positivity->min_eigenvalue;
        w.phi = c->positivity->argmin_phi;
      }
    }
    rep.witnesses.push_back(w);
    if (!(w.lambda_min < -SearchReport::kWitnessMargin)) {
      rep.missing_witnesses.push_back(trial);
    }
  }

  if (cr.case_verdict && cr.case_verdict->label == CaseLabel::Case2 &&
      cr.all_positive()) {
    ++rep.case2_forcing_checked;
    const FirstOrderPoly P = trace_poly(t.out1);
    bool holds = detail::forced_constant(t.out1, P, tol);
    if (classify(swap_systems(t), tol).label == CaseLabel::Case2) {
      holds = holds && detail::forced_constant(t.out2, P, tol);
    }
    if (!holds) ++rep.case2_forcing_failed;
  }
}

/// Runs analyze() over `trials` sampled candidates. Trial k always uses the
/// stream derived from (seed, k), so results do not depend on scheduling.
inline SearchReport theorem_search(std::size_t trials, std::uint64_t seed,
                                   const SearchOptions &opt = {}) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  SearchReport rep;
  rep.trials = trials;
  rep.seed = seed;
  const AnalysisOptions aopt{opt.tol, kPositivityTol, opt.grid};
  for (std::size_t k = 0; k < trials; ++k) {
    const auto t = try_generate_case2_candidate(seed, k, opt.sampler, opt.tol);
    if (!t) {
      ++rep.rejected;
      continue;
    }
    ++rep.accepted;
    record_trial(rep, k, *t, analyze(*t, aopt), opt.tol);
  }
  return rep;
}

inline std::ostream &operator<<(std::ostream &os, const SearchReport &r) {
  double weakest = -std::numeric_limits<double>::infinity();
  for (const auto &w : r.witnesses) weakest = std::max(weakest, w.lambda_min);
  os << "trials: " << r.trials << "\n"
     << "seed: " << r.seed << "\n"
     << "accepted: " << r.accepted << "\n"
     << "rejected: " << r.rejected << "\n"
     << "acceptance_rate: " << r.acceptance_rate() << "\n"
     << "constant_probability: " << r.constant_probability << "\n"
     << "case1: " << r.case1 << "\n"
     << "case2: " << r.case2 << "\n"
     << "case3: " << r.case3 << "\n"
     << "unclassified: " << r.unclassified << "\n"
     << "all_positive: " << r.all_positive << "\n"
     << "both_phase_dependent: " << r.both_phase_dependent << "\n"
     << "case2_forcing_checked: " << r.case2_forcing_checked << "\n"
     << "case2_forcing_failed: " << r.case2_forcing_failed << "\n"
     << "missing_witnesses: " << r.missing_witnesses.size() << "\n";
  if (!r.witnesses.empty()) {
    os << "weakest_witness_lambda_min: " << weakest << "\n";
  }
  os << "violations: " << r.violations.size() << "\n";
  for (std::size_t t : r.violations) os << "violation_trial: " << t << "\n";
  return os;
}

}  // namespace phasemap

#endif  // PHASEMAP_SEARCH_HPP_
