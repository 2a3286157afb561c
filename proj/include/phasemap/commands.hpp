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

// Subcommands behind the phasemap executable. Each returns the process exit
// code: 0 success, 1 a check failed, 2 bad input or I/O error.

#ifndef PHASEMAP_COMMANDS_HPP_
#define PHASEMAP_COMMANDS_HPP_

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "phasemap/catalog.hpp"
#include "phasemap/cloning.hpp"
#include "phasemap/error.hpp"
#include "phasemap/pmap.hpp"
#include "phasemap/positivity.hpp"
#include "phasemap/search.hpp"

namespace phasemap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitBadInput = 2;

namespace detail {

inline std::optional<PmapDocument> load(const std::string &path, std::ostream &err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot open '" << path << "'\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pmap(buf.str());
  } catch (const Error &e) {
    err << "error: " << path << ": " << to_string(e.code()) << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

inline std::optional<UncorrelatedTriple> load_triple(const std::string &path,
                                                     std::ostream &err) {
  auto doc = load(path, err);
  if (!doc) return std::nullopt;
  if (!doc->is_triple()) {
    err << "error: " << path << ": expected blocks lambda12, lambda1, lambda2\n";
    return std::nullopt;
  }
  try {
    return doc->triple();
  } catch (const Error &e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

inline const char *yes_no(bool b) { return b ? "yes" : "no"; }

inline void print_positivity(std::ostream &out, const char *label,
                             const OperatorChecks &c) {
  out << label << ": hp " << yes_no(c.hp);
  if (c.positivity) {
    out << ", positive " << yes_no(c.positivity->positive) << ", min_eigenvalue "
        << c.positivity->min_eigenvalue << " at phi " << c.positivity->argmin_phi;
  }
  out << "\n";
}

inline const char *dependence(bool dep) {
  return dep ? "phase-dependent" : "phase-independent";
}

}  // namespace detail

/// Prints the decomposition form of one entry. `block` defaults to lambda1
/// for triples and to the only block otherwise.
inline int command_factor(const std::string &path, std::size_t i, std::size_t j,
                          const std::optional<std::string> &block,
                          std::ostream &out, std::ostream &err) {
  const auto doc = detail::load(path, err);
  if (!doc) return kExitBadInput;
  const PmapBlock *b = nullptr;
  if (block) {
    b = doc->find(*block);
  } else if (doc->is_triple()) {
    b = doc->find("lambda1");
  } else if (doc->blocks.size() == 1) {
    b = &doc->blocks.front();
  }
  if (!b) {
    err << "error: no block selected; use --block <name>\n";
    return kExitBadInput;
  }
  if (i >= b->op.dim() || j >= b->op.dim()) {
    err << "error: entry (" << i << ", " << j << ") out of range for dim "
        << b->op.dim() << "\n";
    return kExitBadInput;
  }
  try {
    out << factorize(b->op(i, j)) << "\n";
  } catch (const Error &e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

inline int command_check(const std::string &path, double tol, std::ostream &out,
                         std::ostream &err) {
  const auto doc = detail::load(path, err);
  if (!doc) return kExitBadInput;

  if (!doc->is_triple()) {
    bool ok = true;
    for (const auto &b : doc->blocks) {
      OperatorChecks c;
      c.hp = is_hermitian_preserving(b.op, tol);
      if (c.hp) c.positivity = is_positive_over_phase(b.op, kPositivityTol);
      detail::print_positivity(out, b.name.c_str(), c);
      ok = ok && c.positive();
    }
    out << "result: " << (ok ? "pass" : "fail") << "\n";
    return ok ? kExitOk : kExitFailed;
  }

  const auto t = detail::load_triple(path, err);
  if (!t) return kExitBadInput;
  const CloningReport r = analyze(*t, {tol, kPositivityTol});
  if (r.relation) {
    out << "relation: " << (r.relation->ok() ? "ok" : "fail")
        << " (trace residual " << r.relation->trace_residual
        << ", relation residual " << r.relation->relation_residual
        << ", partial trace residual " << r.relation->partial_trace_residual
        << ")\n";
  } else {
    out << "relation: fail (probability vanishes)\n";
  }
  detail::print_positivity(out, "lambda12", r.joint);
  detail::print_positivity(out, "lambda1", r.out1);
  detail::print_positivity(out, "lambda2", r.out2);
  const bool ok = r.hp_ok() && r.relation_ok() && r.all_positive();
  out << "result: " << (ok ? "pass" : "fail") << "\n";
  return ok ? kExitOk : kExitFailed;
}

inline int command_classify(const std::string &path, double tol,
                            std::ostream &out, std::ostream &err) {
  const auto t = detail::load_triple(path, err);
  if (!t) return kExitBadInput;
  const CloningReport r = analyze(*t, {tol, kPositivityTol});
  if (!r.case_verdict) {
    err << "error: cannot classify: "
        << to_string(r.case_error.value_or(ErrorCode::PreconditionViolated))
        << " (requires hermitian-preserving operators and a valid relation)\n";
    return kExitFailed;
  }
  out << to_string(r.case_verdict->label) << "; out1 "
      << detail::dependence(r.out1_phase_dependent) << "; out2 "
      << detail::dependence(r.out2_phase_dependent) << "\n";
  out << "hp: " << detail::yes_no(r.hp_ok()) << "\n"
      << "relation: " << detail::yes_no(r.relation_ok()) << "\n"
      << "positive: " << detail::yes_no(r.all_positive()) << "\n"
      << "min_eigenvalue: " << r.min_eigenvalue() << "\n"
      << "theorem_consistent: " << detail::yes_no(r.theorem_consistent) << "\n";
  if (r.case_verdict->label == CaseLabel::Case2) {
    out << "entry forms:";
    for (const auto &e : r.case_verdict->entry_forms) {
      out << "\n  (" << e.i << "," << e.j << ") M=" << e.M << " s=" << e.scale;
      if (e.f) out << " f=" << *e.f;
    }
    out << "\n";
  }
  return kExitOk;
}

inline int command_profile(const std::string &path, std::size_t samples,
                           const std::optional<std::string> &out_path,
                           double tol, std::ostream &out, std::ostream &err) {
  const auto t = detail::load_triple(path, err);
  if (!t) return kExitBadInput;
  if (samples == 0) {
    err << "error: --samples must be >= 1\n";
    return kExitBadInput;
  }
  for (const PhaseOperator *op : {&t->joint.flat(), &t->out1, &t->out2}) {
    if (!is_hermitian_preserving(*op, tol)) {
      err << "error: NotHermitian: profile needs hermitian-preserving operators\n";
      return kExitFailed;
    }
  }
  const auto p1 = min_eigenvalue_profile(t->out1, samples);
  const auto p2 = min_eigenvalue_profile(t->out2, samples);
  const auto pj = min_eigenvalue_profile(t->joint.flat(), samples);
  const FirstOrderPoly P = trace_poly(t->out1);

  std::ofstream file;
  if (out_path) {
    file.open(*out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << *out_path << "'\n";
      return kExitBadInput;
    }
  }
  std::ostream &csv = out_path ? static_cast<std::ostream &>(file) : out;
  csv.imbue(std::locale::classic());
  csv << std::setprecision(17);
  csv << "phi,P,lmin_out1,lmin_out2,lmin_joint\n";
  for (std::size_t k = 0; k < samples; ++k) {
    csv << p1[k].phi << "," << eval(P, p1[k].phi).real() << ","
        << p1[k].lambda_min << "," << p2[k].lambda_min << ","
        << pj[k].lambda_min << "\n";
  }
  return kExitOk;
}

inline int command_search(std::size_t trials, std::uint64_t seed, double tol,
                          std::ostream &out, std::ostream &err) {
  if (trials == 0) {
    err << "error: --trials must be >= 1\n";
    return kExitBadInput;
  }
  SearchOptions opt;
  opt.tol = tol;
  const SearchReport r = theorem_search(trials, seed, opt);
  out << r;
  return r.violations.empty() ? kExitOk : kExitFailed;
}

inline int command_catalog(const std::string &name, std::optional<double> q,
                           const std::optional<std::string> &out_path,
                           std::ostream &out, std::ostream &err) {
  std::string text;
  try {
    text = serialize_pmap(to_document(builtin(name, q)));
  } catch (const Error &e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    err << "known entries:";
    for (auto n : kCatalogNames) err << " " << n;
    err << "\n";
    return kExitBadInput;
  }
  if (out_path) {
    std::ofstream file(*out_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write '" << *out_path << "'\n";
      return kExitBadInput;
    }
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace phasemap::cli

#endif  // PHASEMAP_COMMANDS_HPP_
