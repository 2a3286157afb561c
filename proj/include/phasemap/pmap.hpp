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

// PMAP: a line-oriented text format for phase operators.
//
//   # comment
//   pmap <name>
//   dim <d>
//   entry <i> <j> <a> <b> <c>     W = a e^{i phi} + b e^{-i phi} + c
//   end
//
// Coefficients are written <re>+<im>i or <re>-<im>i, where each part is a
// decimal or an integer ratio p/q. Entries not listed are zero. A triple is
// stored as three blocks named lambda12, lambda1 and lambda2.

#ifndef PHASEMAP_PMAP_HPP_
#define PHASEMAP_PMAP_HPP_

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasemap/catalog.hpp"
#include "phasemap/error.hpp"
#include "phasemap/phase_operator.hpp"
#include "phasemap/trigpoly.hpp"

namespace phasemap {

struct PmapBlock {
  std::string name;
  PhaseOperator op;
};

struct PmapDocument {
  std::vector<PmapBlock> blocks;

  const PmapBlock *find(std::string_view name) const {
    for (const auto &b : blocks)
      if (b.name == name) return &b;
    return nullptr;
  }
  bool is_triple() const {
    return find("lambda12") && find("lambda1") && find("lambda2");
  }
  UncorrelatedTriple triple() const {
    const PmapBlock *j = find("lambda12");
    const PmapBlock *a = find("lambda1");
    const PmapBlock *b = find("lambda2");
    if (!j || !a || !b) {
      throw Error(ErrorCode::ParseError,
                  "document needs blocks lambda12, lambda1 and lambda2");
    }
    return {JointPhaseOperator(a->op.dim(), b->op.dim(), j->op), a->op, b->op};
  }
};

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string &what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::optional<double> parse_real(std::string_view s) {
  if (s.empty()) return std::nullopt;
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::string_view ps = s.substr(0, slash);
    std::string_view qs = s.substr(slash + 1);
    if (!ps.empty() && ps.front() == '+') ps.remove_prefix(1);
    auto [pe, pec] = std::from_chars(ps.data(), ps.data() + ps.size(), p);
    auto [qe, qec] = std::from_chars(qs.data(), qs.data() + qs.size(), q);
    if (pec != std::errc() || pe != ps.data() + ps.size() ||
        qec != std::errc() || qe != qs.data() + qs.size() || q <= 0 ||
        ps.empty() || qs.empty()) {
      return std::nullopt;
    }
    return static_cast<double>(p) / static_cast<double>(q);
  }
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

inline std::optional<Complex> parse_complex(std::string_view s) {
  if (s.size() < 2 || s.back() != 'i') return std::nullopt;
  s.remove_suffix(1);
  // Split at the last sign that is neither leading nor an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return std::nullopt;
  const auto re = parse_real(s.substr(0, split));
  const auto im = parse_real(s.substr(split));
  if (!re || !im) return std::nullopt;
  return Complex(*re, *im);
}

inline std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    const std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

// Dyadic values print as p/2^k; everything else as the shortest decimal
// that round-trips.
inline std::string format_real(double v) {
  if (v == 0.0) return "0";
  for (int k = 0; k <= 30; ++k) {
    const double scaled = std::ldexp(v, k);
    if (std::abs(scaled) < 0x1.0p53 && scaled == std::trunc(scaled)) {
      const auto p = static_cast<std::int64_t>(scaled);
      if (k == 0) return std::to_string(p);
      return std::to_string(p) + "/" + std::to_string(std::int64_t{1} << k);
    }
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string format_complex(Complex z) {
  const double im = z.imag();
  const bool neg = std::signbit(im) && im != 0.0;
  return format_real(z.real()) + (neg ? "-" : "+") + format_real(std::abs(im)) + "i";
}

}  // namespace detail

inline PmapDocument parse_pmap(std::string_view text) {
  PmapDocument doc;
  std::optional<PmapBlock> cur;
  std::optional<std::size_t> dim;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t line_no = 0;
  std::size_t block_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    const std::string_view kw = tok[0];

    if (kw == "pmap") {
      if (cur) detail::parse_fail(line_no, "expected 'end' before 'pmap'");
      if (tok.size() != 2) detail::parse_fail(line_no, "expected 'pmap <name>'");
      if (doc.find(tok[1])) {
        throw Error(ErrorCode::DuplicateEntry,
                    "line " + std::to_string(line_no) + ": duplicate block '" +
                        std::string(tok[1]) + "'");
      }
      cur = PmapBlock{std::string(tok[1]), PhaseOperator(1)};
      dim.reset();
      seen.clear();
      block_line = line_no;
    } else if (kw == "dim") {
      if (!cur) detail::parse_fail(line_no, "expected 'pmap <name>' before 'dim'");
      if (dim) detail::parse_fail(line_no, "'dim' given twice");
      const auto d = tok.size() == 2 ? detail::parse_index(tok[1]) : std::nullopt;
      if (!d || *d == 0) detail::parse_fail(line_no, "expected 'dim <d>' with d >= 1");
      dim = *d;
      cur->op = PhaseOperator(*d);
    } else if (kw == "entry") {
      if (!cur) detail::parse_fail(line_no, "expected 'pmap <name>' before 'entry'");
      if (!dim) detail::parse_fail(line_no, "expected 'dim <d>' before 'entry'");
      if (tok.size() != 6) {
        detail::parse_fail(line_no, "expected 'entry <i> <j> <a> <b> <c>'");
      }
      const std::size_t n = cur->op.dim();
      const auto i = detail::parse_index(tok[1]);
      const auto j = detail::parse_index(tok[2]);
      if (!i || !j) detail::parse_fail(line_no, "expected non-negative integer index");
      if (*i >= n || *j >= n) {
        detail::parse_fail(line_no, "index (" + std::to_string(*i) + ", " +
                                        std::to_string(*j) + ") out of range for dim " +
                                        std::to_string(n));
      }
      std::array<Complex, 3> coef;
      for (int k = 0; k < 3; ++k) {
        const auto z = detail::parse_complex(tok[3 + k]);
        if (!z) {
          detail::parse_fail(line_no, "expected complex literal <re>+<im>i, got '" +
                                          std::string(tok[3 + k]) + "'");
        }
        coef[k] = *z;
      }
      if (!seen.insert({*i, *j}).second) {
        throw Error(ErrorCode::DuplicateEntry,
                    "line " + std::to_string(line_no) + ": entry (" +
                        std::to_string(*i) + ", " + std::to_string(*j) +
                        ") given twice");
      }
      cur->op(*i, *j) = FirstOrderPoly(coef[0], coef[1], coef[2]);
    } else if (kw == "end") {
      if (!cur) detail::parse_fail(line_no, "'end' without 'pmap'");
      if (!dim) detail::parse_fail(line_no, "expected 'dim <d>' before 'end'");
      if (tok.size() != 1) detail::parse_fail(line_no, "expected 'end'");
      doc.blocks.push_back(std::move(*cur));
      cur.reset();
    } else {
      detail::parse_fail(line_no, "expected 'pmap', 'dim', 'entry' or 'end', got '" +
                                      std::string(kw) + "'");
    }
  }
  if (cur) detail::parse_fail(block_line, "block '" + cur->name + "' has no 'end'");

  if (doc.is_triple()) {
    const std::size_t d1 = doc.find("lambda1")->op.dim();
    const std::size_t d2 = doc.find("lambda2")->op.dim();
    const std::size_t dj = doc.find("lambda12")->op.dim();
    if (dj != d1 * d2) {
      throw Error(ErrorCode::DimensionMismatch,
                  "lambda12 dim " + std::to_string(dj) + " != " +
                      std::to_string(d1) + " x " + std::to_string(d2));
    }
  }
  return doc;
}

inline std::string serialize_pmap(const PmapDocument &doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto &b : doc.blocks) {
    if (!first) os << "\n";
    first = false;
    os << "pmap " << b.name << "\n" << "dim " << b.op.dim() << "\n";
    for (std::size_t i = 0; i < b.op.dim(); ++i)
      for (std::size_t j = 0; j < b.op.dim(); ++j) {
        const FirstOrderPoly &w = b.op(i, j);
        if (w.a() == 0.0 && w.b() == 0.0 && w.c() == 0.0) continue;
        os << "entry " << i << " " << j << " " << detail::format_complex(w.a())
           << " " << detail::format_complex(w.b()) << " "
           << detail::format_complex(w.c()) << "\n";
      }
    os << "end\n";
  }
  return os.str();
}

inline PmapDocument to_document(const UncorrelatedTriple &t) {
  return {{{"lambda12", t.joint.flat()}, {"lambda1", t.out1}, {"lambda2", t.out2}}};
}

inline PmapDocument to_document(const CatalogEntry &e) {
  if (e.is_triple()) return to_document(e.triple());
  return {{{e.name, e.op()}}};
}

}  // namespace phasemap

#endif  // PHASEMAP_PMAP_HPP_
