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

#ifndef PHASEMAP_ERROR_HPP_
#define PHASEMAP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasemap {

enum class ErrorCode {
  NonFinite,
  InvalidArgument,
  NotDivisible,
  ZeroDivisor,
  ZeroPolynomial,
  ZeroProbabilityEverywhere,
  ZeroProbabilityAtPhase,
  NotRealValued,
  ConstantProbability,
  NotPositive,
  NotHermitian,
  IndexOutOfRange,
  PreconditionViolated,
  SampleRejected,
  UnknownName,
  ParseError,
  DimensionMismatch,
  DuplicateEntry,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroProbabilityEverywhere: return "ZeroProbabilityEverywhere";
    case ErrorCode::ZeroProbabilityAtPhase: return "ZeroProbabilityAtPhase";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::ConstantProbability: return "ConstantProbability";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SampleRejected: return "SampleRejected";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace phasemap

#endif  // PHASEMAP_ERROR_HPP_
