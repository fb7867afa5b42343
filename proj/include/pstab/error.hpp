// Copyright (c) 2026 The pstab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSTAB_ERROR_HPP_
#define PSTAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstab {

enum class ErrorCode {
  kInvalidToken,
  kInvalidSegment,
  kMalformedRecord,
  kNonMonotonicTimestamp,
  kMissingFinal,
  kFinalNotLast,
  kDuplicateFinal,
  kEmptyFinal,
  kEmptyStream,
  kDuplicateUtterance,
  kEmptyCorpus,
  kEmptyFinalHypothesis,
  kContractViolation,
  kInvalidArgument,
  kNonFiniteFeature,
  kSingleClass,
  kNonFiniteLoss,
  kEmptyTranscript,
  kMalformedTable,
  kIo,
};

constexpr std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidToken: return "invalid-token";
    case ErrorCode::kInvalidSegment: return "invalid-segment";
    case ErrorCode::kMalformedRecord: return "malformed-record";
    case ErrorCode::kNonMonotonicTimestamp: return "non-monotonic-timestamp";
    case ErrorCode::kMissingFinal: return "missing-final";
    case ErrorCode::kFinalNotLast: return "final-not-last";
    case ErrorCode::kDuplicateFinal: return "duplicate-final";
    case ErrorCode::kEmptyFinal: return "empty-final";
    case ErrorCode::kEmptyStream: return "empty-stream";
    case ErrorCode::kDuplicateUtterance: return "duplicate-utterance";
    case ErrorCode::kEmptyCorpus: return "empty-corpus";
    case ErrorCode::kEmptyFinalHypothesis: return "empty-final-hypothesis";
    case ErrorCode::kContractViolation: return "contract-violation";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kNonFiniteFeature: return "non-finite-feature";
    case ErrorCode::kSingleClass: return "single-class";
    case ErrorCode::kNonFiniteLoss: return "non-finite-loss";
    case ErrorCode::kEmptyTranscript: return "empty-transcript";
    case ErrorCode::kMalformedTable: return "malformed-table";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

/// All library failures are reported as this exception; `code()` names the
/// validation rule that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pstab

#endif  // PSTAB_ERROR_HPP_
