// Copyright 2026 The dnadapt Authors.
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

#ifndef DNADAPT_ERROR_HPP_
#define DNADAPT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dnadapt {

enum class ErrorCode {
  // data errors
  kMalformedRecord,
  kDuplicateId,
  kMissingAudio,
  kUnexpectedAudio,
  kEmptyInput,
  kEmptyDataset,
  kEmptyReference,
  kInvalidUtf8,
  kTemplateCollision,
  kMissingInput,
  kInconsistentDomains,
  kIoError,
  // config / argument errors
  kInvalidCount,
  kInvalidTau,
  kInvalidConfig,
  kInvalidArgument,
  kWeightViewMismatch,
  kVocabOverflow,
  // numeric errors
  kDimensionMismatch,
  kZeroVector,
  kDivisionByZero,
  kNonFiniteLoss,
};

std::string_view ErrorCodeName(ErrorCode code);

/// Process exit status associated with an error class: 2 config, 3 data,
/// 4 numeric.
int ExitStatusFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dnadapt

#endif  // DNADAPT_ERROR_HPP_
