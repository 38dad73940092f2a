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

#include "dnadapt/error.hpp"

namespace dnadapt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kMissingAudio: return "MissingAudio";
    case ErrorCode::kUnexpectedAudio: return "UnexpectedAudio";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kTemplateCollision: return "TemplateCollision";
    case ErrorCode::kMissingInput: return "MissingInput";
    case ErrorCode::kInconsistentDomains: return "InconsistentDomains";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidCount: return "InvalidCount";
    case ErrorCode::kInvalidTau: return "InvalidTau";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kWeightViewMismatch: return "WeightViewMismatch";
    case ErrorCode::kVocabOverflow: return "VocabOverflow";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
  }
  return "Unknown";
}

int ExitStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidCount:
    case ErrorCode::kInvalidTau:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kWeightViewMismatch:
    case ErrorCode::kVocabOverflow:
      return 2;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kZeroVector:
    case ErrorCode::kDivisionByZero:
    case ErrorCode::kNonFiniteLoss:
      return 4;
    default:
      return 3;
  }
}

}  // namespace dnadapt
