// Copyright 2026 The Shazoo Authors
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

#include "shazoo/error.hpp"

namespace shazoo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kZeroWeight: return "ZeroWeight";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kNonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::kInvalidNode: return "InvalidNode";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kRevealedQuery: return "RevealedQuery";
    case ErrorCode::kAlreadyRevealed: return "AlreadyRevealed";
    case ErrorCode::kSignedModeRequired: return "SignedModeRequired";
    case ErrorCode::kNotPermutation: return "NotPermutation";
    case ErrorCode::kTrainTestOverlap: return "TrainTestOverlap";
    case ErrorCode::kDegenerateSigma: return "DegenerateSigma";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kPartialLabeling: return "PartialLabeling";
    case ErrorCode::kInfeasibleBudget: return "InfeasibleBudget";
    case ErrorCode::kEmptyTestSet: return "EmptyTestSet";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  return code == ErrorCode::kInvalidArgument || code == ErrorCode::kEmptySplit;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace shazoo
