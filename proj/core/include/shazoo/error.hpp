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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shazoo {

enum class ErrorCode {
  kParse,
  kDuplicateEdge,
  kSelfLoop,
  kZeroWeight,
  kNegativeWeight,
  kNonFiniteWeight,
  kInvalidNode,
  kCycleDetected,
  kDisconnected,
  kRevealedQuery,
  kAlreadyRevealed,
  kSignedModeRequired,
  kNotPermutation,
  kTrainTestOverlap,
  kDegenerateSigma,
  kEmptySplit,
  kSingleClass,
  kPartialLabeling,
  kInfeasibleBudget,
  kEmptyTestSet,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Configuration errors are caller mistakes (bad flags, bad parameters);
// everything else is a problem with the input data.
bool is_config_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shazoo
