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

#include <cstdint>
#include <limits>
#include <vector>

namespace shazoo {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Binary node label. The numeric value is the label itself.
enum class Label : std::int8_t { kNegative = -1, kPositive = 1 };

// A complete assignment of labels, indexed by node id.
using Labeling = std::vector<Label>;

constexpr int to_int(Label y) { return static_cast<int>(y); }

constexpr Label flip(Label y) {
  return y == Label::kPositive ? Label::kNegative : Label::kPositive;
}

// Sign of x in {-1, 0, +1}.
constexpr int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// sgn(x) with the -1 default used by every predictor when x == 0.
constexpr Label label_or_default(double x) {
  return x > 0.0 ? Label::kPositive : Label::kNegative;
}

// One answer from a predictor. `defaulted` is set when no evidence was
// available and the -1 default was emitted.
struct Prediction {
  NodeId node = kNoNode;
  Label label = Label::kNegative;
  bool defaulted = false;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

}  // namespace shazoo
