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
#include <random>
#include <span>

#include "shazoo/types.hpp"

namespace shazoo {

// Seedable source of randomness used by every sampling routine.
//
// The engine is std::mt19937_64. Derived quantities avoid the
// implementation-defined std:: distributions so that a seed produces the
// same stream on every standard library:
//   uniform()   -- top 53 bits of one draw, scaled to [0, 1)
//   below(n)    -- rejection sampling on the top bits, unbiased
//   coin()      -- lowest bit of one draw
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (engine_() & 1u) != 0; }
  Label label() { return coin() ? Label::kPositive : Label::kNegative; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer applied to (base, stream); used to derive
// independent seeds for repetitions and committee members.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Uniformly random permutation of 0..n-1.
std::vector<NodeId> random_permutation(std::size_t n, Rng& rng);

}  // namespace shazoo
