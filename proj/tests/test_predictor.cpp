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

#include <gtest/gtest.h>

#include <algorithm>

#include "shazoo/error.hpp"
#include "shazoo/predictor.hpp"
#include "test_util.hpp"

namespace shazoo {
namespace {

using testing::make_tree;

constexpr Label kPos = Label::kPositive;
constexpr Label kNeg = Label::kNegative;

WeightedTree spider() {
  return make_tree(7, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 3, 1.0}, {3, 4, 1.0},
                       {0, 5, 1.0}, {5, 6, 1.0}});
}

TEST(Hinge, PathExample) {
  auto t = make_tree(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  RevealedState s(3);
  s.reveal(0, kPos);
  s.reveal(2, kNeg);
  HingeView h = hinge_structure(t, s, 1);
  EXPECT_TRUE(h.forks.empty());
  EXPECT_EQ(h.hinge_nodes, (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(h.hinge_tree, (std::vector<NodeId>{1}));
  ASSERT_EQ(h.connections.size(), 2u);
  EXPECT_EQ(h.connections[0], (ConnectionNode{0, 1, 1.0, false}));
  EXPECT_EQ(h.connections[1], (ConnectionNode{2, -1, 0.5, false}));
}

TEST(Hinge, NothingRevealed) {
  auto t = spider();
  RevealedState s(7);
  HingeView h = hinge_structure(t, s, 3);
  EXPECT_TRUE(h.forks.empty());
  EXPECT_TRUE(h.hinge_nodes.empty());
  EXPECT_EQ(h.hinge_tree.size(), 7u);
  EXPECT_TRUE(h.connections.empty());
}

TEST(Hinge, SpiderCenterIsFork) {
  auto t = spider();
  RevealedState s(7);
  s.reveal(2, kPos);
  s.reveal(4, kPos);
  s.reveal(6, kNeg);
  HingeView h = hinge_structure(t, s, 0);
  EXPECT_TRUE(h.query_is_fork);
  EXPECT_EQ(h.forks, (std::vector<NodeId>{0}));
  EXPECT_EQ(h.hinge_tree, (std::vector<NodeId>{0}));
  ASSERT_EQ(h.connections.size(), 1u);
  EXPECT_EQ(h.connections[0].node, 0u);
  EXPECT_EQ(find_forks(t, s), (std::vector<NodeId>{0}));
  EXPECT_EQ(predict_online(t, s, 0), kPos);

  // A leg node sees the fork and its own tip as connection nodes.
  HingeView leg = hinge_structure(t, s, 5);
  EXPECT_EQ(leg.hinge_tree, (std::vector<NodeId>{5}));
  ASSERT_EQ(leg.connections.size(), 2u);
  EXPECT_EQ(leg.connections[0].node, 0u);
  EXPECT_EQ(leg.connections[1].node, 6u);
}

TEST(Predict, PathPrefersNearerNode) {
  auto t = make_tree(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  RevealedState s(3);
  s.reveal(0, kPos);
  s.reveal(2, kNeg);
  EXPECT_EQ(shazoo_predict(t, s, 1), (Prediction{1, kNeg, false}));
  std::vector<NodeId> test{1};
  EXPECT_EQ(predict_batch(t, s, test), (std::vector<Prediction>{{1, kNeg, false}}));
}

TEST(Predict, DefaultsWhenNoSignal) {
  auto t = spider();
  RevealedState empty(7);
  EXPECT_EQ(shazoo_predict(t, empty, 0), (Prediction{0, kNeg, true}));

  // Balanced fork: Delta = 0 at the only connection node.
  auto star = make_tree(5, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}});
  RevealedState s(5);
  s.reveal(1, kPos);
  s.reveal(2, kPos);
  s.reveal(3, kNeg);
  s.reveal(4, kNeg);
  EXPECT_EQ(shazoo_predict(t, empty, 3).defaulted, true);
  EXPECT_EQ(shazoo_predict(star, s, 0), (Prediction{0, kNeg, true}));
}

TEST(Predict, RevealedQueryRejected) {
  auto t = spider();
  RevealedState s(7);
  s.reveal(2, kPos);
  try {
    shazoo_predict(t, s, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRevealedQuery);
  }
}

TEST(Predict, MatchesDefinitionOnCatalog) {
  for (bool signed_mode : {false, true}) {
    PredictionMode mode =
        signed_mode ? PredictionMode::kSigned : PredictionMode::kStandard;
    Rng rng(99);
    for (const auto& [name, t] : testing::tree_catalog(signed_mode, 23)) {
      const std::size_t n = t.node_count();
      for (int rep = 0; rep < 6; ++rep) {
        RevealedState s(n);
        for (NodeId v = 0; v < n; ++v) {
          if (rng.below(5) < 2) s.reveal(v, rng.label());
        }
        EXPECT_EQ(find_forks(t, s), testing::brute_forks(t, s)) << name;
        for (NodeId q = 0; q < n; ++q) {
          if (s.is_revealed(q)) continue;
          EXPECT_EQ(shazoo_predict(t, s, q, mode),
                    testing::brute_shazoo(t, s, q, mode))
              << name << " q=" << q;
        }
      }
    }
  }
}

TEST(Predict, BatchMatchesOnlineWithContinuousWeights) {
  Rng rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 2 + rng.below(60);
    auto t = testing::weighted(n, testing::random_tree_pairs(n, rng),
                               [&] { return rng.uniform(0.1, 3.0); });
    RevealedState s(n);
    std::vector<NodeId> test;
    const std::uint64_t density = 1 + rng.below(6);
    for (NodeId v = 0; v < n; ++v) {
      if (rng.below(8) < density) {
        s.reveal(v, rng.label());
      } else {
        test.push_back(v);
      }
    }
    auto batch = predict_batch(t, s, test);
    ASSERT_EQ(batch.size(), test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
      EXPECT_EQ(batch[i], shazoo_predict(t, s, test[i]));
    }
  }
}

TEST(Predict, BatchErrorsAndEmptyTrain) {
  auto t = spider();
  RevealedState s(7);
  std::vector<NodeId> all{0, 1, 2, 3, 4, 5, 6};
  for (const Prediction& p : predict_batch(t, s, all)) {
    EXPECT_EQ(p.label, kNeg);
    EXPECT_TRUE(p.defaulted);
  }
  s.reveal(2, kPos);
  try {
    predict_batch(t, s, all);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTrainTestOverlap);
  }
}

TEST(Online, SingleNode) {
  auto t = make_tree(1, {});
  std::vector<NodeId> order{0};
  MistakeTrace pos = run_online(t, {kPos}, order);
  ASSERT_EQ(pos.size(), 1u);
  EXPECT_EQ(pos.steps()[0].predicted, kNeg);
  EXPECT_EQ(pos.mistakes(), 1u);
  EXPECT_EQ(run_online(t, {kNeg}, order).mistakes(), 0u);
}

TEST(Online, ConstantPositivePathCostsAtMostOne) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.below(40);
    auto t = testing::weighted(n, testing::path_pairs(n),
                               [&] { return rng.uniform(0.1, 3.0); });
    Labeling y(n, kPos);
    auto order = random_permutation(n, rng);
    EXPECT_LE(run_online(t, y, order).mistakes(), 1u);
  }
  auto t = make_tree(5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  std::vector<NodeId> ltr{0, 1, 2, 3, 4};
  EXPECT_EQ(run_online(t, Labeling(5, kPos), ltr).mistakes(), 1u);
}

TEST(Online, AtMostOneNewForkPerReveal) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + rng.below(40);
    auto t = testing::weighted(n, testing::random_tree_pairs(n, rng),
                               [&] { return testing::dyadic(rng); });
    auto order = random_permutation(n, rng);
    RevealedState s(n);
    std::vector<NodeId> forks = find_forks(t, s);
    for (NodeId v : order) {
      s.reveal(v, rng.label());
      std::vector<NodeId> next = find_forks(t, s), fresh;
      std::set_difference(next.begin(), next.end(), forks.begin(), forks.end(),
                          std::back_inserter(fresh));
      EXPECT_LE(fresh.size(), 1u);
      forks = std::move(next);
    }
  }
}

TEST(Online, TraceAndErrors) {
  auto t = spider();
  Labeling y = {kPos, kPos, kPos, kNeg, kNeg, kPos, kNeg};
  std::vector<NodeId> order{2, 4, 6, 0, 1, 3, 5};
  MistakeTrace trace = run_online(t, y, order);
  std::size_t flagged = 0;
  for (const TraceStep& step : trace.steps()) {
    EXPECT_EQ(step.mistake, step.predicted != step.truth);
    flagged += step.mistake;
  }
  EXPECT_EQ(flagged, trace.mistakes());

  std::vector<NodeId> short_order{0, 1};
  std::vector<NodeId> repeat{0, 0, 1, 2, 3, 4, 5};
  auto code = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code([&] { run_online(t, y, short_order); }),
            ErrorCode::kNotPermutation);
  EXPECT_EQ(code([&] { run_online(t, y, repeat); }),
            ErrorCode::kNotPermutation);
  EXPECT_EQ(code([&] { run_online(t, Labeling(3, kPos), order); }),
            ErrorCode::kPartialLabeling);
}

TEST(Signed, Examples) {
  auto edge = make_tree(2, {{0, 1, -1.0}}, true);
  RevealedState s(2);
  s.reveal(0, kPos);
  EXPECT_EQ(predict_signed(edge, s, 1), kNeg);

  auto path = make_tree(3, {{0, 1, -1.0}, {1, 2, -1.0}}, true);
  RevealedState p(3);
  p.reveal(0, kPos);
  EXPECT_EQ(predict_signed(path, p, 2), kPos);
  EXPECT_EQ(predict_signed(path, p, 1), kNeg);

  auto plain = make_tree(2, {{0, 1, 1.0}});
  RevealedState q(2);
  q.reveal(0, kPos);
  EXPECT_THROW(predict_signed(plain, q, 1), Error);
}

}  // namespace
}  // namespace shazoo
