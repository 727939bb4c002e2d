/*
 * Copyright 2026 The slist Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "slist/recommender.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "slist/error.h"

namespace slist {
namespace {

ItemModel HandModel(const RowMajorMatrix& b, double delta_inf = 1.0) {
  ItemModel model;
  model.weights = b;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    model.vocab.Add("i" + std::to_string(i));
  }
  model.hyper.decay.inference = delta_inf;
  return model;
}

SessionState State(std::vector<ItemIndex> items) {
  return SessionState::FromItems(items);
}

TEST(InputVectorTest, DecaysByDistanceFromEnd) {
  const Eigen::VectorXd v = InputVector(State({0, 1}), 1.0, 3);
  EXPECT_DOUBLE_EQ(v[0], std::exp(-1.0));
  EXPECT_EQ(v[1], 1.0);
  EXPECT_EQ(v[2], 0.0);
}

TEST(InputVectorTest, SingleItemIsOneForAnyDelta) {
  for (double d : {0.125, 1.0, 8.0}) {
    EXPECT_EQ(InputVector(State({2}), d, 3)[2], 1.0);
  }
}

TEST(InputVectorTest, MostRecentOccurrenceWins) {
  const Eigen::VectorXd v = InputVector(State({0, 1, 0}), 1.0, 2);
  EXPECT_EQ(v[0], 1.0);
  EXPECT_DOUBLE_EQ(v[1], std::exp(-1.0));
}

TEST(InputVectorTest, InfiniteDecayIsIndicator) {
  const Eigen::VectorXd v = InputVector(
      State({3, 0, 3, 1}), std::numeric_limits<double>::infinity(), 5);
  Eigen::VectorXd expected(5);
  expected << 1, 1, 0, 1, 0;
  EXPECT_EQ(v, expected);
}

TEST(InputVectorTest, UnknownItemsAreSkipped) {
  const SessionState state = State({0, UnknownCode(0), 1, UnknownCode(3)});
  EXPECT_EQ(state.items, (std::vector<ItemIndex>{0, 1}));
  EXPECT_EQ(state.unknown_skipped, 2u);
}

TEST(ScoreTest, IdentityModelRecommendsTheSameItem) {
  const ItemModel model = HandModel(RowMajorMatrix::Identity(4, 4));
  const Eigen::VectorXd scores = Score(model, State({2}));
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(4);
  expected[2] = 1.0;
  EXPECT_EQ(scores, expected);
  EXPECT_EQ(Recommend(model, State({2}), 1)[0].item, 2);
}

TEST(ScoreTest, SingleEdge) {
  RowMajorMatrix b = RowMajorMatrix::Zero(3, 3);
  b(0, 1) = 0.7;
  EXPECT_DOUBLE_EQ(Score(HandModel(b), State({0}))[1], 0.7);
}

TEST(ScoreTest, HandComputedProduct) {
  RowMajorMatrix b(3, 3);
  b << 0.1, 0.2, 0.3,  //
      -0.4, 0.5, 0.6,  //
      0.7, 0.8, -0.9;
  const ItemModel model = HandModel(b, 2.0);
  // Session (2, 0): input = [1, 0, e^{-1/2}].
  const double w = std::exp(-0.5);
  const Eigen::VectorXd scores = Score(model, State({2, 0}));
  EXPECT_DOUBLE_EQ(scores[0], 0.1 + w * 0.7);
  EXPECT_DOUBLE_EQ(scores[1], 0.2 + w * 0.8);
  EXPECT_DOUBLE_EQ(scores[2], 0.3 - w * 0.9);
}

TEST(ScoreTest, EmptySessionScoresZero) {
  const ItemModel model = HandModel(RowMajorMatrix::Identity(3, 3));
  EXPECT_EQ(Score(model, SessionState{}), Eigen::VectorXd::Zero(3));
}

TEST(ScoreTest, OutOfRangeItemIsDataError) {
  const ItemModel model = HandModel(RowMajorMatrix::Identity(3, 3));
  EXPECT_THROW(Score(model, State({5})), Error);
}

TEST(TopNTest, TiesGoToLowerIndex) {
  Eigen::VectorXd scores(3);
  scores << 0.2, 0.9, 0.9;
  const Ranking r = TopN(scores, 2);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].item, 1);
  EXPECT_EQ(r[1].item, 2);
}

TEST(TopNTest, FullOrderingAndShortVector) {
  Eigen::VectorXd scores(4);
  scores << 0.5, -1.0, 3.0, 0.5;
  const Ranking r = TopN(scores, 10);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0].item, 2);
  EXPECT_EQ(r[1].item, 0);
  EXPECT_EQ(r[2].item, 3);
  EXPECT_EQ(r[3].item, 1);
  EXPECT_THROW(TopN(scores, 0), Error);
}

class RecommenderPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(RecommenderPropertyTest, TopNMatchesFullSort) {
  std::mt19937_64 rng(GetParam());
  std::uniform_int_distribution<int> coarse(0, 6);  // forces ties
  const int n = 40;
  Eigen::VectorXd scores(n);
  for (int i = 0; i < n; ++i) scores[i] = coarse(rng) * 0.25;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  });
  for (std::size_t k : {1u, 5u, 17u, 40u}) {
    const Ranking r = TopN(scores, k);
    ASSERT_EQ(r.size(), k);
    for (std::size_t p = 0; p < k; ++p) {
      EXPECT_EQ(r[p].item, order[p]);
      EXPECT_EQ(r[p].score, scores[order[p]]);
    }
  }
}

TEST_P(RecommenderPropertyTest, ScalingInvarianceLinearityAndNoMasking) {
  std::mt19937_64 rng(100 + GetParam());
  std::normal_distribution<double> normal;
  const int n = 15;
  RowMajorMatrix b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = normal(rng);
  }
  const ItemModel model = HandModel(b);
  Eigen::VectorXd u(n), v(n);
  for (int i = 0; i < n; ++i) {
    u[i] = normal(rng);
    v[i] = normal(rng);
  }
  const Eigen::VectorXd sum = Score(model, u) + Score(model, v);
  EXPECT_LT((Score(model, Eigen::VectorXd(u + v)) - sum).cwiseAbs().maxCoeff(),
            1e-12 * std::max(1.0, sum.cwiseAbs().maxCoeff()));

  const Eigen::VectorXd scores = Score(model, u);
  EXPECT_EQ(TopN(scores, 10), [&] {
    Ranking r = TopN(Eigen::VectorXd(4.0 * scores), 10);
    for (ScoredItem& s : r) s.score /= 4.0;
    return r;
  }());

  std::uniform_int_distribution<ItemIndex> item(0, n - 1);
  std::vector<ItemIndex> session;
  for (int k = 0; k < 6; ++k) session.push_back(item(rng));
  const ItemModel identity = HandModel(RowMajorMatrix::Identity(n, n));
  EXPECT_EQ(Recommend(identity, State(session), 3)[0].item, session.back());
}

INSTANTIATE_TEST_SUITE_P(Seeds, RecommenderPropertyTest,
                         ::testing::Range(1, 21));

}  // namespace
}  // namespace slist
