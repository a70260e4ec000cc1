// Copyright 2026 The SWiG Toolkit Authors. All Rights Reserved.
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

#include "swig/fusion.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "support/random_fixtures.h"
#include "swig/error.h"

namespace swig {
namespace {

VerbEntry Kneading() { return {"kneading", {"Agent", "Item", "Place"}}; }

GroundedFrame Frame(const NounId& agent, const NounId& item, const NounId& place = "kitchen") {
  return MakeFrame(Kneading(), {{"Agent", agent}, {"Item", item}, {"Place", place}});
}

TEST(DetectionSetTest, Validation) {
  EXPECT_THROW(DetectionSet({{0, 0, 1, 1}}, {"a", "b"}, {1.0}), Error);
  EXPECT_THROW(DetectionSet({{0, 0, 1, 1}}, {"a", "a"}, {1.0, 2.0}), Error);
  EXPECT_THROW(DetectionSet({{0, 0, 1, 1}}, {"a"}, {std::numeric_limits<double>::infinity()}),
               Error);
  const DetectionSet d({{0, 0, 1, 1}, {1, 1, 2, 2}}, {"a", "b"}, {1, 2, 3, 4});
  EXPECT_EQ(d.Score(1, 0), 3.0);
  EXPECT_EQ(d.ClassIndex("b"), 1u);
  EXPECT_FALSE(d.ClassIndex("c").has_value());
  const DetectionSet copy = d;  // the class index must survive copies
  EXPECT_EQ(copy.ClassIndex("b"), 1u);
  EXPECT_EQ(ToJson(ParseDetectionSet(ToJson(d))), ToJson(d));
}

TEST(FusionTest, SingleCandidateAboveThreshold) {
  const DetectionSet d({{10, 10, 50, 50}}, {"dough", "woman"}, {3.0, -9.0});
  const auto f = AssignGroundings(Frame("", "dough"), d);
  ASSERT_TRUE(f.IsGrounded(1));
  EXPECT_EQ(*f.groundings[1], (BoundingBox{10, 10, 50, 50}));
  EXPECT_FALSE(f.IsGrounded(0));  // null noun
  EXPECT_FALSE(f.IsGrounded(2));  // Place
}

TEST(FusionTest, LowLogitsStayUngrounded) {
  const DetectionSet d({{0, 0, 5, 5}, {1, 1, 6, 6}}, {"dough"}, {-10.0, -10.0});
  EXPECT_FALSE(AssignGroundings(Frame("", "dough"), d).IsGrounded(1));
  // The threshold itself counts as grounded.
  const DetectionSet at({{0, 0, 5, 5}}, {"dough"}, {-4.0});
  EXPECT_TRUE(AssignGroundings(Frame("", "dough"), at).IsGrounded(1));
}

TEST(FusionTest, RolesShareABox) {
  const DetectionSet d({{0, 0, 5, 5}, {2, 2, 9, 9}}, {"man"}, {1.0, 2.0});
  const auto f = AssignGroundings(Frame("man", "man"), d);
  ASSERT_TRUE(f.IsGrounded(0) && f.IsGrounded(1));
  EXPECT_EQ(*f.groundings[0], (BoundingBox{2, 2, 9, 9}));
  EXPECT_EQ(*f.groundings[0], *f.groundings[1]);
}

TEST(FusionTest, TieGoesToLowerIndex) {
  const DetectionSet d({{0, 0, 5, 5}, {2, 2, 9, 9}}, {"man"}, {1.0, 1.0});
  EXPECT_EQ(*AssignGroundings(Frame("man", ""), d).groundings[0], (BoundingBox{0, 0, 5, 5}));
}

TEST(FusionTest, UnknownNoun) {
  const DetectionSet d({{0, 0, 5, 5}}, {"man"}, {1.0});
  EXPECT_THROW(AssignGroundings(Frame("man", "dough"), d), Error);
}

TEST(FusionTest, ArgmaxMatchesExhaustiveScan) {
  testing::Rng rng(21);
  const std::vector<NounId> classes = {"man", "woman", "dough", "bread"};
  for (int i = 0; i < 200; ++i) {
    const DetectionSet d = testing::RandomDetectionSet(rng, 1 + rng.Index(8), classes);
    const auto f = AssignGroundings(
        Frame(classes[rng.Index(4)], classes[rng.Index(4)], classes[rng.Index(4)]), d);
    for (std::size_t r = 0; r < 2; ++r) {
      const std::size_t c = *d.ClassIndex(f.role_values[r].noun);
      std::size_t best = 0;
      for (std::size_t b = 1; b < d.num_boxes(); ++b) {
        if (d.Score(b, c) > d.Score(best, c)) best = b;
      }
      EXPECT_EQ(f.IsGrounded(r), d.Score(best, c) >= kDefaultFusionThreshold);
      if (f.IsGrounded(r)) EXPECT_EQ(*f.groundings[r], d.boxes()[best]);
    }
  }
}

TEST(FusionTest, RaisingThresholdNeverGroundsMore) {
  testing::Rng rng(22);
  const std::vector<NounId> classes = {"man", "woman", "dough"};
  for (int i = 0; i < 200; ++i) {
    const DetectionSet d = testing::RandomDetectionSet(rng, 1 + rng.Index(6), classes);
    const auto frame = Frame(classes[rng.Index(3)], classes[rng.Index(3)]);
    std::size_t previous = frame.size() + 1;
    for (double t = -14.0; t <= 8.0; t += 0.5) {
      const auto f = AssignGroundings(frame, d, t);
      std::size_t grounded = 0;
      for (std::size_t r = 0; r < f.size(); ++r) grounded += f.IsGrounded(r);
      EXPECT_LE(grounded, previous);
      previous = grounded;
    }
  }
}

}  // namespace
}  // namespace swig
