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

#include "swig/retrieval.h"

#include <cmath>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "support/oracles.h"
#include "support/random_fixtures.h"
#include "swig/error.h"

namespace swig {
namespace {

using testing::Rng;

TEST(L2Test, Examples) {
  const std::vector<float> a = {0, 0}, b = {3, 4};
  EXPECT_EQ(L2Similarity(a, a), 0.0);
  EXPECT_FALSE(std::signbit(L2Similarity(a, a)));
  EXPECT_DOUBLE_EQ(L2Similarity(a, b), -5.0);
  const std::vector<float> c = {1};
  EXPECT_THROW(L2Similarity(a, c), Error);
}

TEST(L2Test, HighPrecisionNorm) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  Rng rng(51);
  std::vector<float> a(2048), b(2048);
  for (auto& v : a) v = static_cast<float>(rng.Uniform(-1, 1));
  for (auto& v : b) v = static_cast<float>(rng.Uniform(-1, 1));
  Big sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Big d = Big(a[i]) - Big(b[i]);
    sum += d * d;
  }
  const double ref = -static_cast<double>(sqrt(sum));
  EXPECT_LE(std::abs(L2Similarity(a, b) - ref) / std::abs(ref), 1e-9);
}

TEST(EmbeddingTableTest, RoundTrip) {
  const EmbeddingTable t({"a", "b"}, 3, {1, 2, 3, -1.5f, 0, 7});
  std::stringstream manifest, binary;
  t.Write(manifest, binary);
  EXPECT_EQ(binary.str().substr(0, 4), "SWGE");
  const EmbeddingTable back = EmbeddingTable::Read(manifest, binary);
  EXPECT_EQ(back.ids(), t.ids());
  EXPECT_EQ(back.Row(1)[0], -1.5f);
  EXPECT_EQ(back.Find("b"), 1u);

  std::stringstream m2("a\nb\n"), truncated(binary.str().substr(0, 20));
  EXPECT_THROW(EmbeddingTable::Read(m2, truncated), Error);
  std::stringstream m3("a\n"), full(binary.str());
  EXPECT_THROW(EmbeddingTable::Read(m3, full), Error);
  EXPECT_THROW(EmbeddingTable({"a", "a"}, 1, {1, 2}), Error);
}

TEST(ObjSimTest, Examples) {
  const DetectionList one = {{"cat", {0, 0, 2, 2}}};
  EXPECT_DOUBLE_EQ(ObjSim(one, one), 2.0);
  const DetectionList dog = {{"dog", {0, 0, 2, 2}}};
  EXPECT_EQ(ObjSim(one, dog), 0.0);
  const DetectionList i = {{"cat", {0, 0, 2, 2}}, {"dog", {0, 0, 1, 1}}};
  const DetectionList j = {{"cat", {1, 1, 3, 3}}};
  EXPECT_DOUBLE_EQ(ObjSim(i, j), 4.0 / 7.0);
  EXPECT_EQ(ObjSim({}, j), 0.0);
  EXPECT_EQ(ObjSim(i, {}), 0.0);
  EXPECT_DOUBLE_EQ(SymmetricObjSim(i, j), 0.5 * (4.0 / 7.0 + (1 + 1.0 / 7.0)));
}

TEST(ExtractDetectionsTest, ThresholdAndNms) {
  const DetectionSet d({{0, 0, 10, 10}, {1, 1, 10, 10}, {50, 50, 60, 60}, {0, 0, 5, 5}},
                       {"cat", "dog"}, {2.0, 0.0, 1.0, -3.0, -2.0, -5.0, -3.0, 0.5});
  const DetectionList out = ExtractDetections(d);
  // Box 1 is a suppressed duplicate of box 0; box 2 is below threshold.
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].noun, "cat");
  EXPECT_EQ(out[1].noun, "dog");
  EXPECT_EQ(out[1].box, (BoundingBox{0, 0, 5, 5}));
}

SituationPrediction Situation(std::vector<std::string> verbs,
                              std::vector<std::vector<NounId>> entities) {
  SituationPrediction s{std::move(verbs), std::move(entities), {}};
  for (const auto& e : s.entities) s.boxes.emplace_back(e.size());
  return s;
}

TEST(SitSimTest, Examples) {
  const auto a = Situation({"v1", "v2", "v3", "v4", "v5"},
                           {{"a"}, {"p", "q", "r", "s"}, {"x"}, {"x"}, {"x"}});
  const auto b = Situation({"w1", "v2", "w3", "w4", "w5"},
                           {{"z"}, {"p", "q", "m", "n"}, {"x"}, {"x"}, {"x"}});
  // v2 sits at position 2 in both: 1/(2*2*4) * 2.
  EXPECT_DOUBLE_EQ(SitSim(a, b), 2.0 / 16.0);
  const auto c = Situation({"v2", "u2", "u3", "u4", "u5"},
                           {{"p", "q", "m", "n"}, {"x"}, {"x"}, {"x"}, {"x"}});
  const auto d = Situation({"u9", "v2", "u8", "u7", "u6"},
                           {{"x"}, {"p", "q", "k", "l"}, {"x"}, {"x"}, {"x"}});
  EXPECT_DOUBLE_EQ(SitSim(c, d), 0.25);
  const auto none = Situation({"n1", "n2", "n3", "n4", "n5"}, {{"a"}, {"a"}, {"a"}, {"a"}, {"a"}});
  EXPECT_EQ(SitSim(a, none), 0.0);
  EXPECT_DOUBLE_EQ(SitSim(a, a), 1.0);
}

TEST(GrSitSimTest, Examples) {
  auto a = Situation({"v1", "a2", "a3", "a4", "a5"}, {{"p", "q"}, {"x"}, {"x"}, {"x"}, {"x"}});
  auto b = Situation({"v1", "b2", "b3", "b4", "b5"}, {{"p", "q"}, {"x"}, {"x"}, {"x"}, {"x"}});
  a.boxes[0] = {BoundingBox{0, 0, 2, 2}, BoundingBox{0, 0, 2, 2}};
  b.boxes[0] = {BoundingBox{0, 0, 2, 2}, BoundingBox{1, 1, 3, 3}};
  EXPECT_DOUBLE_EQ(GrSitSim(a, b), 0.5 * ((1 + 1) + (1 + 1.0 / 7.0)));
  // No overlap anywhere gives the ungrounded similarity.
  b.boxes[0] = {BoundingBox{10, 10, 12, 12}, BoundingBox{10, 10, 12, 12}};
  EXPECT_DOUBLE_EQ(GrSitSim(a, b), SitSim(a, b));
  // Both absent count as a perfect match, one absent as no overlap.
  a.boxes[0] = {std::nullopt, std::nullopt};
  b.boxes[0] = {std::nullopt, BoundingBox{0, 0, 1, 1}};
  EXPECT_DOUBLE_EQ(GrSitSim(a, b), 0.5 * (2 + 1));
}

std::vector<NounId> Nouns() { return {"man", "woman", "dog", "ball", "car", ""}; }

TEST(SituationSimilarityTest, SelfMaximalAndBounded) {
  Rng rng(52);
  const VerbLexicon lex = testing::RandomLexicon(rng, 12);
  for (int i = 0; i < 500; ++i) {
    const auto a = testing::RandomSituation(rng, lex, Nouns(), true);
    const auto b = testing::RandomSituation(rng, lex, Nouns(), rng.Chance(0.5));
    EXPECT_DOUBLE_EQ(SitSim(a, a), 1.0);
    EXPECT_DOUBLE_EQ(GrSitSim(a, a), 2.0);
    const double s = SitSim(a, b), g = GrSitSim(a, b);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
    EXPECT_GE(g, s - 1e-15);
    EXPECT_LE(g, 2.0);
    EXPECT_DOUBLE_EQ(s, SitSim(b, a));
    EXPECT_DOUBLE_EQ(g, GrSitSim(b, a));
  }
}

TEST(SplitTest, SizesAndDeterminism) {
  std::map<std::string, std::vector<std::string>> by_verb;
  for (int v = 0; v < 3; ++v) {
    for (int i = 0; i < 50; ++i) {
      by_verb["v" + std::to_string(v)].push_back("img" + std::to_string(v * 100 + i));
    }
  }
  const auto s = SplitQuerySearch(by_verb);
  EXPECT_EQ(s.query.size(), 6u);
  EXPECT_EQ(s.search.size(), 144u);
  std::set<std::string> all(s.query.begin(), s.query.end());
  all.insert(s.search.begin(), s.search.end());
  EXPECT_EQ(all.size(), 150u);
  const auto again = SplitQuerySearch(by_verb);
  EXPECT_EQ(again.query, s.query);
  EXPECT_EQ(again.search, s.search);
  EXPECT_NE(SplitQuerySearch(by_verb, 2, 48, 1).query, s.query);

  by_verb["short"] = {"x", "y"};
  try {
    SplitQuerySearch(by_verb);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("short"), std::string::npos);
  }
}

TEST(RetrieveTest, MatchesSortOracle) {
  Rng rng(53);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> ids;
    std::vector<double> scores;
    for (int j = 0; j < 20; ++j) {
      ids.push_back("id" + std::to_string(rng.Index(1000)) + "_" + std::to_string(j));
      // Coarse scores so ties are common.
      scores.push_back(static_cast<double>(rng.Index(5)));
    }
    const auto score = [&](std::size_t k) { return scores[k]; };
    const std::size_t k = 1 + rng.Index(25);
    EXPECT_EQ(RetrieveTopK(ids, score, k, 1), oracle::SortAll(ids, score, k));
    EXPECT_EQ(RetrieveTopK(ids, score, k, 8), oracle::SortAll(ids, score, k));
  }
}

TEST(RetrieveTest, SelfIsFirstUnderGrSit) {
  Rng rng(54);
  const VerbLexicon lex = testing::RandomLexicon(rng, 10);
  FeatureStore store;
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) {
    ids.push_back("im" + std::to_string(i));
    store.situations[ids.back()] = testing::RandomSituation(rng, lex, Nouns(), true);
  }
  const auto top = RetrieveTopK(
      ids, [&](std::size_t j) { return store.Similarity(SimilarityMode::kGrSit, "im7", ids[j]); },
      100);
  EXPECT_EQ(top.size(), 20u);
  EXPECT_EQ(top[0].id, "im7");
  EXPECT_DOUBLE_EQ(top[0].score, 2.0);
  EXPECT_THROW(store.Similarity(SimilarityMode::kObj, "im1", "im2"), Error);
}

TEST(SimilarityModeTest, Names) {
  EXPECT_EQ(ParseSimilarityMode("grsit"), SimilarityMode::kGrSit);
  EXPECT_EQ(ToString(SimilarityMode::kL2), "l2");
  EXPECT_THROW(ParseSimilarityMode("cosine"), Error);
}

}  // namespace
}  // namespace swig
