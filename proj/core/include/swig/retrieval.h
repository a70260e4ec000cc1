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

#ifndef SWIG_RETRIEVAL_H_
#define SWIG_RETRIEVAL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swig/frame.h"
#include "swig/fusion.h"

namespace swig {

// Image features in one shared dimension, stored as 32-bit floats.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  // `values` is row-major ids.size() x dim. Throws swig::Error on a shape
  // mismatch, duplicate ids or non-finite entries.
  EmbeddingTable(std::vector<std::string> ids, std::size_t dim,
                 std::vector<float> values);

  std::size_t size() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const float> Row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::optional<std::size_t> Find(std::string_view id) const;

  // Binary layout: "SWGE", u32 count, u32 dim, count*dim little-endian
  // float32 row-major. Ids come from a separate newline-separated manifest.
  static EmbeddingTable Read(std::istream& manifest, std::istream& binary);
  static EmbeddingTable ReadFiles(const std::string& manifest_path,
                                  const std::string& binary_path);
  void Write(std::ostream& manifest, std::ostream& binary) const;

 private:
  std::vector<std::string> ids_;
  std::size_t dim_ = 0;
  std::vector<float> values_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// -||a - b||_2, accumulated in double. Throws on a dimension mismatch.
double L2Similarity(std::span<const float> a, std::span<const float> b);

struct Detection {
  NounId noun;
  BoundingBox box;
};
using DetectionList = std::vector<Detection>;

inline constexpr double kDetectionLogitThreshold = -1.0;

// One detection per box whose best class logit exceeds `logit_threshold`,
// followed by per-class NMS at `nms_iou`.
DetectionList ExtractDetections(const DetectionSet& detections,
                                double logit_threshold = kDetectionLogitThreshold,
                                double nms_iou = 0.5);

// (1/N) sum_i max_j 1[c_i = c_j] (1 + IoU(b_i, b_j)), N = |first|. Zero for
// an empty `first`; an empty `second` contributes 0 per term.
double ObjSim(const DetectionList& first, const DetectionList& second);
// Mean of both directions.
double SymmetricObjSim(const DetectionList& a, const DetectionList& b);

// Top-5 verbs with the predicted entities (and optional boxes) of each, in
// lexicon role order.
struct SituationPrediction {
  std::vector<std::string> verbs;
  std::vector<std::vector<NounId>> entities;
  std::vector<std::vector<std::optional<BoundingBox>>> boxes;
};

inline constexpr std::size_t kSituationTopK = 5;

// Throws swig::Error unless the record ranks exactly 5 verbs and carries a
// frame for each.
SituationPrediction ToSituationPrediction(const PredictionRecord& record,
                                          const VerbLexicon& lexicon);

// max over (i, j) of 1[v_i = w_j] / (i * j * N_v) * #matching entities.
double SitSim(const SituationPrediction& a, const SituationPrediction& b);
// Like SitSim with each matching entity weighted by (1 + IoU); two absent
// boxes count as IoU 1, one absent box as IoU 0.
double GrSitSim(const SituationPrediction& a, const SituationPrediction& b);

struct QuerySearchSplit {
  std::vector<std::string> query;
  std::vector<std::string> search;
};

// Per verb (in sorted verb order), shuffles the sorted ids with a seeded
// generator and takes the first `per_verb_query` as queries and the next
// `per_verb_search` as search images. Throws swig::Error naming any verb with
// too few images.
QuerySearchSplit SplitQuerySearch(
    const std::map<std::string, std::vector<std::string>>& ids_by_verb,
    std::size_t per_verb_query = 2, std::size_t per_verb_search = 48,
    std::uint64_t seed = 0);

struct Neighbor {
  std::string id;
  double score = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Scores every search id and returns the best min(k, |search|), by descending
// score then ascending id.
std::vector<Neighbor> RetrieveTopK(
    std::span<const std::string> search_ids,
    const std::function<double(std::size_t)>& score_of_index, std::size_t k,
    unsigned threads = 1);

enum class SimilarityMode { kL2, kObj, kSit, kGrSit };
std::string_view ToString(SimilarityMode mode);
// Accepts "l2", "obj", "sit" and "grsit".
SimilarityMode ParseSimilarityMode(std::string_view name);

// Per-image features for every similarity mode; a mode only needs its own.
struct FeatureStore {
  EmbeddingTable embeddings;
  std::map<std::string, DetectionList, std::less<>> detections;
  std::map<std::string, SituationPrediction, std::less<>> situations;

  // Throws swig::Error when either image lacks the feature `mode` needs.
  double Similarity(SimilarityMode mode, std::string_view query,
                    std::string_view candidate) const;
};

}  // namespace swig

#endif  // SWIG_RETRIEVAL_H_
