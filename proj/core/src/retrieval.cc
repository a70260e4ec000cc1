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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <utility>

#include "swig/error.h"
#include "swig/geometry.h"
#include "swig/parallel.h"

namespace swig {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'W', 'G', 'E'};

std::uint32_t ReadU32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw Error("embeddings: truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void WriteU32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::vector<std::string> ids, std::size_t dim,
                               std::vector<float> values)
    : ids_(std::move(ids)), dim_(dim), values_(std::move(values)) {
  if (values_.size() != ids_.size() * dim_) {
    throw Error("embeddings: " + std::to_string(values_.size()) + " values for " +
                std::to_string(ids_.size()) + " ids of dimension " + std::to_string(dim_));
  }
  for (float v : values_) {
    if (!std::isfinite(v)) throw Error("embeddings: non-finite entry");
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error("embeddings: duplicate id '" + ids_[i] + "'");
    }
  }
}

std::optional<std::size_t> EmbeddingTable::Find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingTable EmbeddingTable::Read(std::istream& manifest, std::istream& binary) {
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(manifest, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  std::array<char, 4> magic{};
  if (!binary.read(magic.data(), 4) || magic != kMagic) {
    throw Error("embeddings: bad magic (expected SWGE)");
  }
  const std::uint32_t count = ReadU32(binary);
  const std::uint32_t dim = ReadU32(binary);
  if (count != ids.size()) {
    throw Error("embeddings: header count " + std::to_string(count) +
                " does not match manifest size " + std::to_string(ids.size()));
  }
  std::vector<float> values(static_cast<std::size_t>(count) * dim);
  for (float& v : values) {
    unsigned char b[4];
    if (!binary.read(reinterpret_cast<char*>(b), 4)) throw Error("embeddings: truncated data");
    const std::uint32_t bits = static_cast<std::uint32_t>(b[0]) |
                               (static_cast<std::uint32_t>(b[1]) << 8) |
                               (static_cast<std::uint32_t>(b[2]) << 16) |
                               (static_cast<std::uint32_t>(b[3]) << 24);
    v = std::bit_cast<float>(bits);
  }
  if (binary.peek() != std::char_traits<char>::eof()) {
    throw Error("embeddings: trailing bytes after data");
  }
  return EmbeddingTable(std::move(ids), dim, std::move(values));
}

EmbeddingTable EmbeddingTable::ReadFiles(const std::string& manifest_path,
                                         const std::string& binary_path) {
  std::ifstream manifest(manifest_path);
  if (!manifest) throw Error("cannot open '" + manifest_path + "'");
  std::ifstream binary(binary_path, std::ios::binary);
  if (!binary) throw Error("cannot open '" + binary_path + "'");
  return Read(manifest, binary);
}

void EmbeddingTable::Write(std::ostream& manifest, std::ostream& binary) const {
  for (const auto& id : ids_) manifest << id << '\n';
  binary.write(kMagic.data(), 4);
  WriteU32(binary, static_cast<std::uint32_t>(ids_.size()));
  WriteU32(binary, static_cast<std::uint32_t>(dim_));
  for (float v : values_) WriteU32(binary, std::bit_cast<std::uint32_t>(v));
}

double L2Similarity(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error("l2_similarity: dimension mismatch (" + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return sum == 0.0 ? 0.0 : -std::sqrt(sum);  // no negative zero
}

DetectionList ExtractDetections(const DetectionSet& detections,
                                double logit_threshold, double nms_iou) {
  // Best class per box, kept when its logit clears the threshold.
  std::map<std::size_t, std::vector<std::size_t>> boxes_by_class;
  std::vector<double> best_score(detections.num_boxes());
  for (std::size_t b = 0; b < detections.num_boxes(); ++b) {
    if (detections.num_classes() == 0) break;
    std::size_t best = 0;
    for (std::size_t c = 1; c < detections.num_classes(); ++c) {
      if (detections.Score(b, c) > detections.Score(b, best)) best = c;
    }
    best_score[b] = detections.Score(b, best);
    if (best_score[b] > logit_threshold) boxes_by_class[best].push_back(b);
  }

  std::vector<std::size_t> kept;
  for (const auto& [cls, members] : boxes_by_class) {
    std::vector<ScoredBox> candidates;
    for (std::size_t b : members) candidates.push_back({detections.boxes()[b], best_score[b]});
    for (std::size_t k : NonMaxSuppression(candidates, nms_iou, candidates.size())) {
      kept.push_back(members[k]);
    }
  }
  std::sort(kept.begin(), kept.end());

  DetectionList out;
  for (std::size_t b : kept) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < detections.num_classes(); ++c) {
      if (detections.Score(b, c) > detections.Score(b, best)) best = c;
    }
    out.push_back({detections.classes()[best], detections.boxes()[b]});
  }
  return out;
}

double ObjSim(const DetectionList& first, const DetectionList& second) {
  if (first.empty()) return 0.0;
  double total = 0.0;
  for (const auto& d : first) {
    double best = 0.0;
    for (const auto& e : second) {
      if (d.noun == e.noun) best = std::max(best, 1.0 + IoU(d.box, e.box));
    }
    total += best;
  }
  return total / static_cast<double>(first.size());
}

double SymmetricObjSim(const DetectionList& a, const DetectionList& b) {
  return 0.5 * (ObjSim(a, b) + ObjSim(b, a));
}

SituationPrediction ToSituationPrediction(const PredictionRecord& record,
                                          const VerbLexicon& lexicon) {
  if (record.verb_ranking.size() != kSituationTopK) {
    throw Error("situation '" + record.image_id + "': expected exactly 5 ranked verbs, got " +
                std::to_string(record.verb_ranking.size()));
  }
  SituationPrediction out;
  for (const auto& verb : record.verb_ranking) {
    const GroundedFrame* frame = record.FrameFor(verb);
    if (frame == nullptr) {
      throw Error("situation '" + record.image_id + "': no frame for verb '" + verb + "'");
    }
    if (frame->size() != lexicon.At(verb).roles.size()) {
      throw Error("situation '" + record.image_id + "': frame for '" + verb +
                  "' does not match the lexicon");
    }
    std::vector<NounId> nouns;
    for (const auto& rv : frame->role_values) nouns.push_back(rv.noun);
    out.verbs.push_back(verb);
    out.entities.push_back(std::move(nouns));
    out.boxes.push_back(frame->groundings);
  }
  return out;
}

namespace {

template <typename TermFn>
double SituationSimilarity(const SituationPrediction& a, const SituationPrediction& b,
                           TermFn term) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.verbs.size(); ++i) {
    for (std::size_t j = 0; j < b.verbs.size(); ++j) {
      if (a.verbs[i] != b.verbs[j]) continue;
      const std::size_t roles = std::min(a.entities[i].size(), b.entities[j].size());
      if (roles == 0) continue;
      double sum = 0.0;
      for (std::size_t k = 0; k < roles; ++k) {
        if (a.entities[i][k] == b.entities[j][k]) sum += term(i, j, k);
      }
      const double weight = static_cast<double>((i + 1) * (j + 1) * roles);
      best = std::max(best, sum / weight);
    }
  }
  return best;
}

std::optional<BoundingBox> BoxAt(const SituationPrediction& s, std::size_t i,
                                 std::size_t k) {
  if (i >= s.boxes.size() || k >= s.boxes[i].size()) return std::nullopt;
  return s.boxes[i][k];
}

}  // namespace

double SitSim(const SituationPrediction& a, const SituationPrediction& b) {
  return SituationSimilarity(a, b, [](std::size_t, std::size_t, std::size_t) { return 1.0; });
}

double GrSitSim(const SituationPrediction& a, const SituationPrediction& b) {
  return SituationSimilarity(a, b, [&](std::size_t i, std::size_t j, std::size_t k) {
    const auto ba = BoxAt(a, i, k);
    const auto bb = BoxAt(b, j, k);
    if (!ba && !bb) return 2.0;
    if (ba && bb) return 1.0 + IoU(*ba, *bb);
    return 1.0;
  });
}

QuerySearchSplit SplitQuerySearch(
    const std::map<std::string, std::vector<std::string>>& ids_by_verb,
    std::size_t per_verb_query, std::size_t per_verb_search, std::uint64_t seed) {
  const std::size_t need = per_verb_query + per_verb_search;
  for (const auto& [verb, ids] : ids_by_verb) {
    if (ids.size() < need) {
      throw Error("split: verb '" + verb + "' has " + std::to_string(ids.size()) +
                  " images, needs " + std::to_string(need));
    }
  }
  std::mt19937_64 rng(seed);
  QuerySearchSplit split;
  for (const auto& [verb, ids] : ids_by_verb) {
    std::vector<std::string> pool = ids;
    std::sort(pool.begin(), pool.end());
    if (std::adjacent_find(pool.begin(), pool.end()) != pool.end()) {
      throw Error("split: verb '" + verb + "' lists an image twice");
    }
    // Fisher-Yates with an explicit draw so results do not depend on the
    // standard library's distribution implementation.
    for (std::size_t i = pool.size(); i > 1; --i) {
      std::swap(pool[i - 1], pool[rng() % i]);
    }
    split.query.insert(split.query.end(), pool.begin(), pool.begin() + per_verb_query);
    split.search.insert(split.search.end(), pool.begin() + per_verb_query,
                        pool.begin() + need);
  }
  return split;
}

std::vector<Neighbor> RetrieveTopK(std::span<const std::string> search_ids,
                                   const std::function<double(std::size_t)>& score_of_index,
                                   std::size_t k, unsigned threads) {
  const auto scores = ParallelMap(search_ids.size(), threads, score_of_index);
  std::vector<Neighbor> all;
  all.reserve(search_ids.size());
  for (std::size_t i = 0; i < search_ids.size(); ++i) all.push_back({search_ids[i], scores[i]});
  const std::size_t n = std::min(k, all.size());
  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    better);
  all.resize(n);
  return all;
}

std::string_view ToString(SimilarityMode mode) {
  switch (mode) {
    case SimilarityMode::kL2:
      return "l2";
    case SimilarityMode::kObj:
      return "obj";
    case SimilarityMode::kSit:
      return "sit";
    case SimilarityMode::kGrSit:
      return "grsit";
  }
  return "l2";
}

SimilarityMode ParseSimilarityMode(std::string_view name) {
  if (name == "l2") return SimilarityMode::kL2;
  if (name == "obj") return SimilarityMode::kObj;
  if (name == "sit") return SimilarityMode::kSit;
  if (name == "grsit") return SimilarityMode::kGrSit;
  throw Error("unknown similarity mode '" + std::string(name) + "' (l2|obj|sit|grsit)");
}

double FeatureStore::Similarity(SimilarityMode mode, std::string_view query,
                                std::string_view candidate) const {
  auto missing = [&](std::string_view id) {
    return Error("retrieve: no " + std::string(ToString(mode)) + " feature for image '" +
                 std::string(id) + "'");
  };
  switch (mode) {
    case SimilarityMode::kL2: {
      const auto q = embeddings.Find(query);
      if (!q) throw missing(query);
      const auto c = embeddings.Find(candidate);
      if (!c) throw missing(candidate);
      return L2Similarity(embeddings.Row(*q), embeddings.Row(*c));
    }
    case SimilarityMode::kObj: {
      const auto q = detections.find(query);
      if (q == detections.end()) throw missing(query);
      const auto c = detections.find(candidate);
      if (c == detections.end()) throw missing(candidate);
      return ObjSim(q->second, c->second);
    }
    case SimilarityMode::kSit:
    case SimilarityMode::kGrSit: {
      const auto q = situations.find(query);
      if (q == situations.end()) throw missing(query);
      const auto c = situations.find(candidate);
      if (c == situations.end()) throw missing(candidate);
      return mode == SimilarityMode::kSit ? SitSim(q->second, c->second)
                                          : GrSitSim(q->second, c->second);
    }
  }
  return 0.0;
}

}  // namespace swig
