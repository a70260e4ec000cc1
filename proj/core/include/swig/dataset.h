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

#ifndef SWIG_DATASET_H_
#define SWIG_DATASET_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swig/frame.h"

namespace swig {

struct Dataset {
  VerbLexicon lexicon;
  NounVocabulary vocabulary;
  std::vector<AnnotatedImage> images;
  std::string split;                  // "train", "dev", "test" or empty
  std::vector<std::string> warnings;  // e.g. boxes clamped to the image
};

struct LoadOptions {
  // Raw per-role worker boxes expected by MergeWorkerBoxes.
  std::size_t workers_per_role = 3;
  // Reject nouns missing from the vocabulary. Skipped when the vocabulary is
  // empty.
  bool check_nouns = true;
};

// Coordinate-wise mean of exactly `expected` worker boxes.
BoundingBox MergeWorkerBoxes(std::span<const BoundingBox> boxes,
                             std::size_t expected = 3);

// Lexicon file: {"verb": ["Role", ...], ...}.
VerbLexicon ParseLexicon(const nlohmann::json& doc);
// Vocabulary file: either {"noun-id": "gloss", ...} or ["noun-id", ...].
NounVocabulary ParseVocabulary(const nlohmann::json& doc);

VerbLexicon LoadLexicon(const std::string& path);
NounVocabulary LoadVocabulary(const std::string& path);
nlohmann::json ReadJsonFile(const std::string& path);

// One canonical image record:
//   {"id", "width", "height", "verb",
//    "frames": [{role: noun-or-""} x 3],
//    "boxes": {role: [x1,y1,x2,y2] | null},
//    "worker_boxes": {role: [[...],[...],[...]] | null}}   (optional)
// Worker boxes are merged; boxes outside the image are clamped and a warning
// is appended. Throws swig::Error naming the image and field on malformed or
// unknown content. Rule violations are reported by ValidateImage.
AnnotatedImage ParseImageRecord(const nlohmann::json& record,
                                const VerbLexicon& lexicon,
                                const NounVocabulary& vocabulary,
                                const LoadOptions& options,
                                std::vector<std::string>* warnings);

// Structural rules for an annotated image: each annotator frame validated
// against the lexicon, plus ground-truth groundings (no box on Place, no box
// on a role every annotator left null, valid boxes inside the image).
ValidationReport ValidateImage(const AnnotatedImage& image,
                               const VerbLexicon& lexicon);

// Reads JSON Lines (one image per line; blank lines ignored). Errors carry
// the line number and image id. Duplicate ids are rejected.
Dataset LoadDataset(std::istream& annotations, VerbLexicon lexicon,
                    NounVocabulary vocabulary, const LoadOptions& options = {});
Dataset LoadDatasetFile(const std::string& annotations_path,
                        const std::string& lexicon_path,
                        const std::string& vocabulary_path,
                        const LoadOptions& options = {});

nlohmann::json ToJson(const AnnotatedImage& image);

// {"id", "verbs": [...], "frames": {verb: {"nouns": {role: noun},
//                                          "boxes": {role: box | null}}}}
PredictionRecord ParsePredictionRecord(const nlohmann::json& record,
                                       const VerbLexicon& lexicon);
std::vector<PredictionRecord> LoadPredictions(std::istream& in,
                                              const VerbLexicon& lexicon);
std::vector<PredictionRecord> LoadPredictionsFile(const std::string& path,
                                                  const VerbLexicon& lexicon);
nlohmann::json ToJson(const PredictionRecord& record);
nlohmann::json FrameToJson(const GroundedFrame& frame);
// {"nouns": {...}, "boxes": {...}} for the given verb.
GroundedFrame FrameFromJson(const nlohmann::json& doc, const VerbEntry& entry);

nlohmann::json BoxToJson(const std::optional<BoundingBox>& box);
// Accepts null or a 4-element numeric array.
std::optional<BoundingBox> BoxFromJson(const nlohmann::json& value);

enum class SlotCounting {
  // One slot per (image, annotator, role).
  kPerAnnotator,
  // One slot per (image, role); non-null when any annotator is non-null.
  kPerImage,
};

struct StatsOptions {
  SlotCounting counting = SlotCounting::kPerAnnotator;
  unsigned threads = 1;
};

struct ScaleAspectSample {
  NounId noun;
  std::string verb;
  std::string role;
  double scale = 0.0;   // max(box_w / img_w, box_h / img_h)
  double aspect = 0.0;  // box_h / box_w
};

struct StatsReport {
  std::size_t num_images = 0;
  std::size_t num_verbs = 0;  // distinct verbs among the images
  std::size_t total_noun_slots = 0;
  std::size_t non_null_slots = 0;
  std::size_t grounded_slots = 0;
  double mean_frame_length = 0.0;  // roles per image
  std::map<NounId, std::size_t> groundings_per_noun;
  std::map<std::string, double> role_grounding_rate;
  std::vector<ScaleAspectSample> scale_aspect_samples;

  double GroundedFraction() const {
    return non_null_slots == 0
               ? 0.0
               : static_cast<double>(grounded_slots) /
                     static_cast<double>(non_null_slots);
  }
};

// A slot is grounded when its noun is non-null and the merged ground-truth
// box for the role exists. Scale/aspect samples are taken once per grounded
// (image, role), labelled with the most frequent annotator noun.
StatsReport ComputeStats(const Dataset& dataset, const StatsOptions& options = {});
nlohmann::json ToJson(const StatsReport& report, bool include_samples = true);

// Adapter for the publicly released SWiG files: `space` is the imSitu space
// file ({"nouns": {id: {...}}, "verbs": {verb: {"order": [...]}}}), `release`
// maps image name -> {"width", "height", "verb", "frames", "bb"}. Boxes equal
// to [-1,-1,-1,-1] become "no grounding", and role names are capitalized
// ("place" -> "Place").
struct SwigConversion {
  VerbLexicon lexicon;
  NounVocabulary vocabulary;
  std::vector<nlohmann::json> records;  // canonical image records
};
SwigConversion ConvertSwigRelease(const nlohmann::json& release,
                                  const nlohmann::json& space);
std::string CanonicalRoleName(std::string_view release_role);

}  // namespace swig

#endif  // SWIG_DATASET_H_
