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

#ifndef SWIG_METRICS_H_
#define SWIG_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "swig/dataset.h"
#include "swig/frame.h"

namespace swig {

enum class VerbSetting { kTop1, kTop5, kGroundTruthVerb };

std::string_view ToString(VerbSetting setting);
// Accepts "top1", "top5" and "gt".
VerbSetting ParseVerbSetting(std::string_view name);

// How value-all decides that a whole frame is correct.
enum class ValueAllMode {
  // Every role matches some annotator, independently per role.
  kAnyPerRole,
  // One annotator matches every role.
  kSingleAnnotator,
};

std::string_view ToString(ValueAllMode mode);
// Accepts "any-per-role" and "single-annotator".
ValueAllMode ParseValueAllMode(std::string_view name);

inline constexpr double kGroundingIoU = 0.5;

// True iff `predicted` equals at least one annotator value; null matches null.
bool ScoreNoun(std::string_view predicted, std::span<const NounId> annotators);

// Both absent: correct. Both present: IoU >= iou_threshold. Otherwise wrong.
bool ScoreGrounding(const std::optional<BoundingBox>& predicted,
                    const std::optional<BoundingBox>& ground_truth,
                    double iou_threshold = kGroundingIoU);

struct MetricRow {
  double verb = 0.0;
  double value = 0.0;
  double value_all = 0.0;
  double grounded_value = 0.0;
  double grounded_value_all = 0.0;

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

// Integer numerators and denominators behind one verb's MetricRow.
struct VerbCounts {
  std::size_t images = 0;
  std::size_t role_slots = 0;
  std::size_t verb_correct = 0;
  std::size_t value = 0;
  std::size_t grounded_value = 0;
  std::size_t value_all = 0;
  std::size_t grounded_value_all = 0;

  VerbCounts& operator+=(const VerbCounts& other);
  MetricRow ToRow() const;
  friend bool operator==(const VerbCounts&, const VerbCounts&) = default;
};

struct MetricReport {
  VerbSetting setting = VerbSetting::kGroundTruthVerb;
  std::map<std::string, MetricRow> per_verb;
  std::map<std::string, VerbCounts> counts;
  MetricRow macro;
};

struct EvalOptions {
  ValueAllMode value_all_mode = ValueAllMode::kAnyPerRole;
  double iou_threshold = kGroundingIoU;
  unsigned threads = 1;
};

// Scores one image. `prediction` may be null (no credit at all).
VerbCounts ScoreImage(const AnnotatedImage& image,
                      const PredictionRecord* prediction, VerbSetting setting,
                      const EvalOptions& options = {});

// Per-verb metrics over the verbs that have at least one image, then their
// unweighted mean. Throws swig::Error listing the image ids that have no
// prediction.
MetricReport Evaluate(const Dataset& dataset,
                      std::span<const PredictionRecord> predictions,
                      VerbSetting setting, const EvalOptions& options = {});

// Unweighted mean over verbs. Throws swig::Error on an empty map.
MetricRow MacroAverage(const std::map<std::string, MetricRow>& per_verb);

nlohmann::json ToJson(const MetricReport& report);

// Fixed-width table with the columns verb, value, value-all, grounded-value,
// grounded-value-all (percent). The verb column is blank for the
// ground-truth-verb setting.
std::string FormatMetricTable(std::span<const MetricReport> reports);

}  // namespace swig

#endif  // SWIG_METRICS_H_
