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

#include "swig/metrics.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "swig/error.h"
#include "swig/geometry.h"
#include "swig/parallel.h"

namespace swig {

std::string_view ToString(VerbSetting setting) {
  switch (setting) {
    case VerbSetting::kTop1:
      return "top1";
    case VerbSetting::kTop5:
      return "top5";
    case VerbSetting::kGroundTruthVerb:
      return "gt";
  }
  return "gt";
}

VerbSetting ParseVerbSetting(std::string_view name) {
  if (name == "top1") return VerbSetting::kTop1;
  if (name == "top5") return VerbSetting::kTop5;
  if (name == "gt") return VerbSetting::kGroundTruthVerb;
  throw Error("unknown verb setting '" + std::string(name) + "' (top1|top5|gt)");
}

std::string_view ToString(ValueAllMode mode) {
  return mode == ValueAllMode::kAnyPerRole ? "any-per-role" : "single-annotator";
}

ValueAllMode ParseValueAllMode(std::string_view name) {
  if (name == "any-per-role") return ValueAllMode::kAnyPerRole;
  if (name == "single-annotator") return ValueAllMode::kSingleAnnotator;
  throw Error("unknown value-all mode '" + std::string(name) + "'");
}

bool ScoreNoun(std::string_view predicted, std::span<const NounId> annotators) {
  return std::any_of(annotators.begin(), annotators.end(),
                     [predicted](const NounId& a) { return a == predicted; });
}

bool ScoreGrounding(const std::optional<BoundingBox>& predicted,
                    const std::optional<BoundingBox>& ground_truth,
                    double iou_threshold) {
  if (!predicted && !ground_truth) return true;
  if (predicted && ground_truth) return IoU(*predicted, *ground_truth) >= iou_threshold;
  return false;
}

VerbCounts& VerbCounts::operator+=(const VerbCounts& o) {
  images += o.images;
  role_slots += o.role_slots;
  verb_correct += o.verb_correct;
  value += o.value;
  grounded_value += o.grounded_value;
  value_all += o.value_all;
  grounded_value_all += o.grounded_value_all;
  return *this;
}

MetricRow VerbCounts::ToRow() const {
  auto frac = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  return {frac(verb_correct, images), frac(value, role_slots),
          frac(value_all, images), frac(grounded_value, role_slots),
          frac(grounded_value_all, images)};
}

VerbCounts ScoreImage(const AnnotatedImage& image,
                      const PredictionRecord* prediction, VerbSetting setting,
                      const EvalOptions& options) {
  const std::size_t num_roles = image.annotator_frames[0].role_values.size();
  VerbCounts c;
  c.images = 1;
  c.role_slots = num_roles;
  if (prediction == nullptr) return c;

  const auto& ranking = prediction->verb_ranking;
  bool verb_correct = false;
  switch (setting) {
    case VerbSetting::kTop1:
      verb_correct = !ranking.empty() && ranking.front() == image.verb;
      break;
    case VerbSetting::kTop5: {
      const auto end = ranking.begin() + std::min<std::size_t>(5, ranking.size());
      verb_correct = std::find(ranking.begin(), end, image.verb) != end;
      break;
    }
    case VerbSetting::kGroundTruthVerb:
      verb_correct = true;
      break;
  }
  c.verb_correct = verb_correct ? 1 : 0;
  if (!verb_correct) return c;

  const GroundedFrame* frame = prediction->FrameFor(image.verb);
  if (frame == nullptr || frame->size() != num_roles) return c;

  bool all_value = true;
  bool all_grounded = true;
  std::array<bool, kAnnotatorsPerImage> annotator_value;
  std::array<bool, kAnnotatorsPerImage> annotator_grounded;
  annotator_value.fill(true);
  annotator_grounded.fill(true);

  for (std::size_t r = 0; r < num_roles; ++r) {
    std::array<NounId, kAnnotatorsPerImage> refs;
    for (std::size_t a = 0; a < kAnnotatorsPerImage; ++a) {
      refs[a] = image.annotator_frames[a].role_values[r].noun;
    }
    const NounId& noun = frame->role_values[r].noun;
    const bool noun_ok = ScoreNoun(noun, refs);
    const bool ground_ok = ScoreGrounding(
        frame->groundings[r], image.gt_groundings[r], options.iou_threshold);
    c.value += noun_ok;
    c.grounded_value += noun_ok && ground_ok;
    all_value = all_value && noun_ok;
    all_grounded = all_grounded && noun_ok && ground_ok;
    for (std::size_t a = 0; a < kAnnotatorsPerImage; ++a) {
      const bool match = refs[a] == noun;
      annotator_value[a] = annotator_value[a] && match;
      annotator_grounded[a] = annotator_grounded[a] && match && ground_ok;
    }
  }

  if (options.value_all_mode == ValueAllMode::kAnyPerRole) {
    c.value_all = all_value;
    c.grounded_value_all = all_grounded;
  } else {
    auto any = [](const auto& v) { return std::find(v.begin(), v.end(), true) != v.end(); };
    c.value_all = any(annotator_value);
    c.grounded_value_all = any(annotator_grounded);
  }
  return c;
}

MetricReport Evaluate(const Dataset& dataset,
                      std::span<const PredictionRecord> predictions,
                      VerbSetting setting, const EvalOptions& options) {
  std::unordered_map<std::string_view, const PredictionRecord*> by_id;
  by_id.reserve(predictions.size());
  for (const auto& p : predictions) by_id.emplace(p.image_id, &p);

  std::vector<const PredictionRecord*> matched(dataset.images.size());
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < dataset.images.size(); ++i) {
    auto it = by_id.find(dataset.images[i].image_id);
    if (it == by_id.end()) {
      missing.push_back(dataset.images[i].image_id);
    } else {
      matched[i] = it->second;
    }
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string list;
    const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) list += (i ? ", " : "") + missing[i];
    if (missing.size() > shown) list += ", ...";
    throw Error("evaluate: " + std::to_string(missing.size()) +
                " image(s) without a prediction: " + list);
  }

  const auto scores = ParallelMap(dataset.images.size(), options.threads, [&](std::size_t i) {
    return ScoreImage(dataset.images[i], matched[i], setting, options);
  });

  MetricReport report;
  report.setting = setting;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    report.counts[dataset.images[i].verb] += scores[i];
  }
  for (const auto& [verb, counts] : report.counts) {
    report.per_verb[verb] = counts.ToRow();
  }
  if (!report.per_verb.empty()) report.macro = MacroAverage(report.per_verb);
  return report;
}

MetricRow MacroAverage(const std::map<std::string, MetricRow>& per_verb) {
  if (per_verb.empty()) throw Error("macro average over zero verbs");
  MetricRow sum;
  for (const auto& [verb, row] : per_verb) {
    sum.verb += row.verb;
    sum.value += row.value;
    sum.value_all += row.value_all;
    sum.grounded_value += row.grounded_value;
    sum.grounded_value_all += row.grounded_value_all;
  }
  const double n = static_cast<double>(per_verb.size());
  return {sum.verb / n, sum.value / n, sum.value_all / n, sum.grounded_value / n,
          sum.grounded_value_all / n};
}

namespace {

nlohmann::json RowToJson(const MetricRow& row) {
  return {{"verb", row.verb},
          {"value", row.value},
          {"value_all", row.value_all},
          {"grounded_value", row.grounded_value},
          {"grounded_value_all", row.grounded_value_all}};
}

}  // namespace

nlohmann::json ToJson(const MetricReport& report) {
  nlohmann::json per_verb = nlohmann::json::object();
  for (const auto& [verb, row] : report.per_verb) {
    const VerbCounts& c = report.counts.at(verb);
    nlohmann::json entry = RowToJson(row);
    entry["counts"] = {{"images", c.images},
                       {"role_slots", c.role_slots},
                       {"verb_correct", c.verb_correct},
                       {"value", c.value},
                       {"grounded_value", c.grounded_value},
                       {"value_all", c.value_all},
                       {"grounded_value_all", c.grounded_value_all}};
    per_verb[verb] = std::move(entry);
  }
  return {{"setting", ToString(report.setting)},
          {"num_verbs", report.per_verb.size()},
          {"macro", RowToJson(report.macro)},
          {"per_verb", std::move(per_verb)}};
}

std::string FormatMetricTable(std::span<const MetricReport> reports) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof(line), "%-8s %8s %8s %10s %10s %10s\n", "setting",
                "verb", "value", "value-all", "grnd-val", "grnd-all");
  os << line;
  for (const auto& r : reports) {
    char verb[16];
    if (r.setting == VerbSetting::kGroundTruthVerb) {
      std::snprintf(verb, sizeof(verb), "%8s", "-");
    } else {
      std::snprintf(verb, sizeof(verb), "%8.2f", 100.0 * r.macro.verb);
    }
    std::snprintf(line, sizeof(line), "%-8s %s %8.2f %10.2f %10.2f %10.2f\n",
                  std::string(ToString(r.setting)).c_str(), verb,
                  100.0 * r.macro.value, 100.0 * r.macro.value_all,
                  100.0 * r.macro.grounded_value,
                  100.0 * r.macro.grounded_value_all);
    os << line;
  }
  return os.str();
}

}  // namespace swig
