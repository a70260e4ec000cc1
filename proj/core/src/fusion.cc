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
#include <string>
#include <utility>

#include "swig/dataset.h"
#include "swig/error.h"

namespace swig {

DetectionSet::DetectionSet(std::vector<BoundingBox> boxes,
                           std::vector<NounId> classes,
                           std::vector<double> scores)
    : boxes_(std::move(boxes)),
      classes_(std::move(classes)),
      scores_(std::move(scores)) {
  if (scores_.size() != boxes_.size() * classes_.size()) {
    throw Error("detections: score matrix has " + std::to_string(scores_.size()) +
                " entries, expected " + std::to_string(boxes_.size()) + " x " +
                std::to_string(classes_.size()));
  }
  for (double s : scores_) {
    if (!std::isfinite(s)) throw Error("detections: non-finite score");
  }
  for (const auto& box : boxes_) {
    if (!box.IsValid()) throw Error("detections: invalid box " + ToString(box));
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (IsNull(classes_[i])) throw Error("detections: empty class id");
    if (!index_.emplace(classes_[i], i).second) {
      throw Error("detections: duplicate class '" + classes_[i] + "'");
    }
  }
}

std::optional<std::size_t> DetectionSet::ClassIndex(std::string_view noun) const {
  auto it = index_.find(noun);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroundedFrame AssignGroundings(const GroundedFrame& frame,
                               const DetectionSet& detections,
                               double threshold) {
  GroundedFrame out = frame;
  out.groundings.assign(frame.role_values.size(), std::nullopt);
  for (std::size_t r = 0; r < frame.role_values.size(); ++r) {
    const auto& [role, noun] = frame.role_values[r];
    if (IsNull(noun) || role == kPlaceRole) continue;
    const auto column = detections.ClassIndex(noun);
    if (!column) {
      throw Error("fusion: noun '" + noun + "' has no detector score column");
    }
    if (detections.num_boxes() == 0) continue;
    std::size_t best = 0;
    double best_score = detections.Score(0, *column);
    for (std::size_t b = 1; b < detections.num_boxes(); ++b) {
      const double s = detections.Score(b, *column);
      if (s > best_score) {
        best_score = s;
        best = b;
      }
    }
    if (best_score >= threshold) out.groundings[r] = detections.boxes()[best];
  }
  return out;
}

DetectionSet ParseDetectionSet(const nlohmann::json& record) {
  if (!record.is_object()) throw Error("detections: expected an object");
  auto array_field = [&](const char* name) -> const nlohmann::json& {
    auto it = record.find(name);
    if (it == record.end() || !it->is_array()) {
      throw Error(std::string("detections: field '") + name + "' must be an array");
    }
    return *it;
  };
  std::vector<NounId> classes;
  for (const auto& c : array_field("classes")) {
    if (!c.is_string()) throw Error("detections: class ids must be strings");
    classes.push_back(c.get<std::string>());
  }
  std::vector<BoundingBox> boxes;
  for (const auto& b : array_field("boxes")) {
    auto box = BoxFromJson(b);
    if (!box) throw Error("detections: null box");
    boxes.push_back(*box);
  }
  const auto& rows = array_field("scores");
  if (rows.size() != boxes.size()) {
    throw Error("detections: " + std::to_string(rows.size()) + " score rows for " +
                std::to_string(boxes.size()) + " boxes");
  }
  std::vector<double> scores;
  scores.reserve(boxes.size() * classes.size());
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != classes.size()) {
      throw Error("detections: every score row needs one logit per class");
    }
    for (const auto& v : row) {
      if (!v.is_number()) throw Error("detections: scores must be numbers");
      scores.push_back(v.get<double>());
    }
  }
  return DetectionSet(std::move(boxes), std::move(classes), std::move(scores));
}

nlohmann::json ToJson(const DetectionSet& detections) {
  nlohmann::json boxes = nlohmann::json::array();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t b = 0; b < detections.num_boxes(); ++b) {
    boxes.push_back(BoxToJson(detections.boxes()[b]));
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < detections.num_classes(); ++c) {
      row.push_back(detections.Score(b, c));
    }
    rows.push_back(std::move(row));
  }
  return {{"classes", detections.classes()}, {"boxes", std::move(boxes)},
          {"scores", std::move(rows)}};
}

}  // namespace swig
