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

#ifndef SWIG_FUSION_H_
#define SWIG_FUSION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swig/frame.h"

namespace swig {

// Detector output for one image: P boxes, each with a logit per noun class.
class DetectionSet {
 public:
  DetectionSet() = default;
  // `scores` is row-major, boxes.size() x classes.size(). Throws swig::Error
  // on a shape mismatch, duplicate class ids or non-finite scores.
  DetectionSet(std::vector<BoundingBox> boxes, std::vector<NounId> classes,
               std::vector<double> scores);

  std::size_t num_boxes() const { return boxes_.size(); }
  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<BoundingBox>& boxes() const { return boxes_; }
  const std::vector<NounId>& classes() const { return classes_; }
  const std::vector<double>& scores() const { return scores_; }

  double Score(std::size_t box, std::size_t class_index) const {
    return scores_[box * classes_.size() + class_index];
  }
  std::optional<std::size_t> ClassIndex(std::string_view noun) const;

 private:
  std::vector<BoundingBox> boxes_;
  std::vector<NounId> classes_;
  std::vector<double> scores_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

inline constexpr double kDefaultFusionThreshold = -4.0;

// Late fusion. Every non-null, non-Place role takes the box with the highest
// logit for its noun (lowest box index on ties), and stays ungrounded when
// that logit is below `threshold`. Boxes may be shared between roles. Existing
// groundings in `frame` are replaced. Throws swig::Error for a non-null noun
// that has no column in the score matrix.
GroundedFrame AssignGroundings(const GroundedFrame& frame,
                               const DetectionSet& detections,
                               double threshold = kDefaultFusionThreshold);

// {"id", "classes": [noun, ...], "boxes": [[x1,y1,x2,y2], ...],
//  "scores": [[logit per class] per box]}
DetectionSet ParseDetectionSet(const nlohmann::json& record);
nlohmann::json ToJson(const DetectionSet& detections);

}  // namespace swig

#endif  // SWIG_FUSION_H_
