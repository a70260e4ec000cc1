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

#ifndef SWIG_GEOMETRY_H_
#define SWIG_GEOMETRY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swig/frame.h"

namespace swig {

// Intersection over union of two closed rectangles. 0 when the interiors are
// disjoint, 1 iff the boxes are equal.
double IoU(const BoundingBox& a, const BoundingBox& b);

struct ScoredBox {
  BoundingBox box;
  double score = 0.0;  // logit or probability; the caller decides
};

// Greedy non-maximum suppression. Candidates are visited in descending score
// order (equal scores: lower index first); a candidate is dropped when its IoU
// with an already kept box exceeds `iou_threshold`. Returns at most `keep`
// indices into `candidates`, in visiting order.
std::vector<std::size_t> NonMaxSuppression(std::span<const ScoredBox> candidates,
                                           double iou_threshold,
                                           std::size_t keep);

enum class ClusterMethod {
  // Globally optimal 1-D k-means (dynamic programming over the sorted data).
  kOptimal,
  // Lloyd iterations from k-means++ seeding.
  kLloyd,
};

struct ClusterOptions {
  std::uint64_t seed = 0;
  int max_iterations = 100;
  ClusterMethod method = ClusterMethod::kOptimal;
};

// k-means over log(h / w). Returns exp(centroid) for each of the k clusters,
// sorted ascending. Throws swig::Error when k < 1 or k > boxes.size().
std::vector<double> ClusterAspectRatios(std::span<const BoundingBox> boxes,
                                        std::size_t k,
                                        const ClusterOptions& options = {});

// Same, over precomputed log-aspect values.
std::vector<double> ClusterLogValues(std::span<const double> values,
                                     std::size_t k,
                                     const ClusterOptions& options = {});

// Sum of squared distances from each value to its nearest centroid.
double KMeansObjective(std::span<const double> values,
                       std::span<const double> centroids);

enum class AnchorLabel { kNegative, kPositive };

inline constexpr double kDefaultPositiveIoU = 0.5;

// Positive iff IoU(anchor, gt) >= positive_iou.
std::vector<AnchorLabel> MatchAnchors(std::span<const BoundingBox> anchors,
                                      const BoundingBox& gt,
                                      double positive_iou = kDefaultPositiveIoU);

// Positive iff the anchor reaches positive_iou against any of `gts`.
std::vector<AnchorLabel> MatchAnchors(std::span<const BoundingBox> anchors,
                                      std::span<const BoundingBox> gts,
                                      double positive_iou = kDefaultPositiveIoU);

struct PyramidLevel {
  int grid_width = 0;
  int grid_height = 0;
  double stride = 0.0;     // pixels per grid cell
  double base_size = 0.0;  // anchor side before scale / aspect
};

struct AnchorConfig {
  std::vector<PyramidLevel> levels;
  std::vector<double> aspect_ratios;  // h / w
  std::vector<double> scales;
  std::size_t top_regions = 100;

  std::size_t AnchorsPerCell() const {
    return aspect_ratios.size() * scales.size();
  }
  // Sum over levels of W_i * H_i * A * P: the size of the per-anchor
  // objectness-times-region output.
  std::size_t ClassificationTensorSize() const;
  // Throws swig::Error on empty levels/ratios/scales, non-positive values,
  // or top_regions == 0.
  void Validate() const;

  // Five levels with strides 8..128 and base sizes 32..512 and scales
  // {1, 2^(1/3), 2^(2/3)}. `drop_finest_level` omits the stride-8 level.
  static AnchorConfig ForImage(int image_width, int image_height,
                               std::vector<double> aspect_ratios,
                               bool drop_finest_level);
};

// Anchors centred on every cell of every level, clipped to the image.
std::vector<BoundingBox> GenerateAnchors(const AnchorConfig& config,
                                         int image_width, int image_height);

}  // namespace swig

#endif  // SWIG_GEOMETRY_H_
