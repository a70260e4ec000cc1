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

#include "swig/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "swig/error.h"

namespace swig {

double IoU(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.Area() + b.Area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

std::vector<std::size_t> NonMaxSuppression(std::span<const ScoredBox> candidates,
                                           double iou_threshold,
                                           std::size_t keep) {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
    throw Error("nms: iou_threshold must lie in [0, 1]");
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return candidates[a].score > candidates[b].score;
                   });

  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    if (kept.size() >= keep) break;
    bool suppressed = false;
    for (std::size_t k : kept) {
      if (IoU(candidates[idx].box, candidates[k].box) > iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(idx);
  }
  return kept;
}

namespace {

// Prefix sums of shifted values so that within-range sums of squares do not
// cancel catastrophically.
class RangeCost {
 public:
  explicit RangeCost(std::span<const double> sorted) {
    const double shift = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
    s1_.assign(sorted.size() + 1, 0.0);
    s2_.assign(sorted.size() + 1, 0.0);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double d = sorted[i] - shift;
      s1_[i + 1] = s1_[i] + d;
      s2_[i + 1] = s2_[i] + d * d;
    }
  }

  // Within-cluster sum of squares of sorted[i..j].
  double operator()(std::size_t i, std::size_t j) const {
    const double n = static_cast<double>(j - i + 1);
    const double s = s1_[j + 1] - s1_[i];
    const double q = s2_[j + 1] - s2_[i];
    return std::max(0.0, q - s * s / n);
  }

 private:
  std::vector<double> s1_;
  std::vector<double> s2_;
};

double Mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Optimal contiguous partition of sorted data into k clusters. Uses the
// divide-and-conquer speedup, valid because the optimal split points are
// monotone in the right endpoint.
std::vector<double> OptimalCentroids(std::span<const double> sorted,
                                     std::size_t k) {
  const std::size_t n = sorted.size();
  const RangeCost cost(sorted);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> prev(n), cur(n, kInf);
  for (std::size_t j = 0; j < n; ++j) prev[j] = cost(0, j);
  // split[m][j]: first index of the last cluster when m + 1 clusters cover
  // sorted[0..j].
  std::vector<std::vector<std::size_t>> split(k, std::vector<std::size_t>(n, 0));

  for (std::size_t m = 1; m < k; ++m) {
    std::fill(cur.begin(), cur.end(), kInf);
    auto solve = [&](auto&& self, std::size_t lo, std::size_t hi,
                     std::size_t opt_lo, std::size_t opt_hi) -> void {
      if (lo > hi) return;
      const std::size_t mid = lo + (hi - lo) / 2;
      double best = kInf;
      std::size_t best_i = std::max(opt_lo, m);
      for (std::size_t i = std::max(opt_lo, m); i <= std::min(mid, opt_hi); ++i) {
        const double c = prev[i - 1] + cost(i, mid);
        if (c < best) {
          best = c;
          best_i = i;
        }
      }
      cur[mid] = best;
      split[m][mid] = best_i;
      if (mid > lo) self(self, lo, mid - 1, opt_lo, best_i);
      self(self, mid + 1, hi, best_i, opt_hi);
    };
    solve(solve, m, n - 1, m, n - 1);
    std::swap(prev, cur);
  }

  std::vector<double> centroids(k);
  std::size_t j = n - 1;
  for (std::size_t m = k; m-- > 0;) {
    const std::size_t i = m == 0 ? 0 : split[m][j];
    centroids[m] = Mean(sorted.subspan(i, j - i + 1));
    if (i == 0) break;
    j = i - 1;
  }
  return centroids;
}

double UnitDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> LloydCentroids(std::span<const double> sorted, std::size_t k,
                                   const ClusterOptions& options) {
  const std::size_t n = sorted.size();
  std::mt19937_64 rng(options.seed);

  // k-means++ seeding.
  std::vector<double> centroids;
  centroids.push_back(sorted[rng() % n]);
  std::vector<double> d2(n);
  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double c : centroids) best = std::min(best, (sorted[i] - c) * (sorted[i] - c));
      d2[i] = best;
      total += best;
    }
    std::size_t pick = n - 1;
    if (total <= 0.0) {
      pick = rng() % n;
    } else {
      double r = UnitDouble(rng) * total;
      for (std::size_t i = 0; i < n; ++i) {
        r -= d2[i];
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
    }
    centroids.push_back(sorted[pick]);
  }

  std::vector<std::size_t> assignment(n, k);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = std::abs(sorted[i] - centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assignment[i] != best) {
        assignment[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<double> sum(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[assignment[i]] += sorted[i];
      ++count[assignment[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0) centroids[c] = sum[c] / static_cast<double>(count[c]);
    }
  }
  return centroids;
}

}  // namespace

std::vector<double> ClusterLogValues(std::span<const double> values,
                                     std::size_t k,
                                     const ClusterOptions& options) {
  if (k < 1 || k > values.size()) {
    throw Error("cluster: k=" + std::to_string(k) + " must lie in [1, " +
                std::to_string(values.size()) + "]");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("cluster: non-finite value");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> centroids = options.method == ClusterMethod::kOptimal
                                      ? OptimalCentroids(sorted, k)
                                      : LloydCentroids(sorted, k, options);
  for (double& c : centroids) c = std::exp(c);
  std::sort(centroids.begin(), centroids.end());
  return centroids;
}

std::vector<double> ClusterAspectRatios(std::span<const BoundingBox> boxes,
                                        std::size_t k,
                                        const ClusterOptions& options) {
  std::vector<double> logs;
  logs.reserve(boxes.size());
  for (const auto& box : boxes) {
    if (!box.IsValid()) throw Error("cluster: invalid box " + ToString(box));
    logs.push_back(std::log(box.Height() / box.Width()));
  }
  return ClusterLogValues(logs, k, options);
}

double KMeansObjective(std::span<const double> values,
                       std::span<const double> centroids) {
  double total = 0.0;
  for (double v : values) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : centroids) best = std::min(best, (v - c) * (v - c));
    total += best;
  }
  return total;
}

std::vector<AnchorLabel> MatchAnchors(std::span<const BoundingBox> anchors,
                                      const BoundingBox& gt,
                                      double positive_iou) {
  return MatchAnchors(anchors, std::span<const BoundingBox>(&gt, 1),
                      positive_iou);
}

std::vector<AnchorLabel> MatchAnchors(std::span<const BoundingBox> anchors,
                                      std::span<const BoundingBox> gts,
                                      double positive_iou) {
  std::vector<AnchorLabel> labels(anchors.size(), AnchorLabel::kNegative);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (const auto& gt : gts) {
      if (IoU(anchors[i], gt) >= positive_iou) {
        labels[i] = AnchorLabel::kPositive;
        break;
      }
    }
  }
  return labels;
}

std::size_t AnchorConfig::ClassificationTensorSize() const {
  std::size_t cells = 0;
  for (const auto& level : levels) {
    cells += static_cast<std::size_t>(level.grid_width) *
             static_cast<std::size_t>(level.grid_height);
  }
  return cells * AnchorsPerCell() * top_regions;
}

void AnchorConfig::Validate() const {
  if (levels.empty()) throw Error("anchors: no pyramid levels");
  if (aspect_ratios.empty()) throw Error("anchors: no aspect ratios");
  if (scales.empty()) throw Error("anchors: no scales");
  if (top_regions < 1) throw Error("anchors: top_regions must be >= 1");
  for (const auto& level : levels) {
    if (level.grid_width < 1 || level.grid_height < 1 || !(level.stride > 0) ||
        !(level.base_size > 0)) {
      throw Error("anchors: malformed pyramid level");
    }
  }
  for (double r : aspect_ratios) {
    if (!(r > 0) || !std::isfinite(r)) throw Error("anchors: bad aspect ratio");
  }
  for (double s : scales) {
    if (!(s > 0) || !std::isfinite(s)) throw Error("anchors: bad scale");
  }
}

AnchorConfig AnchorConfig::ForImage(int image_width, int image_height,
                                    std::vector<double> aspect_ratios,
                                    bool drop_finest_level) {
  if (image_width < 1 || image_height < 1) {
    throw Error("anchors: image dimensions must be positive");
  }
  AnchorConfig config;
  config.aspect_ratios = std::move(aspect_ratios);
  config.scales = {1.0, std::pow(2.0, 1.0 / 3.0), std::pow(2.0, 2.0 / 3.0)};
  for (int p = drop_finest_level ? 4 : 3; p <= 7; ++p) {
    const double stride = std::ldexp(1.0, p);
    config.levels.push_back(
        {static_cast<int>(std::ceil(image_width / stride)),
         static_cast<int>(std::ceil(image_height / stride)), stride,
         4.0 * stride});
  }
  return config;
}

std::vector<BoundingBox> GenerateAnchors(const AnchorConfig& config,
                                         int image_width, int image_height) {
  config.Validate();
  const double w_max = image_width;
  const double h_max = image_height;
  std::vector<BoundingBox> anchors;
  for (const auto& level : config.levels) {
    for (int gy = 0; gy < level.grid_height; ++gy) {
      for (int gx = 0; gx < level.grid_width; ++gx) {
        const double cx = (gx + 0.5) * level.stride;
        const double cy = (gy + 0.5) * level.stride;
        for (double ratio : config.aspect_ratios) {
          for (double scale : config.scales) {
            const double side = level.base_size * scale;
            const double w = side / std::sqrt(ratio);
            const double h = side * std::sqrt(ratio);
            BoundingBox box{std::clamp(cx - w / 2, 0.0, w_max),
                            std::clamp(cy - h / 2, 0.0, h_max),
                            std::clamp(cx + w / 2, 0.0, w_max),
                            std::clamp(cy + h / 2, 0.0, h_max)};
            anchors.push_back(box);
          }
        }
      }
    }
  }
  return anchors;
}

}  // namespace swig
