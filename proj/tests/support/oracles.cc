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

#include "oracles.h"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>

namespace swig::oracle {

namespace {

constexpr int kMaxGrid = 1000;
using Row = std::bitset<kMaxGrid>;

// Cells [lo, hi) covered by [x1, x2] at the given cell size.
std::pair<int, int> CellRange(double x1, double x2, double cell, int grid) {
  const int lo = std::clamp(static_cast<int>(std::lround(x1 / cell)), 0, grid);
  const int hi = std::clamp(static_cast<int>(std::lround(x2 / cell)), 0, grid);
  return {lo, hi};
}

}  // namespace

double RasterIoU(const BoundingBox& a, const BoundingBox& b, int grid, double extent) {
  grid = std::min(grid, kMaxGrid);
  const double cell = extent / grid;
  const auto [ax0, ax1] = CellRange(a.x1, a.x2, cell, grid);
  const auto [ay0, ay1] = CellRange(a.y1, a.y2, cell, grid);
  const auto [bx0, bx1] = CellRange(b.x1, b.x2, cell, grid);
  const auto [by0, by1] = CellRange(b.y1, b.y2, cell, grid);
  Row a_cols, b_cols;
  for (int x = ax0; x < ax1; ++x) a_cols.set(x);
  for (int x = bx0; x < bx1; ++x) b_cols.set(x);
  std::size_t inter = 0, uni = 0;
  for (int y = 0; y < grid; ++y) {
    const Row ra = (y >= ay0 && y < ay1) ? a_cols : Row{};
    const Row rb = (y >= by0 && y < by1) ? b_cols : Row{};
    inter += (ra & rb).count();
    uni += (ra | rb).count();
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double PlainIoU(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  const double inter = (w > 0 && h > 0) ? w * h : 0.0;
  const double area_a = (a.x2 - a.x1) * (a.y2 - a.y1);
  const double area_b = (b.x2 - b.x1) * (b.y2 - b.y1);
  const double uni = area_a + area_b - inter;
  return uni > 0 ? inter / uni : 0.0;
}

std::vector<std::size_t> NaiveNms(std::span<const ScoredBox> boxes, double iou_threshold,
                                  std::size_t keep) {
  std::vector<bool> alive(boxes.size(), true);
  std::vector<std::size_t> kept;
  while (kept.size() < keep) {
    std::size_t best = boxes.size();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (alive[i] && (best == boxes.size() || boxes[i].score > boxes[best].score)) best = i;
    }
    if (best == boxes.size()) break;
    kept.push_back(best);
    alive[best] = false;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (alive[i] && PlainIoU(boxes[best].box, boxes[i].box) > iou_threshold) alive[i] = false;
    }
  }
  return kept;
}

double ExhaustiveKMeansObjective(std::span<const double> values, std::size_t k) {
  const std::size_t n = values.size();
  std::vector<std::size_t> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<double> sum(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[label[i]] += values[i];
      ++count[label[i]];
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mean = sum[label[i]] / static_cast<double>(count[label[i]]);
      obj += (values[i] - mean) * (values[i] - mean);
    }
    best = std::min(best, obj);
    std::size_t pos = 0;
    while (pos < n && ++label[pos] == k) label[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

std::map<std::string, VerbCounts> BruteForceCounts(
    const Dataset& dataset, std::span<const PredictionRecord> predictions,
    VerbSetting setting, ValueAllMode mode, double iou_threshold) {
  std::map<std::string, VerbCounts> out;
  for (const AnnotatedImage& image : dataset.images) {
    const PredictionRecord* pred = nullptr;
    for (const auto& p : predictions) {
      if (p.image_id == image.image_id) pred = &p;
    }
    VerbCounts& c = out[image.verb];
    const std::size_t roles = dataset.lexicon.At(image.verb).roles.size();
    c.images += 1;
    c.role_slots += roles;

    bool verb_ok = false;
    const auto& rank = pred->verb_ranking;
    if (setting == VerbSetting::kGroundTruthVerb) verb_ok = true;
    if (setting == VerbSetting::kTop1) verb_ok = !rank.empty() && rank[0] == image.verb;
    if (setting == VerbSetting::kTop5) {
      for (std::size_t i = 0; i < rank.size() && i < 5; ++i) verb_ok |= rank[i] == image.verb;
    }
    if (!verb_ok) continue;
    c.verb_correct += 1;
    auto it = pred->frames.find(image.verb);
    if (it == pred->frames.end()) continue;
    const GroundedFrame& f = it->second;

    // Enumerate every (role, annotator) pair explicitly.
    std::size_t roles_ok = 0, roles_grounded_ok = 0;
    std::vector<std::size_t> ann_ok(kAnnotatorsPerImage, 0), ann_gok(kAnnotatorsPerImage, 0);
    for (std::size_t r = 0; r < roles; ++r) {
      bool any = false;
      std::vector<bool> matches(kAnnotatorsPerImage);
      for (std::size_t a = 0; a < kAnnotatorsPerImage; ++a) {
        matches[a] = image.annotator_frames[a].role_values[r].noun == f.role_values[r].noun;
        any = any || matches[a];
      }
      const auto& pb = f.groundings[r];
      const auto& gb = image.gt_groundings[r];
      bool box_ok;
      if (!pb && !gb) {
        box_ok = true;
      } else if (pb && gb) {
        box_ok = PlainIoU(*pb, *gb) >= iou_threshold;
      } else {
        box_ok = false;
      }
      roles_ok += any;
      roles_grounded_ok += any && box_ok;
      for (std::size_t a = 0; a < kAnnotatorsPerImage; ++a) {
        ann_ok[a] += matches[a];
        ann_gok[a] += matches[a] && box_ok;
      }
    }
    c.value += roles_ok;
    c.grounded_value += roles_grounded_ok;
    if (mode == ValueAllMode::kAnyPerRole) {
      c.value_all += roles_ok == roles;
      c.grounded_value_all += roles_grounded_ok == roles;
    } else {
      bool v = false, g = false;
      for (std::size_t a = 0; a < kAnnotatorsPerImage; ++a) {
        v = v || ann_ok[a] == roles;
        g = g || ann_gok[a] == roles;
      }
      c.value_all += v;
      c.grounded_value_all += g;
    }
  }
  return out;
}

MetricRow BruteForceMacro(const std::map<std::string, VerbCounts>& counts) {
  MetricRow m;
  for (const auto& [verb, c] : counts) {
    const double imgs = static_cast<double>(c.images);
    const double slots = static_cast<double>(c.role_slots);
    m.verb += c.verb_correct / imgs;
    m.value += c.value / slots;
    m.value_all += c.value_all / imgs;
    m.grounded_value += c.grounded_value / slots;
    m.grounded_value_all += c.grounded_value_all / imgs;
  }
  const double n = static_cast<double>(counts.size());
  m.verb /= n;
  m.value /= n;
  m.value_all /= n;
  m.grounded_value /= n;
  m.grounded_value_all /= n;
  return m;
}

std::vector<Neighbor> SortAll(std::span<const std::string> ids,
                              const std::function<double(std::size_t)>& score,
                              std::size_t k) {
  std::vector<Neighbor> all;
  for (std::size_t i = 0; i < ids.size(); ++i) all.push_back({ids[i], score(i)});
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  all.resize(std::min(k, all.size()));
  return all;
}

}  // namespace swig::oracle
