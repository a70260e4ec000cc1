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

#ifndef SWIG_LOSS_H_
#define SWIG_LOSS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace swig {

struct FocalParams {
  double alpha = 0.25;
  double gamma = 2.0;
};

struct SmoothingParams {
  double epsilon = 0.2;
};

enum class FocalReduction {
  kMean,
  kSum,
  // Sum divided by max(1, number of positive targets).
  kNormalizeByPositives,
};

// A scalar loss and its derivative with respect to each input.
struct LossResult {
  double loss = 0.0;
  std::vector<double> gradient;
};

// Element-wise binary focal loss on logits:
//   positive: -alpha * (1 - p)^gamma * log(p)
//   negative: -(1 - alpha) * p^gamma * log(1 - p),   p = sigmoid(logit).
// Targets must be 0 or 1.
LossResult FocalLoss(std::span<const double> logits,
                     std::span<const double> targets,
                     const FocalParams& params = {},
                     FocalReduction reduction = FocalReduction::kMean);

// Mean binary cross-entropy on logits. Targets in [0, 1].
LossResult BinaryCrossEntropy(std::span<const double> logits,
                              std::span<const double> targets);

// Cross-entropy of softmax(logits) against the smoothed target distribution
// (1 - epsilon on target_class, epsilon / (K - 1) elsewhere).
LossResult SmoothedCrossEntropy(std::span<const double> logits,
                                std::size_t target_class,
                                const SmoothingParams& params = {});

inline LossResult CrossEntropy(std::span<const double> logits,
                               std::size_t target_class) {
  return SmoothedCrossEntropy(logits, target_class, SmoothingParams{0.0});
}

// Mean absolute error; the subgradient is sign(pred - target) / n with 0 at
// ties.
LossResult L1Regression(std::span<const double> pred,
                        std::span<const double> target);

struct LossParts {
  double reg = 0.0;
  double class_focal = 0.0;
  double verb_ce = 0.0;
  double ground_ce = 0.0;  // binary, grounded vs. ungrounded
  std::array<double, 3> noun_ce{};  // one per annotator

  // Throws swig::Error when a part is negative or non-finite.
  void Validate() const;
};

// reg + class_focal + verb_ce + ground_ce + sum(noun_ce), unweighted.
double TotalLoss(const LossParts& parts);

// Gradient checking against central finite differences.

// |analytic - numeric| / max(|analytic|, |numeric|, floor).
double RelativeError(double analytic, double numeric, double floor = 1e-8);

// Central differences of `f` at `x` with the given step.
std::vector<double> NumericGradient(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double step);

struct GradCheckResult {
  std::string kernel;
  std::size_t instances = 0;
  double max_relative_error = 0.0;
};

// Runs `instances` random instances each of focal loss, smoothed
// cross-entropy, L1 and binary cross-entropy and reports the worst relative
// error per kernel (relative error floor 1e-6).
std::vector<GradCheckResult> RunGradientChecks(std::uint64_t seed,
                                               std::size_t instances = 100,
                                               double step = 1e-5);

}  // namespace swig

#endif  // SWIG_LOSS_H_
