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

#include "swig/loss.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "swig/error.h"

namespace swig {

namespace {

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void CheckSameLength(std::span<const double> a, std::span<const double> b,
                     const char* what) {
  if (a.size() != b.size()) {
    throw Error(std::string(what) + ": length mismatch (" +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw Error(std::string(what) + ": empty input");
}

}  // namespace

LossResult FocalLoss(std::span<const double> logits,
                     std::span<const double> targets, const FocalParams& params,
                     FocalReduction reduction) {
  CheckSameLength(logits, targets, "focal_loss");
  if (!(params.alpha > 0.0 && params.alpha <= 1.0) || !(params.gamma >= 0.0)) {
    throw Error("focal_loss: need alpha in (0, 1] and gamma >= 0");
  }
  const double a = params.alpha;
  const double g = params.gamma;

  LossResult out;
  out.gradient.resize(logits.size());
  std::size_t positives = 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double x = logits[i];
    const double p = Sigmoid(x);
    const double log_p = -Softplus(-x);
    const double log_q = -Softplus(x);  // log(1 - p)
    if (targets[i] == 1.0) {
      ++positives;
      const double w = std::pow(1.0 - p, g);
      out.loss += -a * w * log_p;
      out.gradient[i] = a * w * (g * p * log_p - (1.0 - p));
    } else if (targets[i] == 0.0) {
      const double w = std::pow(p, g);
      out.loss += -(1.0 - a) * w * log_q;
      out.gradient[i] = (1.0 - a) * w * (p - g * (1.0 - p) * log_q);
    } else {
      throw Error("focal_loss: targets must be 0 or 1");
    }
  }

  double scale = 1.0;
  switch (reduction) {
    case FocalReduction::kMean:
      scale = 1.0 / static_cast<double>(logits.size());
      break;
    case FocalReduction::kSum:
      break;
    case FocalReduction::kNormalizeByPositives:
      scale = 1.0 / static_cast<double>(std::max<std::size_t>(1, positives));
      break;
  }
  out.loss *= scale;
  for (double& gi : out.gradient) gi *= scale;
  return out;
}

LossResult BinaryCrossEntropy(std::span<const double> logits,
                              std::span<const double> targets) {
  CheckSameLength(logits, targets, "binary_cross_entropy");
  const double n = static_cast<double>(logits.size());
  LossResult out;
  out.gradient.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double t = targets[i];
    if (!(t >= 0.0 && t <= 1.0)) throw Error("binary_cross_entropy: target outside [0, 1]");
    const double x = logits[i];
    out.loss += t * Softplus(-x) + (1.0 - t) * Softplus(x);
    out.gradient[i] = (Sigmoid(x) - t) / n;
  }
  out.loss /= n;
  return out;
}

LossResult SmoothedCrossEntropy(std::span<const double> logits,
                                std::size_t target_class,
                                const SmoothingParams& params) {
  const std::size_t k = logits.size();
  if (k < 2) throw Error("smoothed_ce: need at least 2 classes");
  if (target_class >= k) {
    throw Error("smoothed_ce: target class " + std::to_string(target_class) +
                " out of range for " + std::to_string(k) + " classes");
  }
  if (!(params.epsilon >= 0.0 && params.epsilon < 1.0)) {
    throw Error("smoothed_ce: epsilon must lie in [0, 1)");
  }
  const double max = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double x : logits) sum += std::exp(x - max);
  const double log_z = max + std::log(sum);

  const double off = params.epsilon / static_cast<double>(k - 1);
  const double on = 1.0 - params.epsilon;
  LossResult out;
  out.gradient.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const double q = c == target_class ? on : off;
    const double log_s = logits[c] - log_z;
    if (q > 0.0) out.loss -= q * log_s;
    out.gradient[c] = std::exp(log_s) - q;
  }
  return out;
}

LossResult L1Regression(std::span<const double> pred,
                        std::span<const double> target) {
  CheckSameLength(pred, target, "l1_reg");
  const double n = static_cast<double>(pred.size());
  LossResult out;
  out.gradient.resize(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    out.loss += std::abs(d);
    out.gradient[i] = (d > 0.0 ? 1.0 : d < 0.0 ? -1.0 : 0.0) / n;
  }
  out.loss /= n;
  return out;
}

void LossParts::Validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(std::string("loss part '") + name + "' must be finite and >= 0");
    }
  };
  check(reg, "reg");
  check(class_focal, "class_focal");
  check(verb_ce, "verb_ce");
  check(ground_ce, "ground_ce");
  for (double v : noun_ce) check(v, "noun_ce");
}

double TotalLoss(const LossParts& parts) {
  parts.Validate();
  double total = parts.reg + parts.class_focal + parts.verb_ce + parts.ground_ce;
  for (double v : parts.noun_ce) total += v;
  return total;
}

double RelativeError(double analytic, double numeric, double floor) {
  const double den = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / den;
}

std::vector<double> NumericGradient(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double step) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + step;
    const double up = f(probe);
    probe[i] = orig - step;
    const double down = f(probe);
    probe[i] = orig;
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }
  std::size_t Index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  std::mt19937_64 rng_;
};

// Central differences of an O(1) loss in double carry ~1e-12 absolute noise at
// step 1e-5, so components below this scale are compared absolutely.
constexpr double kGradCheckFloor = 1e-6;

double WorstError(std::span<const double> analytic, std::span<const double> numeric) {
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    worst = std::max(worst, RelativeError(analytic[i], numeric[i], kGradCheckFloor));
  }
  return worst;
}

}  // namespace

std::vector<GradCheckResult> RunGradientChecks(std::uint64_t seed,
                                               std::size_t instances, double step) {
  Sampler s(seed);
  GradCheckResult focal{"focal_loss", instances, 0.0};
  GradCheckResult smoothed{"smoothed_ce", instances, 0.0};
  GradCheckResult l1{"l1_reg", instances, 0.0};
  GradCheckResult bce{"binary_cross_entropy", instances, 0.0};

  for (std::size_t n = 0; n < instances; ++n) {
    const std::size_t len = 2 + s.Index(15);
    std::vector<double> x(len), t(len);
    for (std::size_t i = 0; i < len; ++i) {
      x[i] = s.Uniform(-4.0, 4.0);
      t[i] = s.Index(2) == 0 ? 0.0 : 1.0;
    }
    const FocalParams fp{s.Uniform(0.05, 1.0), s.Uniform(0.0, 3.0)};
    {
      const auto r = FocalLoss(x, t, fp);
      const auto num = NumericGradient(
          [&](std::span<const double> v) { return FocalLoss(v, t, fp).loss; }, x, step);
      focal.max_relative_error = std::max(focal.max_relative_error, WorstError(r.gradient, num));
    }
    {
      const auto r = BinaryCrossEntropy(x, t);
      const auto num = NumericGradient(
          [&](std::span<const double> v) { return BinaryCrossEntropy(v, t).loss; }, x, step);
      bce.max_relative_error = std::max(bce.max_relative_error, WorstError(r.gradient, num));
    }
    {
      const std::size_t target = s.Index(len);
      const SmoothingParams sp{s.Uniform(0.0, 0.5)};
      const auto r = SmoothedCrossEntropy(x, target, sp);
      const auto num = NumericGradient(
          [&](std::span<const double> v) { return SmoothedCrossEntropy(v, target, sp).loss; },
          x, step);
      smoothed.max_relative_error =
          std::max(smoothed.max_relative_error, WorstError(r.gradient, num));
    }
    {
      // Keep every |pred - target| well away from the kink at 0.
      std::vector<double> target(len);
      for (std::size_t i = 0; i < len; ++i) {
        const double gap = s.Uniform(1e-3, 2.0) * (s.Index(2) == 0 ? -1.0 : 1.0);
        target[i] = x[i] - gap;
      }
      const auto r = L1Regression(x, target);
      const auto num = NumericGradient(
          [&](std::span<const double> v) { return L1Regression(v, target).loss; }, x, step);
      l1.max_relative_error = std::max(l1.max_relative_error, WorstError(r.gradient, num));
    }
  }
  return {focal, smoothed, l1, bce};
}

}  // namespace swig
