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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "swig/dataset.h"
#include "swig/geometry.h"
#include "swig/metrics.h"
#include "swig/retrieval.h"

namespace swig {
namespace {

BoundingBox RandomBox(std::mt19937_64& rng, double extent) {
  std::uniform_real_distribution<double> u(0.0, extent);
  const double x = u(rng), y = u(rng);
  return {x, y, x + 1.0 + u(rng) / 4, y + 1.0 + u(rng) / 4};
}

void BM_IoU(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<BoundingBox> boxes;
  for (int i = 0; i < 1024; ++i) boxes.push_back(RandomBox(rng, 100));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(IoU(boxes[i & 1023], boxes[(i * 7 + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_IoU);

void BM_Nms(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> score(-4, 4);
  std::vector<ScoredBox> boxes;
  for (int64_t i = 0; i < state.range(0); ++i) boxes.push_back({RandomBox(rng, 200), score(rng)});
  for (auto _ : state) benchmark::DoNotOptimize(NonMaxSuppression(boxes, 0.5, boxes.size()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Nms)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

// Synthetic dataset with one image per verb slot and perfect predictions.
Dataset MakeDataset(std::size_t images, std::vector<PredictionRecord>* preds) {
  Dataset d;
  const std::vector<std::string> roles = {"Agent", "Item", "Tool", "Place"};
  for (int v = 0; v < 504; ++v) d.lexicon.Add({"verb" + std::to_string(v), roles});
  std::mt19937_64 rng(3);
  for (std::size_t i = 0; i < images; ++i) {
    AnnotatedImage img;
    img.image_id = "img" + std::to_string(i);
    img.verb = "verb" + std::to_string(i % 504);
    img.width = img.height = 400;
    const VerbEntry& e = d.lexicon.At(img.verb);
    const GroundedFrame f =
        MakeFrame(e, {{"Agent", "man"}, {"Item", "box"}, {"Tool", ""}, {"Place", "road"}});
    img.annotator_frames.fill(f);
    img.gt_groundings = {RandomBox(rng, 300), RandomBox(rng, 300), std::nullopt, std::nullopt};
    PredictionRecord p{img.image_id, {img.verb}, {}};
    GroundedFrame pf = f;
    pf.groundings = img.gt_groundings;
    p.frames[img.verb] = pf;
    preds->push_back(std::move(p));
    d.images.push_back(std::move(img));
  }
  return d;
}

void BM_Evaluate(benchmark::State& state) {
  std::vector<PredictionRecord> preds;
  const Dataset d = MakeDataset(static_cast<std::size_t>(state.range(0)), &preds);
  EvalOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Evaluate(d, preds, VerbSetting::kTop5, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->Args({25200, 1})->Args({25200, 4})->Unit(benchmark::kMillisecond);

void BM_RetrieveGrSit(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> ids;
  std::vector<SituationPrediction> sits;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back("img" + std::to_string(i));
    SituationPrediction s;
    for (int k = 0; k < 5; ++k) {
      s.verbs.push_back("verb" + std::to_string(rng() % 504));
      s.entities.push_back({"man", std::to_string(rng() % 50), ""});
      s.boxes.push_back({RandomBox(rng, 300), RandomBox(rng, 300), std::nullopt});
    }
    sits.push_back(std::move(s));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RetrieveTopK(ids, [&](std::size_t j) { return GrSitSim(sits[0], sits[j]); }, 10));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RetrieveGrSit)->Arg(24192)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace swig

BENCHMARK_MAIN();
