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

#include "random_fixtures.h"

#include <algorithm>
#include <map>

namespace swig::testing {

namespace {

const std::vector<std::string> kRolePool = {"Agent", "Item",   "Tool",  "Place",
                                            "Source", "Victim", "Food", "Destination"};

}  // namespace

BoundingBox RandomBox(Rng& rng, double w, double h, double min_side) {
  const double x1 = rng.Uniform(0.0, w - min_side);
  const double y1 = rng.Uniform(0.0, h - min_side);
  return {x1, y1, rng.Uniform(x1 + min_side, w), rng.Uniform(y1 + min_side, h)};
}

BoundingBox RandomGridBox(Rng& rng, int cells, double step) {
  const auto span = [&] {
    std::size_t a = rng.Index(static_cast<std::size_t>(cells));
    std::size_t b = rng.Index(static_cast<std::size_t>(cells));
    if (a > b) std::swap(a, b);
    return std::pair{static_cast<double>(a) * step, static_cast<double>(b + 1) * step};
  };
  const auto [x1, x2] = span();
  const auto [y1, y2] = span();
  return {x1, y1, x2, y2};
}

VerbLexicon RandomLexicon(Rng& rng, std::size_t num_verbs) {
  VerbLexicon lex;
  for (std::size_t v = 0; v < num_verbs; ++v) {
    std::vector<std::string> pool = kRolePool;
    std::shuffle(pool.begin(), pool.end(), rng.engine());
    pool.resize(1 + rng.Index(kMaxRolesPerVerb));
    lex.Add({"verb" + std::to_string(v), pool});
  }
  return lex;
}

Dataset RandomDataset(Rng& rng, const RandomDatasetOptions& o) {
  Dataset ds;
  ds.lexicon = RandomLexicon(rng, o.num_verbs);
  std::vector<NounId> nouns;
  for (std::size_t n = 0; n < o.num_nouns; ++n) {
    nouns.push_back("n" + std::to_string(n));
    ds.vocabulary.Add(nouns.back());
  }
  std::vector<const VerbEntry*> entries;
  for (const auto& [verb, entry] : ds.lexicon.entries()) entries.push_back(&entry);

  for (std::size_t i = 0; i < o.num_images; ++i) {
    AnnotatedImage img;
    img.image_id = "img" + std::to_string(i);
    img.width = 100 + static_cast<int>(rng.Index(500));
    img.height = 100 + static_cast<int>(rng.Index(500));
    // Every verb gets at least one image while there are enough images.
    const VerbEntry& e = *entries[i < entries.size() ? i : rng.Index(entries.size())];
    img.verb = e.verb;
    for (auto& frame : img.annotator_frames) {
      std::map<std::string, NounId, std::less<>> m;
      for (const auto& role : e.roles) {
        m[role] = rng.Chance(o.null_rate) ? NounId(kNullNoun) : nouns[rng.Index(nouns.size())];
      }
      frame = MakeFrame(e, m);
    }
    img.gt_groundings.resize(e.roles.size());
    for (std::size_t r = 0; r < e.roles.size(); ++r) {
      bool any_noun = false;
      for (const auto& f : img.annotator_frames) any_noun |= !IsNull(f.role_values[r].noun);
      if (e.roles[r] != kPlaceRole && any_noun && rng.Chance(o.ground_rate)) {
        img.gt_groundings[r] = RandomBox(rng, img.width, img.height, 4.0);
      }
    }
    ds.images.push_back(std::move(img));
  }
  return ds;
}

NounId ReferenceNoun(const AnnotatedImage& image, std::size_t role) {
  if (image.gt_groundings[role]) {
    for (const auto& f : image.annotator_frames) {
      if (!IsNull(f.role_values[role].noun)) return f.role_values[role].noun;
    }
  }
  return image.annotator_frames[0].role_values[role].noun;
}

namespace {

std::vector<std::string> RankingWithTruthFirst(const Dataset& ds, const std::string& truth) {
  std::vector<std::string> ranking = {truth};
  for (const auto& [verb, entry] : ds.lexicon.entries()) {
    if (ranking.size() == 5) break;
    if (verb != truth) ranking.push_back(verb);
  }
  return ranking;
}

GroundedFrame TruthFrame(const Dataset& ds, const AnnotatedImage& image) {
  GroundedFrame f = image.annotator_frames[0];
  for (std::size_t r = 0; r < f.size(); ++r) f.role_values[r].noun = ReferenceNoun(image, r);
  f.groundings = image.gt_groundings;
  (void)ds;
  return f;
}

}  // namespace

std::vector<PredictionRecord> PerfectPredictions(const Dataset& ds) {
  std::vector<PredictionRecord> out;
  for (const auto& image : ds.images) {
    PredictionRecord p;
    p.image_id = image.image_id;
    p.verb_ranking = RankingWithTruthFirst(ds, image.verb);
    p.frames[image.verb] = TruthFrame(ds, image);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PredictionRecord> AdversarialPredictions(const Dataset& ds) {
  std::vector<PredictionRecord> out;
  for (const auto& image : ds.images) {
    PredictionRecord p;
    p.image_id = image.image_id;
    p.verb_ranking = RankingWithTruthFirst(ds, image.verb);
    GroundedFrame f = image.annotator_frames[0];
    for (auto& g : f.groundings) g.reset();
    for (auto& rv : f.role_values) rv.noun = "never-annotated";
    p.frames[image.verb] = f;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PredictionRecord> NoisyPredictions(Rng& rng, const Dataset& ds) {
  std::vector<std::string> verbs;
  for (const auto& [verb, entry] : ds.lexicon.entries()) verbs.push_back(verb);
  std::vector<PredictionRecord> out;
  for (const auto& image : ds.images) {
    PredictionRecord p;
    p.image_id = image.image_id;
    std::vector<std::string> pool = verbs;
    std::shuffle(pool.begin(), pool.end(), rng.engine());
    pool.resize(std::min<std::size_t>(5, pool.size()));
    if (rng.Chance(0.5)) {
      // Put the true verb somewhere in the ranking.
      auto it = std::find(pool.begin(), pool.end(), image.verb);
      if (it == pool.end()) pool[rng.Index(pool.size())] = image.verb;
      auto pos = std::find(pool.begin(), pool.end(), image.verb);
      std::iter_swap(pos, pool.begin() + rng.Index(pool.size()));
    }
    p.verb_ranking = pool;
    for (const auto& verb : pool) {
      if (verb != image.verb && rng.Chance(0.5)) continue;
      if (verb == image.verb && rng.Chance(0.05)) continue;  // missing frame
      const VerbEntry& e = ds.lexicon.At(verb);
      std::map<std::string, NounId, std::less<>> m;
      for (std::size_t r = 0; r < e.roles.size(); ++r) {
        NounId noun;
        if (verb == image.verb && rng.Chance(0.7)) {
          noun = image.annotator_frames[rng.Index(3)].role_values[r].noun;
        } else if (rng.Chance(0.15)) {
          noun = NounId(kNullNoun);
        } else {
          noun = "n" + std::to_string(rng.Index(ds.vocabulary.size()));
        }
        m[e.roles[r]] = noun;
      }
      GroundedFrame f = MakeFrame(e, m);
      for (std::size_t r = 0; r < f.size(); ++r) {
        if (IsNull(f.role_values[r].noun) || e.roles[r] == kPlaceRole) continue;
        const bool has_gt = verb == image.verb && image.gt_groundings[r].has_value();
        const double u = rng.Uniform(0.0, 1.0);
        if (has_gt && u < 0.5) {
          BoundingBox b = *image.gt_groundings[r];
          const double jitter = rng.Uniform(0.0, 0.5) * b.Width();
          b.x1 += jitter;
          b.x2 += jitter;
          f.groundings[r] = b;
        } else if (u < 0.7) {
          f.groundings[r] = RandomBox(rng, image.width, image.height, 2.0);
        }
      }
      p.frames[verb] = std::move(f);
    }
    out.push_back(std::move(p));
  }
  return out;
}

DetectionSet RandomDetectionSet(Rng& rng, std::size_t boxes, const std::vector<NounId>& classes) {
  std::vector<BoundingBox> bs;
  std::vector<double> scores;
  for (std::size_t b = 0; b < boxes; ++b) {
    bs.push_back(RandomBox(rng, 200.0, 200.0, 2.0));
    for (std::size_t c = 0; c < classes.size(); ++c) scores.push_back(rng.Uniform(-12.0, 6.0));
  }
  return DetectionSet(std::move(bs), classes, std::move(scores));
}

SituationPrediction RandomSituation(Rng& rng, const VerbLexicon& lexicon,
                                    const std::vector<NounId>& nouns, bool fully_grounded) {
  std::vector<std::string> verbs;
  for (const auto& [verb, entry] : lexicon.entries()) verbs.push_back(verb);
  std::shuffle(verbs.begin(), verbs.end(), rng.engine());
  verbs.resize(kSituationTopK);
  SituationPrediction s;
  s.verbs = verbs;
  for (const auto& verb : verbs) {
    const std::size_t n = lexicon.At(verb).roles.size();
    std::vector<NounId> ents;
    std::vector<std::optional<BoundingBox>> boxes;
    for (std::size_t r = 0; r < n; ++r) {
      ents.push_back(nouns[rng.Index(nouns.size())]);
      if (fully_grounded || rng.Chance(0.6)) {
        boxes.push_back(RandomBox(rng, 300.0, 300.0, 2.0));
      } else {
        boxes.emplace_back();
      }
    }
    s.entities.push_back(std::move(ents));
    s.boxes.push_back(std::move(boxes));
  }
  return s;
}

}  // namespace swig::testing
