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

#include "swig/dataset.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "swig/error.h"
#include "swig/parallel.h"

namespace swig {

using nlohmann::json;

namespace {

const json& Field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw Error(where + ": expected a JSON object");
  auto it = obj.find(name);
  if (it == obj.end()) throw Error(where + ": missing field '" + name + "'");
  return *it;
}

std::string StringField(const json& obj, const char* name,
                        const std::string& where) {
  const json& v = Field(obj, name, where);
  if (!v.is_string()) {
    throw Error(where + ": field '" + name + "' must be a string");
  }
  return v.get<std::string>();
}

int PositiveIntField(const json& obj, const char* name, const std::string& where) {
  const json& v = Field(obj, name, where);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw Error(where + ": field '" + name + "' must be a positive integer");
  }
  return v.get<int>();
}

std::string ImageContext(const std::string& id) { return "image '" + id + "'"; }

// Clamps `box` into [0, width] x [0, height]; returns true when it moved.
bool ClampBox(BoundingBox& box, int width, int height) {
  const BoundingBox before = box;
  box.x1 = std::clamp(box.x1, 0.0, static_cast<double>(width));
  box.x2 = std::clamp(box.x2, 0.0, static_cast<double>(width));
  box.y1 = std::clamp(box.y1, 0.0, static_cast<double>(height));
  box.y2 = std::clamp(box.y2, 0.0, static_cast<double>(height));
  return !(box == before);
}

std::map<std::string, NounId, std::less<>> NounMap(const json& frame,
                                                   const std::string& where) {
  if (!frame.is_object()) throw Error(where + ": expected an object of role -> noun");
  std::map<std::string, NounId, std::less<>> nouns;
  for (const auto& [role, noun] : frame.items()) {
    if (!noun.is_string()) {
      throw Error(where + ": role '" + role + "' must map to a string (\"\" for null)");
    }
    nouns.emplace(role, noun.get<std::string>());
  }
  return nouns;
}

void CheckNouns(const GroundedFrame& frame, const NounVocabulary& vocabulary,
                const std::string& where) {
  for (const auto& rv : frame.role_values) {
    if (!IsNull(rv.noun) && !vocabulary.Contains(rv.noun)) {
      throw Error(where + ": unknown noun '" + rv.noun + "' at role '" + rv.role +
                  "'");
    }
  }
}

template <typename ParseFn>
auto ReadJsonLines(std::istream& in, ParseFn parse) {
  std::vector<decltype(parse(json{}, std::size_t{0}))> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      out.push_back(parse(record, line_no));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

BoundingBox MergeWorkerBoxes(std::span<const BoundingBox> boxes,
                             std::size_t expected) {
  if (boxes.size() != expected || expected == 0) {
    throw Error("merge: expected " + std::to_string(expected) +
                " worker boxes, got " + std::to_string(boxes.size()));
  }
  BoundingBox sum;
  for (const auto& b : boxes) {
    if (!b.IsValid()) throw Error("merge: invalid worker box " + ToString(b));
    sum.x1 += b.x1;
    sum.y1 += b.y1;
    sum.x2 += b.x2;
    sum.y2 += b.y2;
  }
  const double n = static_cast<double>(boxes.size());
  return {sum.x1 / n, sum.y1 / n, sum.x2 / n, sum.y2 / n};
}

VerbLexicon ParseLexicon(const json& doc) {
  if (!doc.is_object()) throw Error("lexicon: expected an object of verb -> roles");
  VerbLexicon lexicon;
  for (const auto& [verb, roles] : doc.items()) {
    if (!roles.is_array()) throw Error("lexicon: verb '" + verb + "' roles must be an array");
    VerbEntry entry{verb, {}};
    for (const auto& role : roles) {
      if (!role.is_string()) throw Error("lexicon: verb '" + verb + "' has a non-string role");
      entry.roles.push_back(role.get<std::string>());
    }
    lexicon.Add(std::move(entry));
  }
  return lexicon;
}

NounVocabulary ParseVocabulary(const json& doc) {
  NounVocabulary vocabulary;
  if (doc.is_object()) {
    for (const auto& [id, gloss] : doc.items()) {
      vocabulary.Add(id, gloss.is_string() ? gloss.get<std::string>() : std::string());
    }
  } else if (doc.is_array()) {
    for (const auto& id : doc) {
      if (!id.is_string()) throw Error("vocabulary: ids must be strings");
      vocabulary.Add(id.get<std::string>());
    }
  } else {
    throw Error("vocabulary: expected an object or an array");
  }
  return vocabulary;
}

json ReadJsonFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("'" + path + "': " + e.what());
  }
}

VerbLexicon LoadLexicon(const std::string& path) {
  return ParseLexicon(ReadJsonFile(path));
}

NounVocabulary LoadVocabulary(const std::string& path) {
  return ParseVocabulary(ReadJsonFile(path));
}

json BoxToJson(const std::optional<BoundingBox>& box) {
  if (!box) return nullptr;
  return json::array({box->x1, box->y1, box->x2, box->y2});
}

std::optional<BoundingBox> BoxFromJson(const json& value) {
  if (value.is_null()) return std::nullopt;
  if (!value.is_array() || value.size() != 4) {
    throw Error("box must be null or [x1, y1, x2, y2]");
  }
  for (const auto& v : value) {
    if (!v.is_number()) throw Error("box coordinates must be numbers");
  }
  return BoundingBox{value[0].get<double>(), value[1].get<double>(),
                     value[2].get<double>(), value[3].get<double>()};
}

AnnotatedImage ParseImageRecord(const json& record, const VerbLexicon& lexicon,
                                const NounVocabulary& vocabulary,
                                const LoadOptions& options,
                                std::vector<std::string>* warnings) {
  AnnotatedImage image;
  image.image_id = StringField(record, "id", "record");
  const std::string where = ImageContext(image.image_id);
  image.width = PositiveIntField(record, "width", where);
  image.height = PositiveIntField(record, "height", where);
  image.verb = StringField(record, "verb", where);

  const VerbEntry* entry = lexicon.Find(image.verb);
  if (entry == nullptr) {
    throw Error(where + ": field 'verb': unknown verb '" + image.verb + "'");
  }

  const json& frames = Field(record, "frames", where);
  if (!frames.is_array() || frames.size() != kAnnotatorsPerImage) {
    throw Error(where + ": field 'frames' must hold exactly 3 annotator frames");
  }
  for (std::size_t a = 0; a < kAnnotatorsPerImage; ++a) {
    const std::string fw = where + ": field 'frames[" + std::to_string(a) + "]'";
    try {
      image.annotator_frames[a] = MakeFrame(*entry, NounMap(frames[a], fw));
    } catch (const Error& e) {
      throw Error(fw + ": " + e.what());
    }
    if (options.check_nouns && vocabulary.size() > 0) {
      CheckNouns(image.annotator_frames[a], vocabulary, fw);
    }
  }

  image.gt_groundings.assign(entry->roles.size(), std::nullopt);
  auto role_index = [&](const std::string& role, const char* field) {
    auto index = entry->RoleIndex(role);
    if (!index) {
      throw Error(where + ": field '" + field + "': unknown role '" + role +
                  "' for verb '" + image.verb + "'");
    }
    return *index;
  };

  if (auto it = record.find("boxes"); it != record.end() && !it->is_null()) {
    if (!it->is_object()) throw Error(where + ": field 'boxes' must be an object");
    for (const auto& [role, value] : it->items()) {
      const std::size_t r = role_index(role, "boxes");
      try {
        image.gt_groundings[r] = BoxFromJson(value);
      } catch (const Error& e) {
        throw Error(where + ": field 'boxes." + role + "': " + e.what());
      }
    }
  }

  if (auto it = record.find("worker_boxes"); it != record.end() && !it->is_null()) {
    if (!it->is_object()) throw Error(where + ": field 'worker_boxes' must be an object");
    for (const auto& [role, value] : it->items()) {
      const std::size_t r = role_index(role, "worker_boxes");
      if (value.is_null()) continue;
      const std::string fw = where + ": field 'worker_boxes." + role + "'";
      if (image.gt_groundings[r]) {
        throw Error(fw + ": role also has a merged box in 'boxes'");
      }
      if (!value.is_array()) throw Error(fw + ": expected an array of boxes");
      std::vector<BoundingBox> workers;
      try {
        for (const auto& b : value) {
          auto box = BoxFromJson(b);
          if (!box) throw Error("null worker box");
          workers.push_back(*box);
        }
        image.gt_groundings[r] = MergeWorkerBoxes(workers, options.workers_per_role);
      } catch (const Error& e) {
        throw Error(fw + ": " + e.what());
      }
    }
  }

  for (std::size_t r = 0; r < image.gt_groundings.size(); ++r) {
    auto& box = image.gt_groundings[r];
    if (!box) continue;
    const BoundingBox before = *box;
    if (ClampBox(*box, image.width, image.height) && warnings != nullptr) {
      warnings->push_back(where + ": role '" + entry->roles[r] + "': box " +
                          ToString(before) + " clamped to " + ToString(*box));
    }
  }
  return image;
}

ValidationReport ValidateImage(const AnnotatedImage& image,
                               const VerbLexicon& lexicon) {
  ValidationReport report;
  for (const auto& frame : image.annotator_frames) {
    if (frame.verb != image.verb) {
      report.push_back({-1, "frame-verb-mismatch",
                        "annotator frame verb '" + frame.verb +
                            "' differs from image verb '" + image.verb + "'"});
    }
    for (auto& v : ValidateFrame(frame, lexicon)) report.push_back(std::move(v));
  }
  const VerbEntry* entry = lexicon.Find(image.verb);
  if (entry == nullptr) return report;
  if (image.gt_groundings.size() != entry->roles.size()) {
    report.push_back({-1, std::string(rules::kGroundingCount),
                      std::to_string(image.gt_groundings.size()) +
                          " ground-truth groundings for " +
                          std::to_string(entry->roles.size()) + " roles"});
    return report;
  }
  for (std::size_t r = 0; r < entry->roles.size(); ++r) {
    const auto& box = image.gt_groundings[r];
    if (!box) continue;
    const int index = static_cast<int>(r);
    const std::string& role = entry->roles[r];
    if (!box->IsValid() || box->x2 > image.width || box->y2 > image.height) {
      report.push_back({index, std::string(rules::kInvalidBox),
                        "role '" + role + "' has invalid box " + ToString(*box)});
    }
    if (role == kPlaceRole) {
      report.push_back({index, std::string(rules::kPlaceGrounded),
                        "role 'Place' carries a grounding"});
    }
    const bool all_null = std::all_of(
        image.annotator_frames.begin(), image.annotator_frames.end(),
        [r](const GroundedFrame& f) {
          return r < f.role_values.size() && IsNull(f.role_values[r].noun);
        });
    if (all_null) {
      report.push_back({index, std::string(rules::kNullNounGrounded),
                        "role '" + role + "' is null for every annotator but grounded"});
    }
  }
  return report;
}

Dataset LoadDataset(std::istream& annotations, VerbLexicon lexicon,
                    NounVocabulary vocabulary, const LoadOptions& options) {
  Dataset dataset;
  dataset.lexicon = std::move(lexicon);
  dataset.vocabulary = std::move(vocabulary);
  std::set<std::string> ids;
  dataset.images = ReadJsonLines(annotations, [&](const json& record, std::size_t) {
    AnnotatedImage image = ParseImageRecord(record, dataset.lexicon, dataset.vocabulary,
                                            options, &dataset.warnings);
    if (!ids.insert(image.image_id).second) {
      throw Error(ImageContext(image.image_id) + ": duplicate image id");
    }
    const ValidationReport report = ValidateImage(image, dataset.lexicon);
    if (!report.empty()) {
      const Violation& v = report.front();
      throw Error(ImageContext(image.image_id) + ": " + v.rule + ": " + v.message);
    }
    return image;
  });
  return dataset;
}

Dataset LoadDatasetFile(const std::string& annotations_path,
                        const std::string& lexicon_path,
                        const std::string& vocabulary_path,
                        const LoadOptions& options) {
  VerbLexicon lexicon = LoadLexicon(lexicon_path);
  NounVocabulary vocabulary;
  if (!vocabulary_path.empty()) vocabulary = LoadVocabulary(vocabulary_path);
  auto in = OpenOrThrow(annotations_path);
  try {
    return LoadDataset(in, std::move(lexicon), std::move(vocabulary), options);
  } catch (const Error& e) {
    throw Error("'" + annotations_path + "': " + e.what());
  }
}

json ToJson(const AnnotatedImage& image) {
  json frames = json::array();
  for (const auto& frame : image.annotator_frames) {
    json nouns = json::object();
    for (const auto& rv : frame.role_values) nouns[rv.role] = rv.noun;
    frames.push_back(std::move(nouns));
  }
  json boxes = json::object();
  const auto& roles = image.annotator_frames[0].role_values;
  for (std::size_t r = 0; r < image.gt_groundings.size() && r < roles.size(); ++r) {
    boxes[roles[r].role] = BoxToJson(image.gt_groundings[r]);
  }
  return {{"id", image.image_id}, {"width", image.width},
          {"height", image.height}, {"verb", image.verb},
          {"frames", std::move(frames)}, {"boxes", std::move(boxes)}};
}

GroundedFrame FrameFromJson(const json& doc, const VerbEntry& entry) {
  const std::string where = "frame '" + entry.verb + "'";
  GroundedFrame frame = MakeFrame(entry, NounMap(Field(doc, "nouns", where), where));
  if (auto it = doc.find("boxes"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) throw Error(where + ": 'boxes' must be an object");
    for (const auto& [role, value] : it->items()) {
      auto index = entry.RoleIndex(role);
      if (!index) throw Error(where + ": 'boxes' has unknown role '" + role + "'");
      try {
        frame.groundings[*index] = BoxFromJson(value);
      } catch (const Error& e) {
        throw Error(where + ": 'boxes." + role + "': " + e.what());
      }
    }
  }
  return frame;
}

json FrameToJson(const GroundedFrame& frame) {
  json nouns = json::object();
  json boxes = json::object();
  for (std::size_t r = 0; r < frame.role_values.size(); ++r) {
    nouns[frame.role_values[r].role] = frame.role_values[r].noun;
    boxes[frame.role_values[r].role] =
        BoxToJson(r < frame.groundings.size() ? frame.groundings[r] : std::nullopt);
  }
  return {{"nouns", std::move(nouns)}, {"boxes", std::move(boxes)}};
}

PredictionRecord ParsePredictionRecord(const json& record,
                                       const VerbLexicon& lexicon) {
  PredictionRecord pred;
  pred.image_id = StringField(record, "id", "prediction");
  const std::string where = "prediction '" + pred.image_id + "'";

  const json& verbs = Field(record, "verbs", where);
  if (!verbs.is_array() || verbs.empty()) {
    throw Error(where + ": field 'verbs' must be a non-empty array");
  }
  std::set<std::string> seen;
  for (const auto& v : verbs) {
    if (!v.is_string()) throw Error(where + ": field 'verbs' must hold strings");
    const std::string verb = v.get<std::string>();
    if (!seen.insert(verb).second) {
      throw Error(where + ": field 'verbs' repeats '" + verb + "'");
    }
    pred.verb_ranking.push_back(verb);
  }

  const json& frames = Field(record, "frames", where);
  if (!frames.is_object()) throw Error(where + ": field 'frames' must be an object");
  for (const auto& [verb, doc] : frames.items()) {
    if (!seen.count(verb)) {
      throw Error(where + ": frame for '" + verb + "' is not in the verb ranking");
    }
    const VerbEntry* entry = lexicon.Find(verb);
    if (entry == nullptr) {
      throw Error(where + ": field 'frames': unknown verb '" + verb + "'");
    }
    GroundedFrame frame;
    try {
      frame = FrameFromJson(doc, *entry);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    const ValidationReport report = ValidateFrame(frame, lexicon);
    if (!report.empty()) {
      throw Error(where + ": frame '" + verb + "': " + report.front().rule + ": " +
                  report.front().message);
    }
    pred.frames.emplace(verb, std::move(frame));
  }
  return pred;
}

std::vector<PredictionRecord> LoadPredictions(std::istream& in,
                                              const VerbLexicon& lexicon) {
  std::set<std::string> ids;
  return ReadJsonLines(in, [&](const json& record, std::size_t) {
    PredictionRecord pred = ParsePredictionRecord(record, lexicon);
    if (!ids.insert(pred.image_id).second) {
      throw Error("prediction '" + pred.image_id + "': duplicate id");
    }
    return pred;
  });
}

std::vector<PredictionRecord> LoadPredictionsFile(const std::string& path,
                                                  const VerbLexicon& lexicon) {
  auto in = OpenOrThrow(path);
  try {
    return LoadPredictions(in, lexicon);
  } catch (const Error& e) {
    throw Error("'" + path + "': " + e.what());
  }
}

json ToJson(const PredictionRecord& record) {
  json frames = json::object();
  for (const auto& [verb, frame] : record.frames) frames[verb] = FrameToJson(frame);
  return {{"id", record.image_id},
          {"verbs", record.verb_ranking},
          {"frames", std::move(frames)}};
}

namespace {

struct ImageStats {
  std::size_t total = 0;
  std::size_t non_null = 0;
  std::size_t grounded = 0;
  std::vector<NounId> grounded_nouns;
  // role -> (grounded, total)
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> roles;
  std::vector<ScaleAspectSample> samples;
};

// Most frequent non-null annotator noun for role r; ties go to the earliest
// annotator. Empty when every annotator is null.
NounId MajorityNoun(const AnnotatedImage& image, std::size_t r) {
  NounId best;
  int best_count = 0;
  for (const auto& frame : image.annotator_frames) {
    const NounId& noun = frame.role_values[r].noun;
    if (IsNull(noun)) continue;
    int count = 0;
    for (const auto& other : image.annotator_frames) {
      if (other.role_values[r].noun == noun) ++count;
    }
    if (count > best_count) {
      best = noun;
      best_count = count;
    }
  }
  return best;
}

ImageStats StatsForImage(const AnnotatedImage& image, SlotCounting counting) {
  ImageStats s;
  const auto& roles = image.annotator_frames[0].role_values;
  for (std::size_t r = 0; r < roles.size(); ++r) {
    const bool has_box = r < image.gt_groundings.size() && image.gt_groundings[r];
    std::size_t role_total = 0;
    std::size_t role_grounded = 0;
    if (counting == SlotCounting::kPerAnnotator) {
      for (const auto& frame : image.annotator_frames) {
        const NounId& noun = frame.role_values[r].noun;
        ++role_total;
        if (IsNull(noun)) continue;
        ++s.non_null;
        if (has_box) {
          ++role_grounded;
          s.grounded_nouns.push_back(noun);
        }
      }
    } else {
      role_total = 1;
      const NounId noun = MajorityNoun(image, r);
      if (!IsNull(noun)) {
        ++s.non_null;
        if (has_box) {
          role_grounded = 1;
          s.grounded_nouns.push_back(noun);
        }
      }
    }
    s.total += role_total;
    s.grounded += role_grounded;
    s.roles.push_back({roles[r].role, {role_grounded, role_total}});

    if (has_box) {
      const NounId noun = MajorityNoun(image, r);
      const BoundingBox& box = *image.gt_groundings[r];
      if (!IsNull(noun) && box.Width() > 0.0) {
        s.samples.push_back(
            {noun, image.verb, roles[r].role,
             std::max(box.Width() / image.width, box.Height() / image.height),
             box.Height() / box.Width()});
      }
    }
  }
  return s;
}

}  // namespace

StatsReport ComputeStats(const Dataset& dataset, const StatsOptions& options) {
  const auto per_image = ParallelMap(
      dataset.images.size(), options.threads, [&](std::size_t i) {
        return StatsForImage(dataset.images[i], options.counting);
      });

  StatsReport report;
  report.num_images = dataset.images.size();
  std::set<std::string> verbs;
  std::map<std::string, std::pair<std::size_t, std::size_t>> role_counts;
  std::size_t roles_total = 0;
  for (std::size_t i = 0; i < per_image.size(); ++i) {
    const ImageStats& s = per_image[i];
    verbs.insert(dataset.images[i].verb);
    roles_total += dataset.images[i].annotator_frames[0].role_values.size();
    report.total_noun_slots += s.total;
    report.non_null_slots += s.non_null;
    report.grounded_slots += s.grounded;
    for (const auto& noun : s.grounded_nouns) ++report.groundings_per_noun[noun];
    for (const auto& [role, counts] : s.roles) {
      role_counts[role].first += counts.first;
      role_counts[role].second += counts.second;
    }
    report.scale_aspect_samples.insert(report.scale_aspect_samples.end(),
                                       s.samples.begin(), s.samples.end());
  }
  report.num_verbs = verbs.size();
  if (report.num_images > 0) {
    report.mean_frame_length =
        static_cast<double>(roles_total) / static_cast<double>(report.num_images);
  }
  for (const auto& [role, counts] : role_counts) {
    report.role_grounding_rate[role] =
        counts.second == 0 ? 0.0
                           : static_cast<double>(counts.first) /
                                 static_cast<double>(counts.second);
  }
  return report;
}

json ToJson(const StatsReport& report, bool include_samples) {
  json out = {
      {"num_images", report.num_images},
      {"num_verbs", report.num_verbs},
      {"total_noun_slots", report.total_noun_slots},
      {"non_null_slots", report.non_null_slots},
      {"grounded_slots", report.grounded_slots},
      {"grounded_fraction", report.GroundedFraction()},
      {"mean_frame_length", report.mean_frame_length},
      {"groundings_per_noun", report.groundings_per_noun},
      {"role_grounding_rate", report.role_grounding_rate},
  };
  if (include_samples) {
    json samples = json::array();
    for (const auto& s : report.scale_aspect_samples) {
      samples.push_back({{"noun", s.noun},
                         {"verb", s.verb},
                         {"role", s.role},
                         {"scale", s.scale},
                         {"aspect", s.aspect}});
    }
    out["scale_aspect_samples"] = std::move(samples);
  }
  return out;
}

std::string CanonicalRoleName(std::string_view release_role) {
  std::string name(release_role);
  if (!name.empty()) {
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  }
  return name;
}

SwigConversion ConvertSwigRelease(const json& release, const json& space) {
  SwigConversion out;
  const json& verbs = Field(space, "verbs", "space file");
  if (!verbs.is_object()) throw Error("space file: 'verbs' must be an object");
  for (const auto& [verb, info] : verbs.items()) {
    const json& order = Field(info, "order", "space file: verb '" + verb + "'");
    VerbEntry entry{verb, {}};
    for (const auto& role : order) entry.roles.push_back(CanonicalRoleName(role.get<std::string>()));
    out.lexicon.Add(std::move(entry));
  }
  if (auto it = space.find("nouns"); it != space.end() && it->is_object()) {
    for (const auto& [id, info] : it->items()) {
      std::string gloss;
      if (info.is_object()) {
        if (auto g = info.find("gloss"); g != info.end() && g->is_array() && !g->empty() &&
                                         (*g)[0].is_string()) {
          gloss = (*g)[0].get<std::string>();
        }
      }
      out.vocabulary.Add(id, gloss);
    }
  }

  if (!release.is_object()) throw Error("release: expected an object of image -> record");
  for (const auto& [id, rec] : release.items()) {
    const std::string where = ImageContext(id);
    json frames = json::array();
    for (const auto& frame : Field(rec, "frames", where)) {
      json nouns = json::object();
      for (const auto& [role, noun] : frame.items()) {
        nouns[CanonicalRoleName(role)] = noun;
      }
      frames.push_back(std::move(nouns));
    }
    json boxes = json::object();
    if (auto bb = rec.find("bb"); bb != rec.end() && bb->is_object()) {
      for (const auto& [role, box] : bb->items()) {
        const bool sentinel = box.is_array() && box.size() == 4 &&
                              std::all_of(box.begin(), box.end(), [](const json& v) {
                                return v.is_number() && v.get<double>() == -1.0;
                              });
        boxes[CanonicalRoleName(role)] = sentinel ? json(nullptr) : box;
      }
    }
    out.records.push_back({{"id", id},
                           {"width", Field(rec, "width", where)},
                           {"height", Field(rec, "height", where)},
                           {"verb", Field(rec, "verb", where)},
                           {"frames", std::move(frames)},
                           {"boxes", std::move(boxes)}});
  }
  return out;
}

}  // namespace swig
