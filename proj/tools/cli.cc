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

#include "cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <unistd.h>

#include "swig/chaining.h"
#include "swig/dataset.h"
#include "swig/error.h"
#include "swig/fusion.h"
#include "swig/geometry.h"
#include "swig/loss.h"
#include "swig/metrics.h"
#include "swig/parallel.h"
#include "swig/retrieval.h"
#include "swig/version.h"

namespace swig::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Validation findings that should end the run with status 1 after the
// report has been written.
struct ValidationFailure {
  std::string summary;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  unsigned threads = 1;
  bool quiet = false;
};

// Writes `content` to `path` via a temporary sibling and a rename, or to
// `out` when path is "-".
void WriteOutput(const std::string& path, const std::string& content, Context& ctx) {
  if (path == "-") {
    ctx.out << content;
    ctx.out.flush();
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + tmp.string() + "'");
    f << content;
    f.close();
    if (!f) throw Error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move output into place at '" + path + "': " + ec.message());
  }
}

std::string Pretty(const json& doc) { return doc.dump(2) + "\n"; }

std::string JsonLines(const std::vector<json>& records) {
  std::string s;
  for (const auto& r : records) {
    s += r.dump();
    s += '\n';
  }
  return s;
}

// Human tables go to stdout unless stdout carries the JSON stream.
bool ShowTable(const Context& ctx, const std::string& out_path) {
  return !ctx.quiet && out_path != "-";
}

std::vector<std::string> ReadIdList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

template <typename Fn>
void ForEachJsonLine(const std::string& path, Fn fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error("'" + path + "' line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      fn(record, line_no);
    } catch (const Error& e) {
      throw Error("'" + path + "' line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::vector<std::string> files;
  std::string lexicon;
  std::string nouns;
  std::string out;
};

void RunValidate(const ValidateArgs& a, Context& ctx) {
  const VerbLexicon lexicon = LoadLexicon(a.lexicon);
  NounVocabulary vocabulary;
  if (!a.nouns.empty()) vocabulary = LoadVocabulary(a.nouns);

  json findings = json::array();
  std::size_t records = 0;
  auto report = [&](const std::string& file, std::size_t line, const std::string& id,
                    const std::string& rule, int role_index, const std::string& message) {
    findings.push_back({{"file", file},
                        {"line", line},
                        {"id", id},
                        {"rule", rule},
                        {"role_index", role_index},
                        {"message", message}});
    ctx.err << file << ":" << line << ": " << (id.empty() ? "" : "'" + id + "': ") << rule
            << ": " << message << "\n";
  };

  for (const auto& file : a.files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open '" + file + "'");
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
      ++line_no;
      if (text.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      ++records;
      json record;
      try {
        record = json::parse(text);
      } catch (const json::parse_error& e) {
        report(file, line_no, "", "malformed-json", -1, e.what());
        continue;
      }
      const std::string id =
          record.is_object() && record.contains("id") && record["id"].is_string()
              ? record["id"].get<std::string>()
              : "";
      const bool is_prediction = record.is_object() && record.contains("frames") &&
                                 record["frames"].is_object();
      try {
        if (is_prediction) {
          // Parse frame by frame so every violation is reported, not just the
          // first.
          for (const auto& [verb, doc] : record["frames"].items()) {
            const GroundedFrame frame = FrameFromJson(doc, lexicon.At(verb));
            for (const auto& v : ValidateFrame(frame, lexicon)) {
              report(file, line_no, id, v.rule, v.role_index, "verb '" + verb + "': " + v.message);
            }
          }
          ParsePredictionRecord(record, lexicon);
        } else {
          std::vector<std::string> warnings;
          const AnnotatedImage image =
              ParseImageRecord(record, lexicon, vocabulary, LoadOptions{}, &warnings);
          for (const auto& v : ValidateImage(image, lexicon)) {
            report(file, line_no, id, v.rule, v.role_index, v.message);
          }
          for (const auto& w : warnings) {
            if (!ctx.quiet) ctx.err << file << ":" << line_no << ": warning: " << w << "\n";
          }
        }
      } catch (const Error& e) {
        // Structural errors already covered by a rule above are not repeated.
        const std::string what = e.what();
        bool duplicate = false;
        for (const auto& f : findings) {
          if (f["line"] == line_no && f["file"] == file &&
              what.find(f["rule"].get<std::string>()) != std::string::npos) {
            duplicate = true;
          }
        }
        if (!duplicate) report(file, line_no, id, "malformed-record", -1, what);
      }
    }
  }

  const json doc = {{"records", records},
                    {"violations", findings.size()},
                    {"findings", findings}};
  if (!a.out.empty()) WriteOutput(a.out, Pretty(doc), ctx);
  if (!findings.empty()) {
    throw ValidationFailure{std::to_string(findings.size()) + " violation(s) in " +
                            std::to_string(records) + " record(s)"};
  }
  if (!ctx.quiet && a.out != "-") ctx.out << records << " record(s) valid\n";
}

// ------------------------------------------------------------------- stats

struct StatsArgs {
  std::string dataset;
  std::string lexicon;
  std::string nouns;
  std::string out = "-";
  std::string counting = "per-annotator";
  bool no_samples = false;
};

void RunStats(const StatsArgs& a, Context& ctx) {
  const Dataset dataset = LoadDatasetFile(a.dataset, a.lexicon, a.nouns);
  StatsOptions options;
  options.threads = ctx.threads;
  options.counting =
      a.counting == "per-image" ? SlotCounting::kPerImage : SlotCounting::kPerAnnotator;
  const StatsReport report = ComputeStats(dataset, options);
  json doc = ToJson(report, !a.no_samples);
  doc["slot_counting"] = a.counting;
  doc["warnings"] = dataset.warnings.size();
  WriteOutput(a.out, Pretty(doc), ctx);
  if (ShowTable(ctx, a.out)) {
    char line[128];
    auto row = [&](const char* name, std::size_t v) {
      std::snprintf(line, sizeof(line), "%-20s %12zu\n", name, v);
      ctx.out << line;
    };
    row("images", report.num_images);
    row("verbs", report.num_verbs);
    row("noun slots", report.total_noun_slots);
    row("non-null slots", report.non_null_slots);
    row("grounded slots", report.grounded_slots);
    std::snprintf(line, sizeof(line), "%-20s %12.4f\n%-20s %12.4f\n", "grounded fraction",
                  report.GroundedFraction(), "mean frame length", report.mean_frame_length);
    ctx.out << line;
  }
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string dataset;
  std::string lexicon;
  std::string nouns;
  std::string preds;
  std::string setting = "all";
  std::string value_all_mode = "any-per-role";
  double iou = kGroundingIoU;
  std::string out = "-";
};

void RunEval(const EvalArgs& a, Context& ctx) {
  const Dataset dataset = LoadDatasetFile(a.dataset, a.lexicon, a.nouns);
  const auto predictions = LoadPredictionsFile(a.preds, dataset.lexicon);
  EvalOptions options;
  options.threads = ctx.threads;
  options.iou_threshold = a.iou;
  options.value_all_mode = ParseValueAllMode(a.value_all_mode);

  std::vector<VerbSetting> settings;
  if (a.setting == "all") {
    settings = {VerbSetting::kTop1, VerbSetting::kTop5, VerbSetting::kGroundTruthVerb};
  } else {
    settings = {ParseVerbSetting(a.setting)};
  }
  std::vector<MetricReport> reports;
  for (VerbSetting s : settings) reports.push_back(Evaluate(dataset, predictions, s, options));

  json doc;
  if (reports.size() == 1) {
    doc = ToJson(reports.front());
  } else {
    doc = json::object();
    for (const auto& r : reports) doc[std::string(ToString(r.setting))] = ToJson(r);
  }
  doc["value_all_mode"] = a.value_all_mode;
  WriteOutput(a.out, Pretty(doc), ctx);
  if (ShowTable(ctx, a.out)) ctx.out << FormatMetricTable(reports);
}

// -------------------------------------------------------------------- fuse

struct FuseArgs {
  std::string frames;
  std::string detections;
  std::string lexicon;
  double threshold = kDefaultFusionThreshold;
  std::string out = "-";
};

void RunFuse(const FuseArgs& a, Context& ctx) {
  const VerbLexicon lexicon = LoadLexicon(a.lexicon);
  const auto predictions = LoadPredictionsFile(a.frames, lexicon);
  std::map<std::string, DetectionSet> detections;
  ForEachJsonLine(a.detections, [&](const json& record, std::size_t) {
    if (!record.contains("id") || !record["id"].is_string()) {
      throw Error("detections: missing string 'id'");
    }
    const std::string id = record["id"].get<std::string>();
    if (!detections.emplace(id, ParseDetectionSet(record)).second) {
      throw Error("detections: duplicate id '" + id + "'");
    }
  });

  const auto fused = ParallelMap(predictions.size(), ctx.threads, [&](std::size_t i) {
    PredictionRecord record = predictions[i];
    auto it = detections.find(record.image_id);
    if (it == detections.end()) {
      throw Error("fuse: no detections for image '" + record.image_id + "'");
    }
    for (auto& [verb, frame] : record.frames) {
      frame = AssignGroundings(frame, it->second, a.threshold);
    }
    return ToJson(record);
  });
  WriteOutput(a.out, JsonLines(fused), ctx);
}

// ---------------------------------------------------------------- retrieve

struct RetrieveArgs {
  std::string mode;
  std::string query;
  std::string search;
  std::size_t k = 5;
  std::string embeddings;
  std::string manifest;
  std::string detections;
  double detection_threshold = kDetectionLogitThreshold;
  std::string preds;
  std::string lexicon;
  std::string out = "-";
};

void RunRetrieve(const RetrieveArgs& a, Context& ctx) {
  const SimilarityMode mode = ParseSimilarityMode(a.mode);
  FeatureStore store;
  switch (mode) {
    case SimilarityMode::kL2:
      if (a.embeddings.empty() || a.manifest.empty()) {
        throw Error("--mode l2 needs --embeddings and --manifest");
      }
      store.embeddings = EmbeddingTable::ReadFiles(a.manifest, a.embeddings);
      break;
    case SimilarityMode::kObj:
      if (a.detections.empty()) throw Error("--mode obj needs --detections");
      ForEachJsonLine(a.detections, [&](const json& record, std::size_t) {
        if (!record.contains("id") || !record["id"].is_string()) {
          throw Error("detections: missing string 'id'");
        }
        DetectionList list;
        if (auto it = record.find("detections"); it != record.end()) {
          for (const auto& d : *it) {
            auto box = BoxFromJson(d.at("box"));
            if (!box) throw Error("detections: null box");
            list.push_back({d.at("class").get<std::string>(), *box});
          }
        } else {
          list = ExtractDetections(ParseDetectionSet(record), a.detection_threshold);
        }
        store.detections[record["id"].get<std::string>()] = std::move(list);
      });
      break;
    case SimilarityMode::kSit:
    case SimilarityMode::kGrSit: {
      if (a.preds.empty() || a.lexicon.empty()) {
        throw Error("--mode sit/grsit needs --preds and --lexicon");
      }
      const VerbLexicon lexicon = LoadLexicon(a.lexicon);
      for (const auto& p : LoadPredictionsFile(a.preds, lexicon)) {
        store.situations[p.image_id] = ToSituationPrediction(p, lexicon);
      }
      break;
    }
  }

  const auto queries = ReadIdList(a.query);
  const auto search = ReadIdList(a.search);
  json results = json::array();
  for (const auto& q : queries) {
    const auto neighbors = RetrieveTopK(
        search, [&](std::size_t i) { return store.Similarity(mode, q, search[i]); }, a.k,
        ctx.threads);
    json list = json::array();
    for (const auto& n : neighbors) list.push_back({{"id", n.id}, {"score", n.score}});
    results.push_back({{"query", q}, {"neighbors", std::move(list)}});
  }
  const json doc = {{"mode", ToString(mode)}, {"k", a.k}, {"results", std::move(results)}};
  WriteOutput(a.out, Pretty(doc), ctx);
}

// ------------------------------------------------------------------- split

struct SplitArgs {
  std::string dataset;
  std::string lexicon;
  std::size_t per_verb_query = 2;
  std::size_t per_verb_search = 48;
  std::uint64_t seed = 0;
  std::string query_out;
  std::string search_out;
  std::string out = "-";
};

void RunSplit(const SplitArgs& a, Context& ctx) {
  const Dataset dataset = LoadDatasetFile(a.dataset, a.lexicon, "");
  std::map<std::string, std::vector<std::string>> by_verb;
  for (const auto& image : dataset.images) by_verb[image.verb].push_back(image.image_id);
  const QuerySearchSplit split =
      SplitQuerySearch(by_verb, a.per_verb_query, a.per_verb_search, a.seed);
  auto lines = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) s += id + "\n";
    return s;
  };
  if (!a.query_out.empty()) WriteOutput(a.query_out, lines(split.query), ctx);
  if (!a.search_out.empty()) WriteOutput(a.search_out, lines(split.search), ctx);
  WriteOutput(a.out, Pretty({{"seed", a.seed}, {"query", split.query}, {"search", split.search}}),
              ctx);
}

// ------------------------------------------------------------------- chain

struct ChainArgs {
  std::string situations;
  std::string lexicon;
  double iou = kDefaultChainIoU;
  bool require_noun_match = false;
  std::string out = "-";
};

void RunChain(const ChainArgs& a, Context& ctx) {
  const VerbLexicon lexicon = LoadLexicon(a.lexicon);
  auto nodes = ParseSituationNodes(ReadJsonFile(a.situations), lexicon);
  const ChainGraph graph = Chain(std::move(nodes), {a.iou, a.require_noun_match});
  WriteOutput(a.out, Pretty(ToJson(graph)), ctx);
}

// ----------------------------------------------------------------- anchors

struct AnchorsArgs {
  std::string boxes;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  std::string method = "optimal";
  std::string out = "-";
};

void RunAnchors(const AnchorsArgs& a, Context& ctx) {
  const json doc = ReadJsonFile(a.boxes);
  const json& list = doc.is_object() && doc.contains("boxes") ? doc["boxes"] : doc;
  if (!list.is_array()) throw Error("anchors: expected an array of boxes");
  std::vector<BoundingBox> boxes;
  for (const auto& b : list) {
    auto box = BoxFromJson(b);
    if (!box) throw Error("anchors: null box");
    boxes.push_back(*box);
  }
  ClusterOptions options;
  options.seed = a.seed;
  options.method = a.method == "lloyd" ? ClusterMethod::kLloyd : ClusterMethod::kOptimal;
  const auto ratios = ClusterAspectRatios(boxes, a.k, options);
  WriteOutput(a.out, json(ratios).dump() + "\n", ctx);
}

// --------------------------------------------------------------- gradcheck

struct GradcheckArgs {
  std::uint64_t seed = 0;
  std::size_t instances = 100;
  double step = 1e-5;
  double tolerance = 1e-4;
  std::string out;
};

void RunGradcheck(const GradcheckArgs& a, Context& ctx) {
  const auto results = RunGradientChecks(a.seed, a.instances, a.step);
  json doc = json::array();
  bool ok = true;
  for (const auto& r : results) {
    doc.push_back({{"kernel", r.kernel},
                   {"instances", r.instances},
                   {"max_relative_error", r.max_relative_error}});
    ok = ok && r.max_relative_error <= a.tolerance;
  }
  if (!a.out.empty()) WriteOutput(a.out, Pretty(doc), ctx);
  if (!ctx.quiet && a.out != "-") {
    char line[128];
    for (const auto& r : results) {
      std::snprintf(line, sizeof(line), "%-22s %6zu  max rel err %.3e\n", r.kernel.c_str(),
                    r.instances, r.max_relative_error);
      ctx.out << line;
    }
  }
  if (!ok) throw ValidationFailure{"gradient check above tolerance"};
}

// ----------------------------------------------------------------- convert

struct ConvertArgs {
  std::string release;
  std::string space;
  std::string lexicon_out;
  std::string nouns_out;
  std::string out = "-";
};

void RunConvert(const ConvertArgs& a, Context& ctx) {
  const SwigConversion conv = ConvertSwigRelease(ReadJsonFile(a.release), ReadJsonFile(a.space));
  if (!a.lexicon_out.empty()) {
    json lex = json::object();
    for (const auto& [verb, entry] : conv.lexicon.entries()) lex[verb] = entry.roles;
    WriteOutput(a.lexicon_out, Pretty(lex), ctx);
  }
  if (!a.nouns_out.empty()) {
    json nouns = json::object();
    for (const auto& [id, gloss] : conv.vocabulary.glosses()) nouns[id] = gloss;
    WriteOutput(a.nouns_out, Pretty(nouns), ctx);
  }
  WriteOutput(a.out, JsonLines(conv.records), ctx);
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grounded situation recognition toolkit", "swig"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string("swig ") + kToolkitVersion + " (schema " +
                           std::to_string(kSchemaVersion) + ")");

  Context ctx{out, err};
  ctx.threads = DefaultThreadCount();
  app.add_option("--threads", ctx.threads, "Worker threads (default: logical cores)")
      ->check(CLI::Range(1u, 1024u));
  app.add_flag("-q,--quiet", ctx.quiet, "Suppress tables and warnings");

  std::function<void()> action;
  auto out_opt = [](CLI::App* sub, std::string& target, const char* help) {
    sub->add_option("--out", target, help);
  };

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check dataset or prediction files");
  validate->add_option("files", va.files, "JSON Lines files")->required()->check(CLI::ExistingFile);
  validate->add_option("--lexicon", va.lexicon, "Lexicon JSON")->required()->check(CLI::ExistingFile);
  validate->add_option("--nouns", va.nouns, "Noun vocabulary JSON")->check(CLI::ExistingFile);
  out_opt(validate, va.out, "Write a JSON findings report ('-' for stdout)");
  validate->callback([&] { action = [&] { RunValidate(va, ctx); }; });

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("dataset", sa.dataset, "Dataset JSON Lines")->required()->check(CLI::ExistingFile);
  stats->add_option("--lexicon", sa.lexicon)->required()->check(CLI::ExistingFile);
  stats->add_option("--nouns", sa.nouns)->check(CLI::ExistingFile);
  stats->add_option("--slot-counting", sa.counting)
      ->check(CLI::IsMember({"per-annotator", "per-image"}));
  stats->add_flag("--no-samples", sa.no_samples, "Omit scale/aspect samples");
  out_opt(stats, sa.out, "Report JSON path ('-' for stdout)");
  stats->callback([&] { action = [&] { RunStats(sa, ctx); }; });

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Five-metric evaluation");
  eval->add_option("--dataset", ea.dataset)->required()->check(CLI::ExistingFile);
  eval->add_option("--lexicon", ea.lexicon)->required()->check(CLI::ExistingFile);
  eval->add_option("--nouns", ea.nouns)->check(CLI::ExistingFile);
  eval->add_option("--preds", ea.preds)->required()->check(CLI::ExistingFile);
  eval->add_option("--setting", ea.setting)->check(CLI::IsMember({"top1", "top5", "gt", "all"}));
  eval->add_option("--value-all-mode", ea.value_all_mode)
      ->check(CLI::IsMember({"any-per-role", "single-annotator"}));
  eval->add_option("--iou", ea.iou, "Grounding IoU threshold")->check(CLI::Range(0.0, 1.0));
  out_opt(eval, ea.out, "Report JSON path ('-' for stdout)");
  eval->callback([&] { action = [&] { RunEval(ea, ctx); }; });

  FuseArgs fa;
  auto* fuse = app.add_subcommand("fuse", "Assign detector boxes to predicted nouns");
  fuse->add_option("--frames", fa.frames)->required()->check(CLI::ExistingFile);
  fuse->add_option("--detections", fa.detections)->required()->check(CLI::ExistingFile);
  fuse->add_option("--lexicon", fa.lexicon)->required()->check(CLI::ExistingFile);
  fuse->add_option("--fusion-threshold", fa.threshold, "Logit threshold (default -4)");
  out_opt(fuse, fa.out, "Grounded predictions JSON Lines ('-' for stdout)");
  fuse->callback([&] { action = [&] { RunFuse(fa, ctx); }; });

  RetrieveArgs ra;
  auto* retrieve = app.add_subcommand("retrieve", "Nearest-neighbour image retrieval");
  retrieve->add_option("--mode", ra.mode)->required()->check(CLI::IsMember({"l2", "obj", "sit", "grsit"}));
  retrieve->add_option("--query", ra.query, "Query id list")->required()->check(CLI::ExistingFile);
  retrieve->add_option("--search", ra.search, "Search id list")->required()->check(CLI::ExistingFile);
  retrieve->add_option("--k", ra.k)->check(CLI::PositiveNumber);
  retrieve->add_option("--embeddings", ra.embeddings, "SWGE binary")->check(CLI::ExistingFile);
  retrieve->add_option("--manifest", ra.manifest, "Embedding id manifest")->check(CLI::ExistingFile);
  retrieve->add_option("--detections", ra.detections, "Detections JSON Lines")->check(CLI::ExistingFile);
  retrieve->add_option("--detection-threshold", ra.detection_threshold);
  retrieve->add_option("--preds", ra.preds, "Top-5 situation predictions")->check(CLI::ExistingFile);
  retrieve->add_option("--lexicon", ra.lexicon)->check(CLI::ExistingFile);
  out_opt(retrieve, ra.out, "Results JSON ('-' for stdout)");
  retrieve->callback([&] { action = [&] { RunRetrieve(ra, ctx); }; });

  SplitArgs spa;
  auto* split = app.add_subcommand("split", "Seeded per-verb query/search split");
  split->add_option("--dataset", spa.dataset)->required()->check(CLI::ExistingFile);
  split->add_option("--lexicon", spa.lexicon)->required()->check(CLI::ExistingFile);
  split->add_option("--per-verb-query", spa.per_verb_query);
  split->add_option("--per-verb-search", spa.per_verb_search);
  split->add_option("--seed", spa.seed);
  split->add_option("--query-out", spa.query_out, "Query id list path");
  split->add_option("--search-out", spa.search_out, "Search id list path");
  out_opt(split, spa.out, "Split JSON ('-' for stdout)");
  split->callback([&] { action = [&] { RunSplit(spa, ctx); }; });

  ChainArgs ca;
  auto* chain = app.add_subcommand("chain", "Link situations through shared groundings");
  chain->add_option("--situations", ca.situations)->required()->check(CLI::ExistingFile);
  chain->add_option("--lexicon", ca.lexicon)->required()->check(CLI::ExistingFile);
  chain->add_option("--iou", ca.iou, "Spatial link IoU (default 0.4)")->check(CLI::Range(0.0, 1.0));
  chain->add_flag("--require-noun-match", ca.require_noun_match);
  out_opt(chain, ca.out, "Graph JSON ('-' for stdout)");
  chain->callback([&] { action = [&] { RunChain(ca, ctx); }; });

  AnchorsArgs aa;
  auto* anchors = app.add_subcommand("anchors", "Cluster box aspect ratios");
  anchors->add_option("--boxes", aa.boxes, "JSON array of boxes")->required()->check(CLI::ExistingFile);
  anchors->add_option("--k", aa.k)->check(CLI::PositiveNumber);
  anchors->add_option("--seed", aa.seed);
  anchors->add_option("--method", aa.method)->check(CLI::IsMember({"optimal", "lloyd"}));
  out_opt(anchors, aa.out, "Ratios JSON ('-' for stdout)");
  anchors->callback([&] { action = [&] { RunAnchors(aa, ctx); }; });

  GradcheckArgs ga;
  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference checks of the loss kernels");
  gradcheck->add_option("--seed", ga.seed);
  gradcheck->add_option("--instances", ga.instances)->check(CLI::PositiveNumber);
  gradcheck->add_option("--step", ga.step)->check(CLI::PositiveNumber);
  gradcheck->add_option("--tolerance", ga.tolerance)->check(CLI::PositiveNumber);
  out_opt(gradcheck, ga.out, "Results JSON ('-' for stdout)");
  gradcheck->callback([&] { action = [&] { RunGradcheck(ga, ctx); }; });

  ConvertArgs cva;
  auto* convert = app.add_subcommand("convert", "Convert released SWiG files to JSON Lines");
  convert->add_option("--release", cva.release)->required()->check(CLI::ExistingFile);
  convert->add_option("--space", cva.space)->required()->check(CLI::ExistingFile);
  convert->add_option("--lexicon-out", cva.lexicon_out);
  convert->add_option("--nouns-out", cva.nouns_out);
  out_opt(convert, cva.out, "Canonical JSON Lines ('-' for stdout)");
  convert->callback([&] { action = [&] { RunConvert(cva, ctx); }; });

  std::vector<const char*> argv;
  argv.push_back("swig");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    action();
  } catch (const ValidationFailure& f) {
    err << "swig: " << f.summary << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "swig: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "swig: malformed JSON: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "swig: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace swig::cli
