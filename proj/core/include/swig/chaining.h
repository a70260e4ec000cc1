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

#ifndef SWIG_CHAINING_H_
#define SWIG_CHAINING_H_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "swig/frame.h"

namespace swig {

// One conditional situation: the query box it was produced for (if any) and
// its grounded frame.
struct SituationNode {
  std::optional<BoundingBox> query;
  GroundedFrame frame;
};

enum class LinkType { kSpatial, kSemantic };
std::string_view ToString(LinkType type);

// Undirected link between role `role_a` of node `node_a` and role `role_b` of
// node `node_b`, with node_a < node_b.
struct ChainEdge {
  std::size_t node_a = 0;
  std::size_t role_a = 0;
  std::size_t node_b = 0;
  std::size_t role_b = 0;
  LinkType type = LinkType::kSemantic;
  double strength = 0.0;  // 1 + IoU for spatial, 1 for semantic

  friend bool operator==(const ChainEdge&, const ChainEdge&) = default;
};

struct ChainGraph {
  std::vector<SituationNode> nodes;
  std::vector<ChainEdge> edges;

  // Edges touching node i, as indices into `edges`.
  std::vector<std::vector<std::size_t>> Adjacency() const;
};

inline constexpr double kDefaultChainIoU = 0.4;

struct ChainOptions {
  double spatial_iou = kDefaultChainIoU;
  // Spatial links additionally require equal non-null nouns.
  bool require_noun_match = false;
};

// Links every pair of roles from distinct nodes: spatially when both are
// grounded with IoU >= spatial_iou (Place never is), semantically when the
// nouns are equal and non-null. Edges are ordered by (node_a, role_a, node_b,
// role_b), spatial before semantic. Throws swig::Error on an empty node list.
ChainGraph Chain(std::vector<SituationNode> nodes, const ChainOptions& options = {});

nlohmann::json ToJson(const ChainGraph& graph);

// {"situations": [{"query": box | null, "verb": v, "nouns": {...},
//                  "boxes": {...}}, ...]} or the bare array. Frames are
// validated against the lexicon.
std::vector<SituationNode> ParseSituationNodes(const nlohmann::json& doc,
                                               const VerbLexicon& lexicon);

}  // namespace swig

#endif  // SWIG_CHAINING_H_
