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

#include "swig/chaining.h"

#include <utility>

#include "swig/dataset.h"
#include "swig/error.h"
#include "swig/geometry.h"

namespace swig {

std::string_view ToString(LinkType type) {
  return type == LinkType::kSpatial ? "spatial" : "semantic";
}

std::vector<std::vector<std::size_t>> ChainGraph::Adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].node_a].push_back(e);
    adj[edges[e].node_b].push_back(e);
  }
  return adj;
}

ChainGraph Chain(std::vector<SituationNode> nodes, const ChainOptions& options) {
  if (nodes.empty()) throw Error("chain: need at least one situation");
  if (!(options.spatial_iou > 0.0 && options.spatial_iou <= 1.0)) {
    throw Error("chain: spatial IoU threshold must lie in (0, 1]");
  }
  ChainGraph graph;
  graph.nodes = std::move(nodes);
  const auto& ns = graph.nodes;

  for (std::size_t i = 0; i < ns.size(); ++i) {
    const GroundedFrame& fa = ns[i].frame;
    for (std::size_t a = 0; a < fa.size(); ++a) {
      for (std::size_t j = i + 1; j < ns.size(); ++j) {
        const GroundedFrame& fb = ns[j].frame;
        for (std::size_t b = 0; b < fb.size(); ++b) {
          const NounId& na = fa.role_values[a].noun;
          const NounId& nb = fb.role_values[b].noun;
          const bool same_noun = !IsNull(na) && na == nb;
          const bool placeless = fa.role_values[a].role != kPlaceRole &&
                                 fb.role_values[b].role != kPlaceRole;
          if (placeless && fa.IsGrounded(a) && fb.IsGrounded(b) &&
              (same_noun || !options.require_noun_match)) {
            const double iou = IoU(*fa.groundings[a], *fb.groundings[b]);
            if (iou >= options.spatial_iou) {
              graph.edges.push_back({i, a, j, b, LinkType::kSpatial, 1.0 + iou});
            }
          }
          if (same_noun) {
            graph.edges.push_back({i, a, j, b, LinkType::kSemantic, 1.0});
          }
        }
      }
    }
  }
  return graph;
}

std::vector<SituationNode> ParseSituationNodes(const nlohmann::json& doc,
                                               const VerbLexicon& lexicon) {
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    auto it = doc.find("situations");
    if (it == doc.end()) throw Error("situations: missing field 'situations'");
    list = &*it;
  }
  if (!list->is_array()) throw Error("situations: expected an array");
  std::vector<SituationNode> nodes;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto& item = (*list)[i];
    const std::string where = "situation " + std::to_string(i);
    try {
      if (!item.is_object() || !item.contains("verb") || !item["verb"].is_string()) {
        throw Error("needs a string 'verb'");
      }
      SituationNode node;
      if (auto q = item.find("query"); q != item.end()) node.query = BoxFromJson(*q);
      node.frame = FrameFromJson(item, lexicon.At(item["verb"].get<std::string>()));
      const ValidationReport report = ValidateFrame(node.frame, lexicon);
      if (!report.empty()) {
        throw Error(report.front().rule + ": " + report.front().message);
      }
      nodes.push_back(std::move(node));
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return nodes;
}

nlohmann::json ToJson(const ChainGraph& graph) {
  using nlohmann::json;
  json nodes = json::array();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& node = graph.nodes[i];
    json frame = FrameToJson(node.frame);
    nodes.push_back({{"index", i},
                     {"query", BoxToJson(node.query)},
                     {"verb", node.frame.verb},
                     {"nouns", frame["nouns"]},
                     {"boxes", frame["boxes"]}});
  }
  json edges = json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"a", e.node_a},
                     {"role_a", graph.nodes[e.node_a].frame.role_values[e.role_a].role},
                     {"b", e.node_b},
                     {"role_b", graph.nodes[e.node_b].frame.role_values[e.role_b].role},
                     {"type", ToString(e.type)},
                     {"strength", e.strength}});
  }
  json adjacency = json::array();
  for (const auto& list : graph.Adjacency()) adjacency.push_back(list);
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"adjacency", std::move(adjacency)}};
}

}  // namespace swig
