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

#include "swig/frame.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "swig/error.h"

namespace swig {

bool BoundingBox::IsValid() const {
  for (double v : {x1, y1, x2, y2}) {
    if (!std::isfinite(v) || v < 0.0) return false;
  }
  return x1 < x2 && y1 < y2;
}

std::optional<std::size_t> VerbEntry::RoleIndex(std::string_view role) const {
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == role) return i;
  }
  return std::nullopt;
}

void VerbLexicon::Add(VerbEntry entry) {
  if (entry.verb.empty()) throw Error("lexicon: empty verb name");
  if (entry.roles.empty() || entry.roles.size() > kMaxRolesPerVerb) {
    throw Error("lexicon: verb '" + entry.verb + "' has " +
                std::to_string(entry.roles.size()) + " roles (expected 1-6)");
  }
  std::set<std::string_view> seen;
  for (const auto& role : entry.roles) {
    if (role.empty()) {
      throw Error("lexicon: verb '" + entry.verb + "' has an empty role name");
    }
    if (!seen.insert(role).second) {
      throw Error("lexicon: verb '" + entry.verb + "' repeats role '" + role +
                  "'");
    }
  }
  auto name = entry.verb;
  if (!entries_.emplace(name, std::move(entry)).second) {
    throw Error("lexicon: duplicate verb '" + name + "'");
  }
}

const VerbEntry* VerbLexicon::Find(std::string_view verb) const {
  auto it = entries_.find(verb);
  return it == entries_.end() ? nullptr : &it->second;
}

const VerbEntry& VerbLexicon::At(std::string_view verb) const {
  const VerbEntry* entry = Find(verb);
  if (entry == nullptr) throw Error("unknown verb '" + std::string(verb) + "'");
  return *entry;
}

void NounVocabulary::Add(NounId id, std::string gloss) {
  if (IsNull(id)) throw Error("vocabulary: the null noun is not a member");
  glosses_[std::move(id)] = std::move(gloss);
}

bool NounVocabulary::Contains(std::string_view id) const {
  return glosses_.find(id) != glosses_.end();
}

GroundedFrame MakeFrame(
    const VerbEntry& entry,
    const std::map<std::string, NounId, std::less<>>& nouns) {
  GroundedFrame frame;
  frame.verb = entry.verb;
  frame.role_values.reserve(entry.roles.size());
  for (const auto& role : entry.roles) {
    auto it = nouns.find(role);
    if (it == nouns.end()) {
      throw Error("frame for verb '" + entry.verb + "' is missing role '" +
                  role + "'");
    }
    frame.role_values.push_back({role, it->second});
  }
  for (const auto& [role, noun] : nouns) {
    if (!entry.RoleIndex(role)) {
      throw Error("frame for verb '" + entry.verb + "' has unknown role '" +
                  role + "'");
    }
  }
  frame.groundings.assign(entry.roles.size(), std::nullopt);
  return frame;
}

const GroundedFrame* PredictionRecord::FrameFor(std::string_view verb) const {
  auto it = frames.find(verb);
  return it == frames.end() ? nullptr : &it->second;
}

std::vector<bool> PredictionRecord::GroundedFlags(std::string_view verb) const {
  std::vector<bool> flags;
  if (const GroundedFrame* frame = FrameFor(verb)) {
    for (std::size_t i = 0; i < frame->size(); ++i) {
      flags.push_back(frame->IsGrounded(i));
    }
  }
  return flags;
}

ValidationReport ValidateFrame(const GroundedFrame& frame,
                               const VerbLexicon& lexicon) {
  ValidationReport report;
  auto add = [&report](int index, std::string_view rule, std::string message) {
    report.push_back({index, std::string(rule), std::move(message)});
  };

  const VerbEntry* entry = lexicon.Find(frame.verb);
  if (entry == nullptr) {
    add(-1, rules::kUnknownVerb, "unknown verb '" + frame.verb + "'");
  } else if (entry->roles.size() != frame.role_values.size()) {
    add(-1, rules::kRoleCount,
        "verb '" + frame.verb + "' expects " +
            std::to_string(entry->roles.size()) + " roles, frame has " +
            std::to_string(frame.role_values.size()));
  } else {
    for (std::size_t i = 0; i < entry->roles.size(); ++i) {
      if (frame.role_values[i].role != entry->roles[i]) {
        add(static_cast<int>(i), rules::kRoleOrder,
            "expected role '" + entry->roles[i] + "', found '" +
                frame.role_values[i].role + "'");
      }
    }
  }

  if (frame.groundings.size() != frame.role_values.size()) {
    add(-1, rules::kGroundingCount,
        std::to_string(frame.groundings.size()) + " groundings for " +
            std::to_string(frame.role_values.size()) + " roles");
  }

  const std::size_t n = std::min(frame.groundings.size(), frame.role_values.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& box = frame.groundings[i];
    if (!box) continue;
    const auto& rv = frame.role_values[i];
    const int index = static_cast<int>(i);
    if (!box->IsValid()) {
      add(index, rules::kInvalidBox,
          "role '" + rv.role + "' has invalid box " + ToString(*box));
    }
    if (IsNull(rv.noun)) {
      add(index, rules::kNullNounGrounded,
          "role '" + rv.role + "' has a null noun but a grounding");
    }
    if (rv.role == kPlaceRole) {
      add(index, rules::kPlaceGrounded, "role 'Place' carries a grounding");
    }
  }
  return report;
}

std::string ToString(const BoundingBox& box) {
  std::ostringstream os;
  os << '[' << box.x1 << ',' << box.y1 << ',' << box.x2 << ',' << box.y2
     << ']';
  return os.str();
}

}  // namespace swig
