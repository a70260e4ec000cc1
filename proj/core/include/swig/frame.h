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

#ifndef SWIG_FRAME_H_
#define SWIG_FRAME_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swig {

using NounId = std::string;

// The null role value is the empty string, both in memory and on disk.
inline constexpr std::string_view kNullNoun = "";
inline bool IsNull(std::string_view noun) { return noun.empty(); }

// The role that names the location of the action. It is never grounded.
inline constexpr std::string_view kPlaceRole = "Place";

inline constexpr std::size_t kAnnotatorsPerImage = 3;
inline constexpr std::size_t kMaxRolesPerVerb = 6;

// Axis-aligned box in pixels, origin top-left, treated as a closed real
// rectangle.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double Width() const { return x2 - x1; }
  double Height() const { return y2 - y1; }
  double Area() const { return Width() * Height(); }
  // Finite, non-negative, and strictly positive extent on both axes.
  bool IsValid() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct VerbEntry {
  std::string verb;
  std::vector<std::string> roles;  // authoritative order

  // Index of `role` in `roles`, or nullopt.
  std::optional<std::size_t> RoleIndex(std::string_view role) const;
};

class VerbLexicon {
 public:
  // Throws swig::Error when the entry has 0 or more than 6 roles, repeats a
  // role name, or duplicates an existing verb.
  void Add(VerbEntry entry);

  const VerbEntry* Find(std::string_view verb) const;
  // Throws swig::Error("unknown verb ...") when absent.
  const VerbEntry& At(std::string_view verb) const;
  bool Contains(std::string_view verb) const { return Find(verb) != nullptr; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, VerbEntry, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, VerbEntry, std::less<>> entries_;
};

class NounVocabulary {
 public:
  // The null noun cannot be added.
  void Add(NounId id, std::string gloss = {});
  bool Contains(std::string_view id) const;
  std::size_t size() const { return glosses_.size(); }
  const std::map<NounId, std::string, std::less<>>& glosses() const {
    return glosses_;
  }

 private:
  std::map<NounId, std::string, std::less<>> glosses_;
};

struct RoleValue {
  std::string role;
  NounId noun;  // kNullNoun for the null value

  friend bool operator==(const RoleValue&, const RoleValue&) = default;
};

struct GroundedFrame {
  std::string verb;
  std::vector<RoleValue> role_values;
  // Parallel to role_values.
  std::vector<std::optional<BoundingBox>> groundings;

  std::size_t size() const { return role_values.size(); }
  bool IsGrounded(std::size_t role_index) const {
    return role_index < groundings.size() && groundings[role_index].has_value();
  }

  friend bool operator==(const GroundedFrame&, const GroundedFrame&) = default;
};

// Builds an ungrounded frame in lexicon role order from a role->noun map.
// Throws swig::Error when the verb is unknown or a role is missing.
GroundedFrame MakeFrame(const VerbEntry& entry,
                        const std::map<std::string, NounId, std::less<>>& nouns);

struct AnnotatedImage {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::string verb;
  std::array<GroundedFrame, kAnnotatorsPerImage> annotator_frames;
  // Merged ground truth, parallel to the verb's roles.
  std::vector<std::optional<BoundingBox>> gt_groundings;
};

struct PredictionRecord {
  std::string image_id;
  std::vector<std::string> verb_ranking;
  std::map<std::string, GroundedFrame, std::less<>> frames;

  const GroundedFrame* FrameFor(std::string_view verb) const;
  // The model's grounded / ungrounded decision per role of `verb`'s frame.
  std::vector<bool> GroundedFlags(std::string_view verb) const;
};

struct Violation {
  // Index into role_values, or -1 for frame-level findings.
  int role_index = -1;
  std::string rule;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

// Rule names reported by ValidateFrame.
namespace rules {
inline constexpr std::string_view kUnknownVerb = "unknown-verb";
inline constexpr std::string_view kRoleCount = "role-count-mismatch";
inline constexpr std::string_view kRoleOrder = "role-order-mismatch";
inline constexpr std::string_view kGroundingCount = "grounding-count-mismatch";
inline constexpr std::string_view kNullNounGrounded = "null-noun-grounded";
inline constexpr std::string_view kPlaceGrounded = "place-grounded";
inline constexpr std::string_view kInvalidBox = "invalid-box";
}  // namespace rules

// Checks `frame` against the lexicon entry for its verb. Pure; never throws.
ValidationReport ValidateFrame(const GroundedFrame& frame,
                               const VerbLexicon& lexicon);

std::string ToString(const BoundingBox& box);

}  // namespace swig

#endif  // SWIG_FRAME_H_
