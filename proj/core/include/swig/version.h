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

#ifndef SWIG_VERSION_H_
#define SWIG_VERSION_H_

namespace swig {

inline constexpr const char* kToolkitVersion = "1.0.0";
// Bumped whenever a file layout (dataset, prediction, detection, situation,
// embedding or report JSON) changes incompatibly.
inline constexpr int kSchemaVersion = 1;

}  // namespace swig

#endif  // SWIG_VERSION_H_
