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

#include "swig/parallel.h"

#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

namespace swig {
namespace {

TEST(ParallelMapTest, IndexOrderForAnyThreadCount) {
  for (unsigned threads : {1u, 2u, 8u, 64u}) {
    const auto out = ParallelMap(1000, threads, [](std::size_t i) { return i * i; });
    ASSERT_EQ(out.size(), 1000u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
  EXPECT_TRUE(ParallelMap(0, 4, [](std::size_t i) { return i; }).empty());
}

TEST(ParallelMapTest, RethrowsLowestFailingIndex) {
  for (unsigned threads : {1u, 8u}) {
    try {
      ParallelMap(100, threads, [](std::size_t i) -> int {
        if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
        return 0;
      });
      FAIL();
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "17");
    }
  }
}

}  // namespace
}  // namespace swig
