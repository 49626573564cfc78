// Copyright 2026 The graphevo Authors.
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

#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "graphevo/rng.hpp"

namespace graphevo {
namespace {

TEST(Rng, SameStreamSameSequence) {
  Rng a(42, StreamId{3, 7});
  Rng b(42, StreamId{3, 7});
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a(), b());
}

TEST(Rng, DistinctStreamsDiffer) {
  Rng a(42, StreamId{3, 7});
  Rng b(42, StreamId{3, 8});
  Rng c(43, StreamId{3, 7});
  EXPECT_NE(a(), b());
  EXPECT_NE(Rng(42, StreamId{3, 7})(), c());
}

TEST(Rng, StreamIsThreadIndependent) {
  std::uint64_t from_thread = 0;
  std::thread t([&] {
    Rng r(5, StreamId{1, 1});
    from_thread = r();
  });
  t.join();
  Rng r(5, StreamId{1, 1});
  EXPECT_EQ(r(), from_thread);
}

TEST(Rng, UniformIntCoversClosedRange) {
  Rng r(1);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.uniform_int(-2, 3);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(2);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000.0, 0.5, 0.02);
}

TEST(Rng, ForkLeavesParentUntouched) {
  Rng a(9);
  Rng b(9);
  (void)a.fork(StreamId{1, 2})();
  EXPECT_EQ(a(), b());
}

TEST(Rng, ShuffleIsPermutation) {
  Rng r(4);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  r.shuffle(v);
  std::set<int> s(v.begin(), v.end());
  EXPECT_EQ(s.size(), 8u);
}

}  // namespace
}  // namespace graphevo
