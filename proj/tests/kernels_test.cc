// Copyright 2026 The Restrictplan Authors.
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

#include "restrictplan/kernels.h"

#include <random>

#include <gtest/gtest.h>

#include "support/fixtures.h"

namespace restrictplan::kernels {
namespace {

TEST(OverlapAreasTest, ParallelEqualsSerial) {
  auto polygons = fixtures::Polygons();
  std::vector<const GeoPolygon *> candidates;
  for (const auto &p : polygons) candidates.push_back(&p);
  for (const auto &subject : polygons) {
    EXPECT_EQ(OverlapAreas(subject, candidates), OverlapAreasSerial(subject, candidates));
  }
  EXPECT_TRUE(OverlapAreas(polygons[0], {}).empty());
}

TEST(CountDocumentsTest, ParallelEqualsSerial) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> day(0, 3000), len(0, 200), count(0, 5);
  std::vector<std::vector<DayRange>> docs(300);
  for (auto &d : docs) {
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
      int first = day(rng);
      d.push_back({first, first + len(rng)});
    }
  }
  std::vector<DayRange> buckets;
  for (int b = 0; b < 3200; b += 30) buckets.push_back({b, b + 29});
  auto parallel = CountDocumentsPerBucket(buckets, docs);
  EXPECT_EQ(parallel, CountDocumentsPerBucketSerial(buckets, docs));
  EXPECT_TRUE(CountDocumentsPerBucket({}, docs).empty());
}

TEST(CountDocumentsTest, CountsDocumentsNotIntervals) {
  std::vector<std::vector<DayRange>> docs = {{{0, 5}, {3, 9}}, {{20, 20}}, {}};
  std::vector<DayRange> buckets = {{0, 9}, {10, 19}, {20, 29}};
  EXPECT_EQ(CountDocumentsPerBucket(buckets, docs), (std::vector<int>{1, 0, 1}));
}

}  // namespace
}  // namespace restrictplan::kernels
