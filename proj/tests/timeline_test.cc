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

#include "restrictplan/timeline.h"

#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "support/oracles.h"
#include "support/random_corpus.h"

namespace restrictplan {
namespace {

Date D(int y, unsigned m, unsigned d) { return Date::Civil(y, m, d); }

TEST(LevelTest, NamesAndOrder) {
  for (auto lod : kAllLevels) EXPECT_EQ(ParseLevel(LevelName(lod)), lod);
  EXPECT_FALSE(ParseLevel("week"));
  EXPECT_LT(LevelOfDetail::kDay, LevelOfDetail::kMonth);
  EXPECT_LT(LevelOfDetail::kQuarter, LevelOfDetail::kYear);
  EXPECT_LT(LevelOfDetail::kYear, LevelOfDetail::kDecade);
}

TEST(LevelTest, BucketAlignment) {
  Date d = D(2023, 8, 17);
  EXPECT_EQ(BucketStart(d, LevelOfDetail::kDay), d);
  EXPECT_EQ(BucketStart(d, LevelOfDetail::kMonth), D(2023, 8, 1));
  EXPECT_EQ(BucketStart(d, LevelOfDetail::kQuarter), D(2023, 7, 1));
  EXPECT_EQ(BucketStart(d, LevelOfDetail::kYear), D(2023, 1, 1));
  EXPECT_EQ(BucketStart(d, LevelOfDetail::kDecade), D(2020, 1, 1));
  EXPECT_EQ(NextBucketStart(D(2023, 10, 1), LevelOfDetail::kQuarter), D(2024, 1, 1));
  EXPECT_EQ(NextBucketStart(D(2020, 1, 1), LevelOfDetail::kDecade), D(2030, 1, 1));
  EXPECT_EQ(NextBucketStart(D(2024, 2, 1), LevelOfDetail::kMonth), D(2024, 3, 1));
  EXPECT_TRUE(IsAligned(D(2023, 4, 1), LevelOfDetail::kQuarter));
  EXPECT_FALSE(IsAligned(D(2023, 5, 1), LevelOfDetail::kQuarter));
  EXPECT_TRUE(IsAligned(D(2010, 1, 1), LevelOfDetail::kDecade));
  EXPECT_FALSE(IsAligned(D(2011, 1, 1), LevelOfDetail::kDecade));
}

TEST(ExpandRecurringTest, Examples) {
  auto breeding = TemporalExtent::Recurring({3, 1}, {9, 30});
  auto three = ExpandRecurring(breeding, D(2020, 1, 1), D(2022, 12, 31));
  ASSERT_EQ(three.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(three[i].first, D(2020 + i, 3, 1));
    EXPECT_EQ(three[i].last, D(2020 + i, 9, 30));
  }
  EXPECT_TRUE(ExpandRecurring(breeding, D(2021, 10, 1), D(2021, 12, 31)).empty());

  auto winter = TemporalExtent::Recurring({11, 1}, {2, 28});
  auto w = ExpandRecurring(winter, D(2021, 1, 1), D(2021, 3, 31));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].first, D(2020, 11, 1));
  EXPECT_EQ(w[0].last, D(2021, 2, 28));
  // Agrees with day-by-day membership.
  for (Date d = D(2021, 1, 1); d <= D(2021, 3, 31); d = d.AddDays(1)) {
    bool in = d >= w[0].first && d <= w[0].last;
    EXPECT_EQ(in, oracle::ExtentContains(winter, d)) << d.ToIso();
  }
}

TEST(ExpandRecurringTest, RejectsOtherForms) {
  EXPECT_THROW(ExpandRecurring(TemporalExtent::Undated(), D(2020, 1, 1), D(2021, 1, 1)),
               ContractViolation);
  EXPECT_THROW(ExpandRecurring(TemporalExtent::Absolute(D(2020, 1, 1), D(2020, 1, 2)),
                               D(2020, 1, 1), D(2021, 1, 1)),
               ContractViolation);
}

TEST(ExpandRecurringTest, MatchesMembershipOnRandomPeriods) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> month(1, 12), dom(1, 29);
  std::uniform_int_distribution<int> start(D(2019, 1, 1).serial(), D(2024, 1, 1).serial());
  std::uniform_int_distribution<int> len(0, 800);
  for (int i = 0; i < 200; ++i) {
    MonthDay a{static_cast<unsigned>(month(rng)), static_cast<unsigned>(dom(rng))};
    MonthDay b{static_cast<unsigned>(month(rng)), static_cast<unsigned>(dom(rng))};
    auto e = TemporalExtent::Recurring(a, b);
    Date from = Date::FromSerial(start(rng));
    Date to = from.AddDays(len(rng));
    auto intervals = ExpandRecurring(e, from, to);
    for (Date d = from; d <= to; d = d.AddDays(1)) {
      bool in = std::any_of(intervals.begin(), intervals.end(), [&](const DateInterval &iv) {
        return iv.first <= d && d <= iv.last;
      });
      ASSERT_EQ(in, oracle::ExtentContains(e, d)) << d.ToIso();
    }
  }
}

TEST(AggregateTest, EmptyStoreGivesZeroBuckets) {
  Store store;
  auto b = Aggregate({D(2022, 1, 1), D(2022, 12, 31), LevelOfDetail::kMonth, {}}, store);
  ASSERT_EQ(b.size(), 12u);
  for (const auto &bucket : b) {
    EXPECT_EQ(bucket.document_count, 0);
    EXPECT_TRUE(IsAligned(bucket.start, LevelOfDetail::kMonth));
  }
}

TEST(AggregateTest, RejectsInvertedRange) {
  Store store;
  EXPECT_THROW(Aggregate({D(2022, 2, 1), D(2022, 1, 1), LevelOfDetail::kDay, {}}, store),
               ValidationError);
}

TEST(AggregateTest, BucketsCoverRangeContiguously) {
  Store store;
  for (auto lod : kAllLevels) {
    auto b = Aggregate({D(2019, 5, 17), D(2023, 2, 3), lod, {}}, store);
    ASSERT_FALSE(b.empty());
    EXPECT_EQ(b.front().start, BucketStart(D(2019, 5, 17), lod));
    for (size_t i = 1; i < b.size(); ++i) {
      EXPECT_EQ(b[i].start, NextBucketStart(b[i - 1].start, lod));
    }
    EXPECT_LE(b.back().start, D(2023, 2, 3));
    EXPECT_GT(NextBucketStart(b.back().start, lod), D(2023, 2, 3));
  }
}

TEST(AggregateTest, MarchFourthDominatesMarch) {
  auto store = fixtures::LoadStore();
  auto days = Aggregate({D(2022, 3, 1), D(2022, 3, 31), LevelOfDetail::kDay, {}}, *store);
  ASSERT_EQ(days.size(), 31u);
  const auto &fourth = days[3];
  EXPECT_EQ(fourth.start, D(2022, 3, 4));
  for (const auto &b : days) {
    if (b.start != fourth.start) EXPECT_LT(b.document_count, fourth.document_count);
  }
  auto month = Aggregate({D(2022, 3, 1), D(2022, 3, 31), LevelOfDetail::kMonth, {}}, *store);
  ASSERT_EQ(month.size(), 1u);
  EXPECT_GE(month[0].document_count, fourth.document_count);
}

TEST(AggregateTest, FixtureMatchesOracle) {
  auto store = fixtures::LoadStore();
  auto corpus = fixtures::GoldenCorpus();
  BoundingBox north{12.37, 51.275, 12.45, 51.29};
  std::vector<TimelineFilter> filters = {
      {}, {"Breeding Times", std::nullopt, std::nullopt},
      {std::nullopt, north, std::nullopt}, {std::nullopt, std::nullopt, "construction"},
      {"General", north, "construction"}};
  for (auto lod : {LevelOfDetail::kDay, LevelOfDetail::kMonth, LevelOfDetail::kQuarter}) {
    for (size_t i = 0; i < filters.size(); ++i) {
      SCOPED_TRACE(testing::Message() << "filter " << i << " lod " << static_cast<int>(lod));
      TimelineQuery q{D(2021, 6, 1), D(2022, 8, 15), lod, filters[i]};
      EXPECT_EQ(Aggregate(q, *store), oracle::NaiveAggregate(corpus, q));
    }
  }
}

TEST(AggregateTest, ParallelEqualsSerial) {
  std::mt19937_64 rng(4);
  auto rc = fixtures::MakeRandomCorpus(rng, 80);
  for (auto lod : kAllLevels) {
    TimelineQuery q{D(2018, 7, 1), D(2025, 3, 1), lod, {}};
    rc.store->Read([&](const Graph &g) {
      EXPECT_EQ(Aggregate(q, g), AggregateSerial(q, g));
    });
  }
}

TEST(AggregateTest, FiltersNeverIncreaseCounts) {
  std::mt19937_64 rng(8);
  auto rc = fixtures::MakeRandomCorpus(rng, 60);
  TimelineQuery base{D(2019, 1, 1), D(2024, 12, 31), LevelOfDetail::kQuarter, {}};
  auto all = Aggregate(base, *rc.store);
  std::vector<TimelineFilter> filters = {
      {"Breeding Times", std::nullopt, std::nullopt},
      {std::nullopt, BoundingBox{12.30, 51.20, 12.40, 51.25}, std::nullopt},
      {std::nullopt, std::nullopt, "mining"},
      {"General", BoundingBox{12.35, 51.22, 12.5, 51.3}, "nature_reserve"}};
  for (const auto &f : filters) {
    TimelineQuery q = base;
    q.filter = f;
    auto filtered = Aggregate(q, *rc.store);
    ASSERT_EQ(filtered.size(), all.size());
    for (size_t i = 0; i < all.size(); ++i) {
      EXPECT_LE(filtered[i].document_count, all[i].document_count);
    }
  }
}

TEST(AggregateTest, MonthBoundsFromDays) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    auto rc = fixtures::MakeRandomCorpus(rng, 40);
    TimelineQuery months{D(2020, 1, 1), D(2021, 12, 31), LevelOfDetail::kMonth, {}};
    TimelineQuery days = months;
    days.lod = LevelOfDetail::kDay;
    auto m = Aggregate(months, *rc.store);
    auto d = Aggregate(days, *rc.store);
    for (const auto &bucket : m) {
      int max = 0, sum = 0;
      for (const auto &day : d) {
        if (BucketStart(day.start, LevelOfDetail::kMonth) != bucket.start) continue;
        max = std::max(max, day.document_count);
        sum += day.document_count;
      }
      EXPECT_GE(bucket.document_count, max);
      EXPECT_LE(bucket.document_count, sum);
    }
  }
}

TEST(AggregateTest, PartialBucketsCountOnlyTheQueriedDays) {
  Store store;
  GeoPolygon p{"p", "x", {{12.4, 51.2}, {12.41, 51.2}, {12.41, 51.21}, {12.4, 51.21}}, {}};
  store.InsertPolygon(p);
  RestrictionRef ref{"d", {"Am 02.01.2022 verboten.", "d", 0},
                     {RestrictionKind::kRequirement, "General"},
                     TemporalExtent::Absolute(D(2022, 1, 2), D(2022, 1, 2))};
  std::vector<std::string> ids = {"p"};
  std::vector<RestrictionRef> refs = {ref};
  store.AttachDocument(ids, {"d", "t", "x", "", ""}, refs);
  auto b = Aggregate({D(2022, 1, 10), D(2022, 3, 31), LevelOfDetail::kYear, {}}, store);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].start, D(2022, 1, 1));
  EXPECT_EQ(b[0].document_count, 0);
}

TEST(SelectIntervalTest, BreedingBrushFindsWildpark) {
  auto store = fixtures::LoadStore();
  TimelineFilter f{"Breeding Times", fixtures::Region(), std::nullopt};
  auto docs = SelectInterval(D(2022, 3, 1), D(2022, 9, 30), f, *store);
  auto it = std::find_if(docs.begin(), docs.end(), [](const SelectedDocument &d) {
    return d.document.id == fixtures::kWildparkDocId;
  });
  ASSERT_NE(it, docs.end());
  EXPECT_NE(std::find(it->polygon_ids.begin(), it->polygon_ids.end(), fixtures::kWildparkId),
            it->polygon_ids.end());
  for (const auto &r : it->restrictions) EXPECT_EQ(r.ref.classification.topic, "Breeding Times");
}

TEST(SelectIntervalTest, EmptyDay) {
  auto store = fixtures::LoadStore();
  TimelineFilter f{"Waste Storage", std::nullopt, std::nullopt};
  EXPECT_TRUE(SelectInterval(D(2020, 1, 1), D(2020, 1, 1), f, *store).empty());
}

TEST(SelectIntervalTest, BrushEqualsUnionOfBuckets) {
  auto store = fixtures::LoadStore();
  auto corpus = fixtures::GoldenCorpus();
  TimelineFilter none;
  Date from = D(2021, 9, 15), to = D(2022, 7, 10);
  std::set<std::string> whole, parts;
  for (const auto &d : SelectInterval(from, to, none, *store)) whole.insert(d.document.id);
  for (Date b = BucketStart(from, LevelOfDetail::kMonth); b <= to;
       b = NextBucketStart(b, LevelOfDetail::kMonth)) {
    Date first = std::max(b, from);
    Date last = std::min(NextBucketStart(b, LevelOfDetail::kMonth).AddDays(-1), to);
    for (const auto &d : SelectInterval(first, last, none, *store)) parts.insert(d.document.id);
  }
  EXPECT_EQ(whole, parts);
  auto naive = oracle::NaiveSelect(corpus, from, to, none);
  EXPECT_EQ(std::vector<std::string>(whole.begin(), whole.end()), naive);
}

}  // namespace
}  // namespace restrictplan
