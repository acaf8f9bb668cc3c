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

#ifndef RESTRICTPLAN_TIMELINE_H_
#define RESTRICTPLAN_TIMELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "restrictplan/calendar.h"
#include "restrictplan/store.h"

namespace restrictplan {

// Ordered from finest to coarsest, so Decade > Year > Quarter > Month > Day.
enum class LevelOfDetail { kDay, kMonth, kQuarter, kYear, kDecade };

inline constexpr LevelOfDetail kAllLevels[] = {
    LevelOfDetail::kDecade, LevelOfDetail::kYear, LevelOfDetail::kQuarter,
    LevelOfDetail::kMonth, LevelOfDetail::kDay};

std::string_view LevelName(LevelOfDetail lod);
std::optional<LevelOfDetail> ParseLevel(std::string_view name);

// First day of the bucket containing `day`. Quarters start Jan/Apr/Jul/Oct 1;
// decades start in years divisible by 10.
Date BucketStart(Date day, LevelOfDetail lod);
Date NextBucketStart(Date bucket_start, LevelOfDetail lod);
bool IsAligned(Date day, LevelOfDetail lod);

struct DateInterval {
  Date first;
  Date last;

  bool Intersects(Date from, Date to) const { return first <= to && from <= last; }
  friend bool operator==(const DateInterval &, const DateInterval &) = default;
};

// Yearly instances of a recurring extent that intersect [from, to], taken
// from years from.year-1 through to.year+1. Instances are not clipped.
// Throws ContractViolation for non-recurring extents.
std::vector<DateInterval> ExpandRecurring(const TemporalExtent &extent,
                                          Date from, Date to);

struct TimelineFilter {
  std::optional<std::string> topic;
  std::optional<BoundingBox> bbox;
  std::optional<std::string> category;
};

struct TimelineQuery {
  Date from;
  Date to;
  LevelOfDetail lod = LevelOfDetail::kMonth;
  TimelineFilter filter;
};

struct TimelineBucket {
  Date start;
  LevelOfDetail lod = LevelOfDetail::kMonth;
  int document_count = 0;

  friend bool operator==(const TimelineBucket &, const TimelineBucket &) = default;
};

// Contiguous buckets covering [from, to]. Each counts the distinct
// documents with a dated restriction (passing the filter) whose extent
// meets the part of the bucket inside [from, to]. A document passes the
// spatial filter through any linked polygon matching both bbox and
// category. Undated restrictions never count.
std::vector<TimelineBucket> Aggregate(const TimelineQuery &query,
                                      const Store &store);
std::vector<TimelineBucket> Aggregate(const TimelineQuery &query,
                                      const Graph &graph);
// Same result through the serial counting kernel.
std::vector<TimelineBucket> AggregateSerial(const TimelineQuery &query,
                                            const Graph &graph);

struct SelectedDocument {
  Document document;
  // Linked polygons that pass the spatial filter.
  std::vector<std::string> polygon_ids;
  // Restrictions whose extent meets the brushed range.
  std::vector<StoredRestriction> restrictions;
};

// Documents with a restriction whose extent meets [from, to], ordered by id.
std::vector<SelectedDocument> SelectInterval(Date from, Date to,
                                             const TimelineFilter &filter,
                                             const Store &store);
std::vector<SelectedDocument> SelectInterval(Date from, Date to,
                                             const TimelineFilter &filter,
                                             const Graph &graph);

}  // namespace restrictplan

#endif  // RESTRICTPLAN_TIMELINE_H_
