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

#include "restrictplan/kernels.h"

namespace restrictplan {

namespace {

void CheckRange(Date from, Date to) {
  if (to < from) {
    throw ValidationError(ValidationIssue::kInvalidDate,
                          "range start " + from.ToIso() + " after end " +
                              to.ToIso());
  }
}

bool PolygonPasses(const GeoPolygon &p, const TimelineFilter &filter) {
  if (filter.category && p.category != *filter.category) return false;
  if (filter.bbox && !IntersectsBox(p, *filter.bbox)) return false;
  return true;
}

bool Spatial(const TimelineFilter &filter) {
  return filter.bbox.has_value() || filter.category.has_value();
}

// Linked polygons passing the filter; nullopt when the document fails it.
std::optional<std::vector<std::string>> PassingPolygons(
    const Graph &graph, std::string_view doc_id, const TimelineFilter &filter) {
  std::vector<std::string> out;
  for (auto &pid : graph.PolygonsOf(doc_id)) {
    if (PolygonPasses(*graph.FindPolygon(pid), filter)) out.push_back(std::move(pid));
  }
  if (Spatial(filter) && out.empty()) return std::nullopt;
  return out;
}

std::vector<DateInterval> Intervals(const TemporalExtent &extent, Date from,
                                    Date to) {
  switch (extent.form()) {
    case TemporalExtent::Form::kAbsolute:
      return {{extent.start(), extent.end()}};
    case TemporalExtent::Form::kRecurring:
      return ExpandRecurring(extent, from, to);
    case TemporalExtent::Form::kUndated:
      break;
  }
  return {};
}

// Day ranges per document that pass the filter, for [from, to].
std::vector<std::vector<kernels::DayRange>> CollectDocuments(
    const TimelineQuery &q, const Graph &graph) {
  std::vector<std::vector<kernels::DayRange>> out;
  for (const auto &[id, node] : graph.nodes()) {
    if (node.kind != NodeKind::kDocument) continue;
    if (!PassingPolygons(graph, id, q.filter)) continue;
    std::vector<kernels::DayRange> ranges;
    for (const auto &r : graph.RestrictionsOf(id)) {
      if (q.filter.topic && r.ref.classification.topic != *q.filter.topic) continue;
      for (const auto &iv : Intervals(r.ref.extent, q.from, q.to)) {
        ranges.push_back({iv.first.serial(), iv.last.serial()});
      }
    }
    if (!ranges.empty()) out.push_back(std::move(ranges));
  }
  return out;
}

std::vector<kernels::DayRange> BucketRanges(const TimelineQuery &q,
                                            std::vector<Date> *starts) {
  std::vector<kernels::DayRange> out;
  for (Date s = BucketStart(q.from, q.lod); s <= q.to; s = NextBucketStart(s, q.lod)) {
    Date last = NextBucketStart(s, q.lod).AddDays(-1);
    Date lo = s < q.from ? q.from : s;
    Date hi = last > q.to ? q.to : last;
    starts->push_back(s);
    out.push_back({lo.serial(), hi.serial()});
  }
  return out;
}

template <class Kernel>
std::vector<TimelineBucket> AggregateWith(const TimelineQuery &q,
                                          const Graph &graph, Kernel kernel) {
  CheckRange(q.from, q.to);
  std::vector<Date> starts;
  auto buckets = BucketRanges(q, &starts);
  auto docs = CollectDocuments(q, graph);
  auto counts = kernel(std::span<const kernels::DayRange>(buckets),
                       std::span<const std::vector<kernels::DayRange>>(docs));
  std::vector<TimelineBucket> out;
  out.reserve(starts.size());
  for (size_t i = 0; i < starts.size(); ++i) {
    out.push_back({starts[i], q.lod, counts[i]});
  }
  return out;
}

}  // namespace

std::string_view LevelName(LevelOfDetail lod) {
  switch (lod) {
    case LevelOfDetail::kDay: return "day";
    case LevelOfDetail::kMonth: return "month";
    case LevelOfDetail::kQuarter: return "quarter";
    case LevelOfDetail::kYear: return "year";
    case LevelOfDetail::kDecade: return "decade";
  }
  return "month";
}

std::optional<LevelOfDetail> ParseLevel(std::string_view name) {
  for (LevelOfDetail lod : kAllLevels) {
    if (LevelName(lod) == name) return lod;
  }
  return std::nullopt;
}

Date BucketStart(Date day, LevelOfDetail lod) {
  switch (lod) {
    case LevelOfDetail::kDay:
      return day;
    case LevelOfDetail::kMonth:
      return Date::Civil(day.year(), day.month(), 1);
    case LevelOfDetail::kQuarter:
      return Date::Civil(day.year(), (day.month() - 1) / 3 * 3 + 1, 1);
    case LevelOfDetail::kYear:
      return Date::Civil(day.year(), 1, 1);
    case LevelOfDetail::kDecade: {
      int y = day.year();
      int decade = y - ((y % 10) + 10) % 10;
      return Date::Civil(decade, 1, 1);
    }
  }
  return day;
}

Date NextBucketStart(Date bucket_start, LevelOfDetail lod) {
  int y = bucket_start.year();
  unsigned m = bucket_start.month();
  switch (lod) {
    case LevelOfDetail::kDay:
      return bucket_start.AddDays(1);
    case LevelOfDetail::kMonth:
      return m == 12 ? Date::Civil(y + 1, 1, 1) : Date::Civil(y, m + 1, 1);
    case LevelOfDetail::kQuarter:
      return m >= 10 ? Date::Civil(y + 1, 1, 1) : Date::Civil(y, m + 3, 1);
    case LevelOfDetail::kYear:
      return Date::Civil(y + 1, 1, 1);
    case LevelOfDetail::kDecade:
      return Date::Civil(y + 10, 1, 1);
  }
  return bucket_start.AddDays(1);
}

bool IsAligned(Date day, LevelOfDetail lod) { return BucketStart(day, lod) == day; }

std::vector<DateInterval> ExpandRecurring(const TemporalExtent &extent,
                                          Date from, Date to) {
  if (extent.form() != TemporalExtent::Form::kRecurring) {
    throw ContractViolation("ExpandRecurring needs a recurring extent");
  }
  std::vector<DateInterval> out;
  for (int y = from.year() - 1; y <= to.year() + 1; ++y) {
    Date first = ResolveMonthDay(extent.recur_start(), y, false);
    Date last = ResolveMonthDay(extent.recur_end(), extent.wraps() ? y + 1 : y, true);
    if (last < first) continue;  // Feb 29 only, outside leap years
    DateInterval iv{first, last};
    if (iv.Intersects(from, to)) out.push_back(iv);
  }
  return out;
}

std::vector<TimelineBucket> Aggregate(const TimelineQuery &query,
                                      const Graph &graph) {
  return AggregateWith(query, graph, [](auto b, auto d) {
    return kernels::CountDocumentsPerBucket(b, d);
  });
}

std::vector<TimelineBucket> AggregateSerial(const TimelineQuery &query,
                                            const Graph &graph) {
  return AggregateWith(query, graph, [](auto b, auto d) {
    return kernels::CountDocumentsPerBucketSerial(b, d);
  });
}

std::vector<TimelineBucket> Aggregate(const TimelineQuery &query,
                                      const Store &store) {
  return store.Read([&](const Graph &g) { return Aggregate(query, g); });
}

std::vector<SelectedDocument> SelectInterval(Date from, Date to,
                                             const TimelineFilter &filter,
                                             const Graph &graph) {
  CheckRange(from, to);
  std::vector<SelectedDocument> out;
  for (const auto &[id, node] : graph.nodes()) {
    if (node.kind != NodeKind::kDocument) continue;
    auto polygons = PassingPolygons(graph, id, filter);
    if (!polygons) continue;
    std::vector<StoredRestriction> hits;
    for (auto &r : graph.RestrictionsOf(id)) {
      if (filter.topic && r.ref.classification.topic != *filter.topic) continue;
      bool meets = false;
      for (const auto &iv : Intervals(r.ref.extent, from, to)) {
        meets = meets || iv.Intersects(from, to);
      }
      if (meets) hits.push_back(std::move(r));
    }
    if (hits.empty()) continue;
    out.push_back({std::get<Document>(node.payload), std::move(*polygons),
                   std::move(hits)});
  }
  return out;
}

std::vector<SelectedDocument> SelectInterval(Date from, Date to,
                                             const TimelineFilter &filter,
                                             const Store &store) {
  return store.Read(
      [&](const Graph &g) { return SelectInterval(from, to, filter, g); });
}

}  // namespace restrictplan
