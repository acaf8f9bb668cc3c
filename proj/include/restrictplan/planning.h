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

#ifndef RESTRICTPLAN_PLANNING_H_
#define RESTRICTPLAN_PLANNING_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "restrictplan/store.h"

namespace restrictplan {

enum class DraftKind { kArea, kPath };

std::string_view DraftKindName(DraftKind kind);
std::optional<DraftKind> ParseDraftKind(std::string_view name);

// A project drawn point by point on the map.
struct ProjectDraft {
  std::vector<GeoPoint> points;
  DraftKind kind = DraftKind::kArea;
  std::string category;
  std::string name;
  double path_width = kDefaultPathWidthMeters;
};

struct ReportDocument {
  std::string doc_id;
  std::string title;
  std::vector<StoredRestriction> refs;
};

struct ReportEntry {
  std::string polygon_id;
  std::string category;
  double overlap_area = 0;
  std::vector<ReportDocument> documents;
};

// Existing polygons the new project overlaps, by descending overlap area,
// with the restrictions it inherits from their documents.
struct OverlapReport {
  std::string new_polygon_id;
  GeoPolygon polygon;
  std::vector<ReportEntry> entries;
  std::vector<std::string> warnings;
};

// Polygon for a draft: areas use the points as ring (a closing repeat of
// the first point is dropped), paths are buffered. Throws ValidationError.
GeoPolygon DraftGeometry(const ProjectDraft &draft, std::string id);

// Validates, inserts and reports in one batch; on any failure the store is
// left unchanged.
OverlapReport CreateProject(const ProjectDraft &draft, Store &store);

struct ApplicableRestriction {
  StoredRestriction restriction;
  // Polygon whose document carries the restriction.
  std::string source_polygon_id;
  bool inherited = false;
  // Undated restrictions are always reported and flagged.
  bool undated = false;
};

struct TopicGroup {
  std::string topic;
  std::vector<ApplicableRestriction> restrictions;
};

// Restrictions on the polygon's own documents and on those of every overlap
// neighbour, grouped by topic. With `at`, dated restrictions not in force
// on that day are dropped; recurring ones compare month and day only.
std::vector<TopicGroup> ApplicableRestrictions(std::string_view polygon_id,
                                               std::optional<Date> at,
                                               const Store &store);
std::vector<TopicGroup> ApplicableRestrictions(std::string_view polygon_id,
                                               std::optional<Date> at,
                                               const Graph &graph);

}  // namespace restrictplan

#endif  // RESTRICTPLAN_PLANNING_H_
