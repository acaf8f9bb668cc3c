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

#include "restrictplan/planning.h"

#include <algorithm>
#include <map>
#include <set>

namespace restrictplan {

std::string_view DraftKindName(DraftKind kind) {
  return kind == DraftKind::kArea ? "area" : "path";
}

std::optional<DraftKind> ParseDraftKind(std::string_view name) {
  if (name == "area") return DraftKind::kArea;
  if (name == "path") return DraftKind::kPath;
  return std::nullopt;
}

GeoPolygon DraftGeometry(const ProjectDraft &draft, std::string id) {
  if (draft.category.empty()) {
    throw ValidationError(ValidationIssue::kMissingField,
                          "project category is empty");
  }
  GeoPolygon polygon;
  if (draft.kind == DraftKind::kPath) {
    polygon = BufferPath(draft.points, draft.path_width, std::move(id),
                         draft.category);
  } else {
    polygon.id = std::move(id);
    polygon.category = draft.category;
    polygon.ring = draft.points;
    if (polygon.ring.size() > 3 && polygon.ring.front() == polygon.ring.back()) {
      polygon.ring.pop_back();
    }
    Validate(polygon);
  }
  polygon.name = draft.name;
  return polygon;
}

OverlapReport CreateProject(const ProjectDraft &draft, Store &store) {
  return store.Write([&](Store::Writer &w) {
    OverlapReport report;
    GeoPolygon polygon = DraftGeometry(draft, w.FreshId("project-"));
    if (!draft.name.empty()) {
      for (const GeoPolygon *p : w.graph().Polygons()) {
        if (p->category == draft.category && p->name == draft.name) {
          report.warnings.push_back("a project named '" + draft.name +
                                    "' already exists in category '" +
                                    draft.category + "'");
          break;
        }
      }
    }
    report.new_polygon_id = w.InsertPolygon(polygon).polygon_id;
    w.Checkpoint("createProject.inserted");
    for (auto &entry : queries::Overlapping(w.graph(), report.new_polygon_id)) {
      ReportEntry e{entry.polygon.id, entry.polygon.category, entry.area, {}};
      for (auto &d : entry.documents) {
        e.documents.push_back(
            {d.document.id, d.document.title, std::move(d.restrictions)});
      }
      report.entries.push_back(std::move(e));
    }
    w.Checkpoint("createProject.report");
    report.polygon = std::move(polygon);
    return report;
  });
}

std::vector<TopicGroup> ApplicableRestrictions(std::string_view polygon_id,
                                               std::optional<Date> at,
                                               const Graph &graph) {
  if (!graph.FindPolygon(polygon_id)) {
    throw NotFoundError("unknown polygon '" + std::string(polygon_id) + "'");
  }
  // Own polygon first so a restriction reachable both ways counts as own.
  std::vector<std::string> sources{std::string(polygon_id)};
  std::vector<std::string> neighbours;
  for (const EdgeRecord *e : graph.OverlapEdges(polygon_id)) {
    neighbours.push_back(e->from == polygon_id ? e->to : e->from);
  }
  std::sort(neighbours.begin(), neighbours.end());
  sources.insert(sources.end(), neighbours.begin(), neighbours.end());

  std::set<EdgeId> seen;
  std::map<std::string, std::vector<ApplicableRestriction>> groups;
  for (const auto &source : sources) {
    for (const auto &doc_id : graph.DocumentsOf(source)) {
      for (auto &r : graph.RestrictionsOf(doc_id)) {
        if (!seen.insert(r.id).second) continue;
        bool undated = !r.ref.extent.dated();
        if (at && !undated && !r.ref.extent.Contains(*at)) continue;
        std::string topic = r.ref.classification.topic;
        groups[topic].push_back(
            {std::move(r), source, source != polygon_id, undated});
      }
    }
  }
  std::vector<TopicGroup> out;
  for (auto &[topic, list] : groups) {
    std::sort(list.begin(), list.end(),
              [](const ApplicableRestriction &a, const ApplicableRestriction &b) {
                const auto &x = a.restriction;
                const auto &y = b.restriction;
                if (x.ref.doc_id != y.ref.doc_id) return x.ref.doc_id < y.ref.doc_id;
                if (x.ref.sentence.index != y.ref.sentence.index) {
                  return x.ref.sentence.index < y.ref.sentence.index;
                }
                return x.id < y.id;
              });
    out.push_back({topic, std::move(list)});
  }
  return out;
}

std::vector<TopicGroup> ApplicableRestrictions(std::string_view polygon_id,
                                               std::optional<Date> at,
                                               const Store &store) {
  return store.Read([&](const Graph &g) {
    return ApplicableRestrictions(polygon_id, at, g);
  });
}

}  // namespace restrictplan
