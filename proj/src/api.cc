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

#include "restrictplan/api.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <vector>

#include "restrictplan/planning.h"
#include "restrictplan/serialization.h"
#include "restrictplan/timeline.h"

namespace restrictplan {

namespace {

ApiResponse JsonResponse(int status, const Json &body) {
  return {status, body.dump(), "application/json"};
}

std::vector<std::string> SplitPath(std::string_view path) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < path.size()) {
    size_t slash = path.find('/', pos);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > pos) out.emplace_back(path.substr(pos, slash - pos));
    pos = slash + 1;
  }
  return out;
}

const std::string *Param(const ApiRequest &req, const std::string &key) {
  auto it = req.query.find(key);
  if (it == req.query.end() || it->second.empty()) return nullptr;
  return &it->second;
}

Date DateParam(const ApiRequest &req, const std::string &key) {
  const std::string *v = Param(req, key);
  if (!v) {
    throw ValidationError(ValidationIssue::kMissingField,
                          "query parameter '" + key + "' is required");
  }
  auto d = Date::ParseIso(*v);
  if (!d) throw ParseError("'" + key + "' must be YYYY-MM-DD, got '" + *v + "'");
  return *d;
}

std::optional<std::string> OptionalParam(const ApiRequest &req,
                                         const std::string &key) {
  const std::string *v = Param(req, key);
  if (!v) return std::nullopt;
  return *v;
}

std::optional<BoundingBox> BoxParam(const ApiRequest &req) {
  const std::string *v = Param(req, "bbox");
  if (!v) return std::nullopt;
  return ParseBox(*v);
}

TimelineFilter FilterParams(const ApiRequest &req) {
  return {OptionalParam(req, "class"), BoxParam(req), OptionalParam(req, "category")};
}

Json Restrictions(const std::vector<StoredRestriction> &list) {
  Json out = Json::array();
  for (const auto &r : list) out.push_back(ToJson(r));
  return out;
}

const Json &BodyField(const Json &body, const char *key) {
  if (!body.is_object() || !body.contains(key)) {
    throw ValidationError(ValidationIssue::kMissingField,
                          std::string("body field '") + key + "' is required");
  }
  return body.at(key);
}

// --- Handlers --------------------------------------------------------------

ApiResponse Classes(const Store &store, const RuleTable &rules) {
  std::map<std::string, std::pair<size_t, bool>> classes;
  for (const auto &name : rules.Registry()) classes[name] = {0, true};
  store.Read([&](const Graph &g) {
    for (const auto &name : g.ClassNames()) {
      classes[name].first = g.RestrictionsOfClass(name).size();
    }
  });
  Json list = Json::array();
  for (const auto &[name, info] : classes) {
    list.push_back({{"name", name},
                    {"restrictionCount", info.first},
                    {"registered", info.second}});
  }
  return JsonResponse(200, {{"classes", list}});
}

ApiResponse PostPolygon(Store &store, const ApiRequest &req) {
  GeoPolygon polygon = PolygonFromJson(ParseJson(req.body));
  InsertResult result = store.InsertPolygon(polygon);
  Json overlaps = Json::array();
  for (const auto &o : result.overlaps) {
    overlaps.push_back({{"polygonId", o.polygon_id},
                        {"area", RoundArea(o.area)},
                        {"edgeId", o.edge_id}});
  }
  return JsonResponse(201, {{"id", result.polygon_id}, {"overlaps", overlaps}});
}

ApiResponse GetPolygons(const Store &store, const ApiRequest &req) {
  BoundingBox box = BoxParam(req).value_or(BoundingBox::World());
  Json list = Json::array();
  for (const auto &p : store.QueryViewport(box, OptionalParam(req, "category"))) {
    list.push_back(ToJson(p));
  }
  return JsonResponse(200, {{"polygons", list}});
}

ApiResponse GetOverlaps(const Store &store, const std::string &id) {
  Json list = Json::array();
  for (const auto &entry : store.QueryOverlapping(id)) {
    Json docs = Json::array();
    for (const auto &d : entry.documents) {
      docs.push_back({{"id", d.document.id},
                      {"title", d.document.title},
                      {"restrictions", Restrictions(d.restrictions)}});
    }
    list.push_back({{"polygon", ToJson(entry.polygon)},
                    {"area", RoundArea(entry.area)},
                    {"documents", docs}});
  }
  return JsonResponse(200, {{"polygonId", id}, {"overlaps", list}});
}

ApiResponse GetApplicable(const Store &store, const std::string &id,
                          const ApiRequest &req) {
  std::optional<Date> at;
  if (Param(req, "at")) at = DateParam(req, "at");
  Json topics = Json::array();
  for (const auto &group : ApplicableRestrictions(id, at, store)) {
    Json list = Json::array();
    for (const auto &a : group.restrictions) {
      Json j = ToJson(a.restriction);
      j["sourcePolygonId"] = a.source_polygon_id;
      j["inherited"] = a.inherited;
      j["undated"] = a.undated;
      list.push_back(std::move(j));
    }
    topics.push_back({{"topic", group.topic}, {"restrictions", list}});
  }
  return JsonResponse(200, {{"polygonId", id},
                            {"at", at ? Json(at->ToIso()) : Json(nullptr)},
                            {"topics", topics}});
}

ApiResponse PostDocument(Store &store, const RuleTable &rules,
                         const ApiRequest &req) {
  Json body = ParseJson(req.body);
  const Json &ids = BodyField(body, "polygonIds");
  if (!ids.is_array()) throw ParseError("polygonIds must be an array");
  std::vector<std::string> polygon_ids;
  for (const auto &v : ids) {
    if (!v.is_string()) throw ParseError("polygonIds must hold strings");
    polygon_ids.push_back(v.get<std::string>());
  }
  Document doc;
  const Json &text = BodyField(body, "text");
  if (!text.is_string()) throw ParseError("text must be a string");
  doc.text = text.get<std::string>();
  if (body.contains("title") && body["title"].is_string()) doc.title = body["title"];
  if (body.contains("id") && body["id"].is_string()) doc.id = body["id"];
  if (body.contains("sourcePath") && body["sourcePath"].is_string()) {
    doc.source_path = body["sourcePath"];
  }

  return store.Write([&](Store::Writer &w) {
    if (doc.id.empty()) doc.id = w.FreshId("doc-");
    Extraction extraction = ExtractDocument(doc.id, doc.text, rules);
    std::string id = w.AttachDocument(polygon_ids, doc, extraction.refs);
    Json warnings = Json::array();
    for (const auto &warning : extraction.warnings) warnings.push_back(ToJson(warning));
    return JsonResponse(201, {{"documentId", id},
                              {"restrictions", Restrictions(w.graph().RestrictionsOf(id))},
                              {"warnings", warnings}});
  });
}

ApiResponse PatchRestriction(Store &store, const std::string &id_text,
                             const ApiRequest &req) {
  EdgeId id = 0;
  auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
  if (ec != std::errc() || ptr != id_text.data() + id_text.size()) {
    throw NotFoundError("unknown restriction '" + id_text + "'");
  }
  Json body = ParseJson(req.body);
  TemporalExtent extent = ExtentFromJson(BodyField(body, "extent"));
  return JsonResponse(200, ToJson(store.UpdateRestrictionExtent(id, extent)));
}

ApiResponse PostProject(Store &store, const ApiRequest &req) {
  Json body = ParseJson(req.body);
  ProjectDraft draft;
  draft.points = PointsFromJson(BodyField(body, "points"));
  const Json &kind = BodyField(body, "kind");
  auto k = kind.is_string() ? ParseDraftKind(kind.get<std::string>()) : std::nullopt;
  if (!k) throw ParseError("kind must be \"area\" or \"path\"");
  draft.kind = *k;
  const Json &category = BodyField(body, "category");
  if (!category.is_string()) throw ParseError("category must be a string");
  draft.category = category.get<std::string>();
  if (body.contains("name") && body["name"].is_string()) draft.name = body["name"];
  if (body.contains("width")) {
    if (!body["width"].is_number()) throw ParseError("width must be a number");
    draft.path_width = body["width"].get<double>();
  }
  if (draft.kind == DraftKind::kArea && draft.points.size() < 3) {
    throw ValidationError(ValidationIssue::kTooFewVertices,
                          "an area needs at least 3 points");
  }

  OverlapReport report = CreateProject(draft, store);
  Json entries = Json::array();
  for (const auto &e : report.entries) {
    Json docs = Json::array();
    for (const auto &d : e.documents) {
      docs.push_back({{"docId", d.doc_id},
                      {"title", d.title},
                      {"refs", Restrictions(d.refs)}});
    }
    entries.push_back({{"polygonId", e.polygon_id},
                       {"category", e.category},
                       {"overlapArea", RoundArea(e.overlap_area)},
                       {"documents", docs}});
  }
  return JsonResponse(201, {{"newPolygonId", report.new_polygon_id},
                            {"polygon", ToJson(report.polygon)},
                            {"entries", entries},
                            {"warnings", report.warnings}});
}

ApiResponse GetTimeline(const Store &store, const ApiRequest &req) {
  TimelineQuery q;
  q.from = DateParam(req, "from");
  q.to = DateParam(req, "to");
  if (const std::string *lod = Param(req, "lod")) {
    auto level = ParseLevel(*lod);
    if (!level) throw ParseError("unknown lod '" + *lod + "'");
    q.lod = *level;
  }
  q.filter = FilterParams(req);
  Json buckets = Json::array();
  for (const auto &b : Aggregate(q, store)) {
    buckets.push_back({{"start", b.start.ToIso()}, {"count", b.document_count}});
  }
  return JsonResponse(200, {{"lod", LevelName(q.lod)},
                            {"from", q.from.ToIso()},
                            {"to", q.to.ToIso()},
                            {"buckets", buckets}});
}

ApiResponse GetSelection(const Store &store, const ApiRequest &req) {
  Date from = DateParam(req, "from");
  Date to = DateParam(req, "to");
  Json docs = Json::array();
  for (const auto &d : SelectInterval(from, to, FilterParams(req), store)) {
    docs.push_back({{"id", d.document.id},
                    {"title", d.document.title},
                    {"polygonIds", d.polygon_ids},
                    {"restrictions", Restrictions(d.restrictions)}});
  }
  return JsonResponse(200, {{"from", from.ToIso()}, {"to", to.ToIso()},
                            {"documents", docs}});
}

}  // namespace

ApiResponse ErrorResponse(int status, std::string_view code,
                          const std::string &message) {
  return JsonResponse(status,
                      {{"status", status}, {"code", code}, {"message", message}});
}

ApiService::ApiService(Store &store, RuleTable rules)
    : store_(store), rules_(std::move(rules)) {}

ApiResponse ApiService::Handle(const ApiRequest &req) const {
  try {
    auto parts = SplitPath(req.path);
    const std::string &m = req.method;
    if (parts.size() < 2 || parts[0] != "api") {
      return ErrorResponse(404, "not_found", "no route for " + req.path);
    }
    const std::string &resource = parts[1];
    const size_t n = parts.size();
    if (resource == "classes" && n == 2 && m == "GET") {
      return Classes(store_, rules_);
    }
    if (resource == "polygons") {
      if (n == 2 && m == "POST") return PostPolygon(store_, req);
      if (n == 2 && m == "GET") return GetPolygons(store_, req);
      if (n == 4 && m == "GET" && parts[3] == "overlaps") {
        return GetOverlaps(store_, parts[2]);
      }
      if (n == 4 && m == "GET" && parts[3] == "restrictions") {
        return GetApplicable(store_, parts[2], req);
      }
    }
    if (resource == "documents" && n == 2 && m == "POST") {
      return PostDocument(store_, rules_, req);
    }
    if (resource == "restrictions" && n == 3 && m == "PATCH") {
      return PatchRestriction(store_, parts[2], req);
    }
    if (resource == "projects" && n == 2 && m == "POST") {
      return PostProject(store_, req);
    }
    if (resource == "timeline" && m == "GET") {
      if (n == 2) return GetTimeline(store_, req);
      if (n == 3 && parts[2] == "select") return GetSelection(store_, req);
    }
    return ErrorResponse(404, "not_found", "no route for " + m + " " + req.path);
  } catch (const Error &e) {
    return ErrorResponse(HttpStatusFor(e.code()), ErrorCodeName(e.code()), e.what());
  } catch (const Json::exception &e) {
    return ErrorResponse(400, "parse", e.what());
  } catch (const std::exception &e) {
    return ErrorResponse(500, "io", e.what());
  }
}

}  // namespace restrictplan
