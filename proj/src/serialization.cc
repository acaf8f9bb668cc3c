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

#include "restrictplan/serialization.h"

#include <charconv>
#include <cmath>
#include <string>

namespace restrictplan {

namespace {

const Json &Field(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string StringField(const Json &j, const char *key) {
  const Json &v = Field(j, key);
  if (!v.is_string()) {
    throw ParseError(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::string OptionalString(const Json &j, const char *key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  if (!j.at(key).is_string()) {
    throw ParseError(std::string("field '") + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

Date DateField(const Json &j, const char *key) {
  std::string s = StringField(j, key);
  auto d = Date::ParseIso(s);
  if (!d) throw ParseError("invalid date '" + s + "'");
  return *d;
}

MonthDay MonthDayField(const Json &j, const char *key) {
  std::string s = StringField(j, key);
  auto md = MonthDay::ParseIso(s);
  if (!md) throw ParseError("invalid month-day '" + s + "'");
  return *md;
}

}  // namespace

Json ToJson(const GeoPolygon &polygon) {
  Json ring = Json::array();
  for (const auto &p : polygon.ring) ring.push_back({p.lon, p.lat});
  Json j = {{"id", polygon.id}, {"category", polygon.category}, {"ring", ring}};
  if (!polygon.name.empty()) j["name"] = polygon.name;
  return j;
}

std::vector<GeoPoint> PointsFromJson(const Json &j) {
  if (!j.is_array()) throw ParseError("coordinates must be an array");
  std::vector<GeoPoint> out;
  out.reserve(j.size());
  for (const auto &p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      throw ParseError("each coordinate must be [lon, lat]");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

GeoPolygon PolygonFromJson(const Json &j) {
  GeoPolygon out;
  out.id = StringField(j, "id");
  out.category = StringField(j, "category");
  out.ring = PointsFromJson(Field(j, "ring"));
  out.name = OptionalString(j, "name");
  return out;
}

BoundingBox ParseBox(std::string_view text) {
  double v[4];
  size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    size_t comma = text.find(',', pos);
    if ((i < 3) != (comma != std::string_view::npos)) {
      throw ParseError("bbox must be minLon,minLat,maxLon,maxLat");
    }
    std::string part(text.substr(pos, comma == std::string_view::npos
                                          ? std::string_view::npos
                                          : comma - pos));
    size_t used = 0;
    try {
      v[i] = std::stod(part, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != part.size()) {
      throw ParseError("bbox component '" + part + "' is not a number");
    }
    pos = comma + 1;
  }
  BoundingBox box{v[0], v[1], v[2], v[3]};
  ValidateBox(box);
  return box;
}

Json ToJson(const BoundingBox &box) {
  return Json::array({box.min_lon, box.min_lat, box.max_lon, box.max_lat});
}

Json ToJson(const TemporalExtent &extent) {
  Json j = {{"form", ExtentFormName(extent.form())}};
  switch (extent.form()) {
    case TemporalExtent::Form::kAbsolute:
      j["start"] = extent.start().ToIso();
      j["end"] = extent.end().ToIso();
      break;
    case TemporalExtent::Form::kRecurring:
      j["start"] = extent.recur_start().ToIso();
      j["end"] = extent.recur_end().ToIso();
      break;
    case TemporalExtent::Form::kUndated:
      break;
  }
  return j;
}

TemporalExtent ExtentFromJson(const Json &j) {
  std::string form = StringField(j, "form");
  if (form == "absolute") {
    return TemporalExtent::Absolute(DateField(j, "start"), DateField(j, "end"));
  }
  if (form == "recurring") {
    return TemporalExtent::Recurring(MonthDayField(j, "start"),
                                     MonthDayField(j, "end"));
  }
  if (form == "undated") return TemporalExtent::Undated();
  throw ParseError("unknown extent form '" + form + "'");
}

Json ToJson(const RestrictionRef &ref) {
  return {{"docId", ref.doc_id},
          {"sentenceIndex", ref.sentence.index},
          {"sentence", ref.sentence.text},
          {"kind", RestrictionKindName(ref.classification.kind)},
          {"topic", ref.classification.topic},
          {"extent", ToJson(ref.extent)}};
}

RestrictionRef RefFromJson(const Json &j) {
  RestrictionRef ref;
  ref.doc_id = StringField(j, "docId");
  const Json &index = Field(j, "sentenceIndex");
  if (!index.is_number_integer()) throw ParseError("sentenceIndex must be an integer");
  ref.sentence = {StringField(j, "sentence"), ref.doc_id, index.get<int>()};
  std::string kind = StringField(j, "kind");
  auto k = ParseRestrictionKind(kind);
  if (!k) throw ParseError("unknown restriction kind '" + kind + "'");
  ref.classification = {*k, StringField(j, "topic")};
  ref.extent = ExtentFromJson(Field(j, "extent"));
  return ref;
}

Json ToJson(const StoredRestriction &restriction) {
  Json j = ToJson(restriction.ref);
  j["id"] = restriction.id;
  return j;
}

Json ToJson(const ParseWarning &warning) {
  return {{"docId", warning.doc_id},
          {"sentenceIndex", warning.sentence_index},
          {"message", warning.message}};
}

Json ToJson(const Document &doc, bool with_text) {
  Json j = {{"id", doc.id},
            {"title", doc.title},
            {"sourcePath", doc.source_path},
            {"ingestedAt", doc.ingested_at}};
  if (with_text) j["text"] = doc.text;
  return j;
}

Document DocumentFromJson(const Json &j) {
  Document doc;
  doc.id = StringField(j, "id");
  doc.title = OptionalString(j, "title");
  doc.text = StringField(j, "text");
  doc.source_path = OptionalString(j, "sourcePath");
  doc.ingested_at = OptionalString(j, "ingestedAt");
  return doc;
}

double RoundArea(double square_meters) {
  return std::round(square_meters * 100.0) / 100.0;
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace restrictplan
