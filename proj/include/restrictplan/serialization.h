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

#ifndef RESTRICTPLAN_SERIALIZATION_H_
#define RESTRICTPLAN_SERIALIZATION_H_

#include <string_view>

#include "json.hpp"
#include "restrictplan/extraction.h"
#include "restrictplan/geometry.h"
#include "restrictplan/graph.h"

namespace restrictplan {

using Json = nlohmann::json;

// {"id": ..., "category": ..., "ring": [[lon, lat], ...]}; "name" only when
// set. Malformed input throws ParseError; geometry is not validated here.
Json ToJson(const GeoPolygon &polygon);
GeoPolygon PolygonFromJson(const Json &j);

std::vector<GeoPoint> PointsFromJson(const Json &j);

// "minLon,minLat,maxLon,maxLat".
BoundingBox ParseBox(std::string_view text);
Json ToJson(const BoundingBox &box);

Json ToJson(const TemporalExtent &extent);
TemporalExtent ExtentFromJson(const Json &j);

Json ToJson(const RestrictionRef &ref);
RestrictionRef RefFromJson(const Json &j);

// Ref JSON plus "id".
Json ToJson(const StoredRestriction &restriction);

Json ToJson(const ParseWarning &warning);

// Document metadata; the text is included only on request.
Json ToJson(const Document &doc, bool with_text = false);
Document DocumentFromJson(const Json &j);

// Rounds to two decimal places for reporting areas.
double RoundArea(double square_meters);

// Parses JSON text, mapping syntax errors to ParseError.
Json ParseJson(std::string_view text);

}  // namespace restrictplan

#endif  // RESTRICTPLAN_SERIALIZATION_H_
