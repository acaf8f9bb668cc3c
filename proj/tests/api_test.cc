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

#include <gtest/gtest.h>

#include "restrictplan/serialization.h"
#include "support/fixtures.h"

namespace restrictplan {
namespace {

class ApiTest : public ::testing::Test {
 protected:
  ApiTest() : store_(fixtures::LoadStore()), api_(*store_, fixtures::Rules()) {}

  ApiResponse Call(std::string method, std::string path,
                   std::map<std::string, std::string> query = {}, std::string body = {}) {
    return api_.Handle({std::move(method), std::move(path), std::move(query), std::move(body)});
  }

  Json Ok(ApiResponse r, int status = 200) {
    EXPECT_EQ(r.status, status) << r.body;
    EXPECT_EQ(r.content_type, "application/json");
    return Json::parse(r.body);
  }

  void ExpectError(const ApiResponse &r, int status, const std::string &code) {
    EXPECT_EQ(r.status, status) << r.body;
    Json j = Json::parse(r.body);
    EXPECT_EQ(j["status"], status);
    EXPECT_EQ(j["code"], code);
    EXPECT_TRUE(j["message"].is_string());
  }

  std::unique_ptr<Store> store_;
  ApiService api_;
};

TEST_F(ApiTest, Classes) {
  Json j = Ok(Call("GET", "/api/classes"));
  ASSERT_EQ(j["classes"].size(), 6u);
  for (const auto &c : j["classes"]) {
    if (c["name"] == "Breeding Times") EXPECT_EQ(c["restrictionCount"], 4);
    EXPECT_TRUE(c["registered"].get<bool>());
  }
}

TEST_F(ApiTest, InsertPolygon) {
  Json body = {{"id", "new-1"}, {"category", "construction"},
               {"ring", {{12.395, 51.279}, {12.40, 51.279}, {12.40, 51.281}, {12.395, 51.281}}}};
  Json j = Ok(Call("POST", "/api/polygons", {}, body.dump()), 201);
  EXPECT_EQ(j["id"], "new-1");
  ASSERT_EQ(j["overlaps"].size(), 1u);
  EXPECT_EQ(j["overlaps"][0]["polygonId"], fixtures::kReserveId);
  double area = j["overlaps"][0]["area"];
  EXPECT_EQ(area, RoundArea(area));
  ExpectError(Call("POST", "/api/polygons", {}, body.dump()), 409, "conflict");
  body["id"] = "new-2";
  body["ring"] = {{12.395, 51.279}, {12.40, 51.279}};
  ExpectError(Call("POST", "/api/polygons", {}, body.dump()), 400, "validation");
  ExpectError(Call("POST", "/api/polygons", {}, "{not json"), 400, "parse");
  ExpectError(Call("POST", "/api/polygons", {}, R"({"id": "x"})"), 400, "parse");
}

TEST_F(ApiTest, Viewport) {
  Json all = Ok(Call("GET", "/api/polygons"));
  EXPECT_EQ(all["polygons"].size(), 30u);
  Json some = Ok(Call("GET", "/api/polygons",
                      {{"bbox", "12.38,51.275,12.41,51.285"}, {"category", "nature_reserve"}}));
  ASSERT_EQ(some["polygons"].size(), 1u);
  EXPECT_EQ(some["polygons"][0]["id"], fixtures::kReserveId);
  ExpectError(Call("GET", "/api/polygons", {{"bbox", "1,2,3"}}), 400, "parse");
  ExpectError(Call("GET", "/api/polygons", {{"bbox", "3,2,1,4"}}), 400, "validation");
}

TEST_F(ApiTest, Overlaps) {
  Json j = Ok(Call("GET", "/api/polygons/nsg-nordufer/overlaps"));
  EXPECT_EQ(j["polygonId"], fixtures::kReserveId);
  EXPECT_FALSE(j["overlaps"].empty());
  ExpectError(Call("GET", "/api/polygons/unknown/overlaps"), 404, "not_found");
}

TEST_F(ApiTest, ApplicableRestrictions) {
  Json summer = Ok(Call("GET", "/api/polygons/wildpark-ost/restrictions", {{"at", "2022-07-15"}}));
  EXPECT_EQ(summer["at"], "2022-07-15");
  bool breeding = false;
  for (const auto &t : summer["topics"]) breeding |= t["topic"] == "Breeding Times";
  EXPECT_TRUE(breeding);
  Json winter = Ok(Call("GET", "/api/polygons/wildpark-ost/restrictions", {{"at", "2022-12-01"}}));
  for (const auto &t : winter["topics"]) {
    EXPECT_NE(t["topic"], "Breeding Times");
    for (const auto &r : t["restrictions"]) EXPECT_TRUE(r["undated"].get<bool>());
  }
  Json any = Ok(Call("GET", "/api/polygons/wildpark-ost/restrictions"));
  EXPECT_TRUE(any["at"].is_null());
  ExpectError(Call("GET", "/api/polygons/wildpark-ost/restrictions", {{"at", "15.07.2022"}}),
              400, "parse");
  ExpectError(Call("GET", "/api/polygons/nope/restrictions"), 404, "not_found");
}

TEST_F(ApiTest, AttachDocumentAndPatchRestriction) {
  Json body = {{"polygonIds", {"hafen"}},
               {"title", "Hafenordnung"},
               {"text", "Das Baden im Hafen ist verboten. Ab 01.06.2023 bis 31.08.2023 ist das "
                        "Ankern untersagt."}};
  Json j = Ok(Call("POST", "/api/documents", {}, body.dump()), 201);
  std::string id = j["documentId"];
  EXPECT_EQ(id.rfind("doc-", 0), 0u);
  ASSERT_EQ(j["restrictions"].size(), 2u);
  EXPECT_EQ(j["restrictions"][0]["extent"]["form"], "undated");
  EXPECT_EQ(j["restrictions"][1]["extent"]["start"], "2023-06-01");
  EXPECT_TRUE(j["warnings"].empty());

  std::string rid = std::to_string(j["restrictions"][0]["id"].get<long>());
  Json patch = {{"extent", {{"form", "recurring"}, {"start", "--05-01"}, {"end", "--09-15"}}}};
  Json updated = Ok(Call("PATCH", "/api/restrictions/" + rid, {}, patch.dump()));
  EXPECT_EQ(updated["extent"]["start"], "--05-01");
  ExpectError(Call("PATCH", "/api/restrictions/999999", {}, patch.dump()), 404, "not_found");
  ExpectError(Call("PATCH", "/api/restrictions/abc", {}, patch.dump()), 404, "not_found");
  Json bad = {{"extent", {{"form", "absolute"}, {"start", "2023-02-01"}, {"end", "2023-01-01"}}}};
  ExpectError(Call("PATCH", "/api/restrictions/" + rid, {}, bad.dump()), 400, "validation");

  body["id"] = id;
  ExpectError(Call("POST", "/api/documents", {}, body.dump()), 409, "conflict");
  body["id"] = "other";
  body["polygonIds"] = {"nope"};
  ExpectError(Call("POST", "/api/documents", {}, body.dump()), 404, "not_found");
  ExpectError(Call("POST", "/api/documents", {}, R"({"title": "x"})"), 400, "validation");
}

TEST_F(ApiTest, ProjectReport) {
  Json path = fixtures::ReadJson(fixtures::Dir() / "bicycle_path.json");
  Json j = Ok(Call("POST", "/api/projects", {}, path.dump()), 201);
  bool reserve = false;
  for (const auto &e : j["entries"]) {
    if (e["polygonId"] != fixtures::kReserveId) continue;
    reserve = true;
    int breeding = 0;
    for (const auto &d : e["documents"]) {
      for (const auto &r : d["refs"]) {
        if (r["topic"] == "Breeding Times" && r["extent"]["form"] == "recurring" &&
            r["extent"]["start"] == "--03-01" && r["extent"]["end"] == "--09-30") {
          ++breeding;
        }
      }
    }
    EXPECT_GE(breeding, 2);
  }
  EXPECT_TRUE(reserve);

  Json two = {{"kind", "area"}, {"category", "x"}, {"points", {{12.4, 51.2}, {12.41, 51.2}}}};
  ExpectError(Call("POST", "/api/projects", {}, two.dump()), 400, "validation");
  Json kind = {{"kind", "circle"}, {"category", "x"}, {"points", {{12.4, 51.2}, {12.41, 51.2}}}};
  ExpectError(Call("POST", "/api/projects", {}, kind.dump()), 400, "parse");
  auto before = store_->Counts();
  Json zero = {{"kind", "path"}, {"category", "x"}, {"width", 0},
               {"points", {{12.4, 51.2}, {12.41, 51.2}}}};
  ExpectError(Call("POST", "/api/projects", {}, zero.dump()), 400, "validation");
  EXPECT_EQ(store_->Counts(), before);
}

TEST_F(ApiTest, TimelinePeaksInBreedingSeason) {
  BoundingBox r = fixtures::Region();
  std::string bbox = std::to_string(r.min_lon) + "," + std::to_string(r.min_lat) + "," +
                     std::to_string(r.max_lon) + "," + std::to_string(r.max_lat);
  Json j = Ok(Call("GET", "/api/timeline",
                   {{"from", "2022-01-01"}, {"to", "2022-12-31"}, {"lod", "month"},
                    {"class", "Breeding Times"}, {"bbox", bbox}}));
  EXPECT_EQ(j["lod"], "month");
  ASSERT_EQ(j["buckets"].size(), 12u);
  int in_season = 1 << 30, off_season = 0;
  for (int m = 0; m < 12; ++m) {
    int count = j["buckets"][m]["count"];
    if (m >= 2 && m <= 8) {
      in_season = std::min(in_season, count);
    } else {
      off_season = std::max(off_season, count);
    }
  }
  EXPECT_GT(in_season, off_season);
  EXPECT_EQ(j["buckets"][0]["start"], "2022-01-01");
}

TEST_F(ApiTest, TimelineValidation) {
  ExpectError(Call("GET", "/api/timeline", {{"from", "2022-01-01"}}), 400, "validation");
  ExpectError(Call("GET", "/api/timeline", {{"from", "2022-02-01"}, {"to", "2022-01-01"}}), 400,
              "validation");
  ExpectError(Call("GET", "/api/timeline",
                   {{"from", "2022-01-01"}, {"to", "2022-02-01"}, {"lod", "week"}}),
              400, "parse");
}

TEST_F(ApiTest, TimelineSelection) {
  Json j = Ok(Call("GET", "/api/timeline/select",
                   {{"from", "2022-03-01"}, {"to", "2022-09-30"}, {"class", "Breeding Times"}}));
  bool wildpark = false;
  for (const auto &d : j["documents"]) wildpark |= d["id"] == fixtures::kWildparkDocId;
  EXPECT_TRUE(wildpark);
}

TEST_F(ApiTest, UnknownRoutes) {
  ExpectError(Call("GET", "/api/nothing"), 404, "not_found");
  ExpectError(Call("DELETE", "/api/polygons"), 404, "not_found");
  ExpectError(Call("GET", "/index.html"), 404, "not_found");
}

TEST_F(ApiTest, IdenticalReadsAreByteIdentical) {
  for (const auto &[path, query] : std::vector<std::pair<std::string, std::map<std::string, std::string>>>{
           {"/api/classes", {}},
           {"/api/polygons", {}},
           {"/api/polygons/water-see/overlaps", {}},
           {"/api/polygons/nsg-nordufer/restrictions", {{"at", "2022-05-01"}}},
           {"/api/timeline", {{"from", "2020-01-01"}, {"to", "2023-12-31"}, {"lod", "quarter"}}},
           {"/api/timeline/select", {{"from", "2020-01-01"}, {"to", "2023-12-31"}}}}) {
    auto a = Call("GET", path, query);
    auto b = Call("GET", path, query);
    EXPECT_EQ(a.status, 200) << path;
    EXPECT_EQ(a.body, b.body) << path;
  }
}

}  // namespace
}  // namespace restrictplan
