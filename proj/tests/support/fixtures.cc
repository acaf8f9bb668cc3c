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

#include "fixtures.h"

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "restrictplan/ingest.h"

namespace restrictplan::fixtures {

namespace fs = std::filesystem;

fs::path Dir() { return RESTRICTPLAN_TEST_FIXTURES; }

fs::path CorpusDir() { return Dir() / "corpus"; }

std::string ReadText(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Json ReadJson(const fs::path &path) { return ParseJson(ReadText(path)); }

std::vector<GeoPolygon> Polygons() {
  std::vector<GeoPolygon> out;
  for (const auto &j : ReadJson(Dir() / "polygons.json")) {
    out.push_back(PolygonFromJson(j));
  }
  return out;
}

ProjectDraft BicyclePath() {
  Json j = ReadJson(Dir() / "bicycle_path.json");
  ProjectDraft d;
  d.points = PointsFromJson(j["points"]);
  d.kind = DraftKind::kPath;
  d.category = j["category"];
  d.name = j["name"];
  d.path_width = j["width"];
  return d;
}

const RuleTable &Rules() {
  static const RuleTable rules = RuleTable::LoadDefault();
  return rules;
}

std::unique_ptr<Store> LoadStore() {
  auto store = std::make_unique<Store>();
  IngestCorpus(CorpusDir(), *store, Rules());
  return store;
}

std::vector<oracle::CorpusDocument> GoldenCorpus() {
  std::map<std::string, GeoPolygon> polygons;
  for (auto &p : Polygons()) polygons[p.id] = p;
  std::map<std::string, oracle::CorpusDocument> docs;
  for (const auto &entry : fs::directory_iterator(CorpusDir())) {
    const auto &path = entry.path();
    if (path.extension() != ".txt") continue;
    fs::path meta = path;
    meta.replace_extension(".meta.json");
    oracle::CorpusDocument doc;
    doc.id = path.stem().string();
    const Json meta_json = ReadJson(meta);
    for (const auto &p : meta_json.at("polygons")) {
      std::string id = p.is_string() ? p.get<std::string>() : p["id"].get<std::string>();
      doc.polygons.push_back(polygons.at(id));
    }
    docs[doc.id] = std::move(doc);
  }
  const Json golden = ReadJson(Dir() / "golden" / "extraction.json");
  for (const auto &r : golden.at("refs")) {
    RestrictionRef ref = RefFromJson(r);
    docs.at(ref.doc_id).refs.push_back(std::move(ref));
  }
  std::vector<oracle::CorpusDocument> out;
  for (auto &[id, doc] : docs) out.push_back(std::move(doc));
  return out;
}

BoundingBox Region() {
  auto polygons = Polygons();
  BoundingBox box = Bounds(polygons.front());
  for (const auto &p : polygons) box = box.Union(Bounds(p));
  return box;
}

TempDir::TempDir() {
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("restrictplan-test-" + std::to_string(rd()) + std::to_string(rd()));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace restrictplan::fixtures
