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

#include "restrictplan/ingest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "restrictplan/serialization.h"

namespace restrictplan {

namespace fs = std::filesystem;

namespace {

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

std::vector<IngestedDocument> IngestCorpus(const fs::path &dir, Store &store,
                                           const RuleTable &rules) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<IngestedDocument> out;
  for (const auto &file : files) {
    IngestedDocument result;
    result.id = file.stem().string();
    bool present = store.Read(
        [&](const Graph &g) { return g.FindDocument(result.id) != nullptr; });
    if (present) {
      out.push_back(std::move(result));
      continue;
    }

    Document doc;
    doc.id = result.id;
    doc.title = result.id;
    doc.text = ReadFile(file);
    doc.source_path = file.string();
    std::vector<GeoPolygon> polygons;
    std::vector<std::string> polygon_ids;
    fs::path meta = file;
    meta.replace_extension(".meta.json");
    if (fs::exists(meta)) {
      Json j = ParseJson(ReadFile(meta));
      if (!j.is_object()) throw ParseError(meta.string() + ": expected an object");
      if (j.contains("title") && j["title"].is_string()) doc.title = j["title"];
      for (const auto &p : j.value("polygons", Json::array())) {
        if (p.is_string()) {
          polygon_ids.push_back(p.get<std::string>());
        } else {
          polygons.push_back(PolygonFromJson(p));
          polygon_ids.push_back(polygons.back().id);
        }
      }
    }

    Extraction extraction = ExtractDocument(doc.id, doc.text, rules);
    store.Write([&](Store::Writer &w) {
      for (const auto &polygon : polygons) {
        if (!w.graph().FindPolygon(polygon.id)) w.InsertPolygon(polygon);
      }
      w.AttachDocument(polygon_ids, doc, extraction.refs);
    });
    result.added = true;
    result.refs = std::move(extraction.refs);
    result.warnings = std::move(extraction.warnings);
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace restrictplan
