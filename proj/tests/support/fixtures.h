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

#ifndef RESTRICTPLAN_TESTS_FIXTURES_H_
#define RESTRICTPLAN_TESTS_FIXTURES_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "oracles.h"
#include "restrictplan/planning.h"
#include "restrictplan/serialization.h"
#include "restrictplan/store.h"

namespace restrictplan::fixtures {

std::filesystem::path Dir();
std::filesystem::path CorpusDir();
std::string ReadText(const std::filesystem::path &path);
Json ReadJson(const std::filesystem::path &path);

// The ~30 lake-region polygons.
std::vector<GeoPolygon> Polygons();
// Bicycle path drafted across the north shore reserve.
ProjectDraft BicyclePath();

const RuleTable &Rules();

// In-memory store with the whole corpus ingested.
std::unique_ptr<Store> LoadStore();

// The corpus as the oracles see it: refs from the golden extraction file,
// polygons from the sidecars.
std::vector<oracle::CorpusDocument> GoldenCorpus();

// Bounding box around every fixture polygon.
BoundingBox Region();

inline constexpr char kReserveId[] = "nsg-nordufer";
inline constexpr char kWildparkId[] = "wildpark-ost";
inline constexpr char kWildparkDocId[] = "d02-wildpark-auflagen";

// Deleted on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace restrictplan::fixtures

#endif  // RESTRICTPLAN_TESTS_FIXTURES_H_
