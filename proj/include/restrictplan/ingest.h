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

#ifndef RESTRICTPLAN_INGEST_H_
#define RESTRICTPLAN_INGEST_H_

#include <filesystem>
#include <string>
#include <vector>

#include "restrictplan/extraction.h"
#include "restrictplan/store.h"

namespace restrictplan {

struct IngestedDocument {
  std::string id;
  // False when the document was already in the store.
  bool added = false;
  std::vector<RestrictionRef> refs;
  std::vector<ParseWarning> warnings;
};

// Ingests every <stem>.txt in `dir`, in file name order. An optional
// <stem>.meta.json sidecar holds
//   {"title": "...", "polygons": [<polygon object> | "<polygon id>", ...]}.
// Polygon objects are inserted when their id is new. The document id is the
// file stem. Each document is one atomic batch.
std::vector<IngestedDocument> IngestCorpus(const std::filesystem::path &dir,
                                           Store &store, const RuleTable &rules);

}  // namespace restrictplan

#endif  // RESTRICTPLAN_INGEST_H_
