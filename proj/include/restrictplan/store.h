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

#ifndef RESTRICTPLAN_STORE_H_
#define RESTRICTPLAN_STORE_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "json.hpp"
#include "restrictplan/graph.h"

namespace restrictplan {

struct StoreOptions {
  // Append-only JSON-lines journal. Replayed on construction when present;
  // without it the store lives in memory only.
  std::optional<std::filesystem::path> journal;
  // Timestamp source for journal lines and documents. Defaults to UTC now.
  std::function<std::string()> clock;
};

struct OverlapLink {
  std::string polygon_id;
  double area = 0;
  EdgeId edge_id = 0;
};

struct InsertResult {
  std::string polygon_id;
  std::vector<OverlapLink> overlaps;
};

struct ClassHit {
  GeoPolygon polygon;
  Document document;
  StoredRestriction restriction;
};

struct DocumentRestrictions {
  Document document;
  std::vector<StoredRestriction> restrictions;
};

struct OverlapEntry {
  GeoPolygon polygon;
  double area = 0;
  std::vector<DocumentRestrictions> documents;
};

struct StoreCounts {
  size_t nodes = 0;
  size_t edges = 0;
  size_t polygons = 0;

  friend bool operator==(const StoreCounts &, const StoreCounts &) = default;
};

// Read-only queries over a graph. They are used both through Store (under
// its reader lock) and inside write batches.
namespace queries {

// Triples (polygon, document, restriction) reachable from a restriction
// class, optionally limited to polygons whose bounding box meets `bbox`.
// Ordered by polygon id, document id, sentence index.
std::vector<ClassHit> ByClass(const Graph &graph, std::string_view class_name,
                              const std::optional<BoundingBox> &bbox);

// Overlap neighbours with their documents and restrictions, by descending
// overlap area. Throws NotFoundError for an unknown polygon.
std::vector<OverlapEntry> Overlapping(const Graph &graph,
                                      std::string_view polygon_id);

// Polygons whose ring intersects `bbox`, ordered by id.
std::vector<GeoPolygon> Viewport(const Graph &graph, const BoundingBox &bbox,
                                 const std::optional<std::string> &category);

// Documents linked to a polygon with their restrictions.
std::vector<DocumentRestrictions> DocumentsOf(const Graph &graph,
                                              std::string_view polygon_id);

}  // namespace queries

// Embedded graph store. One writer at a time; readers share a lock and never
// see a half-applied batch. Every committed batch is on the journal before
// the mutating call returns.
class Store {
 public:
  class Writer;

  explicit Store(StoreOptions options = {});
  ~Store();
  Store(const Store &) = delete;
  Store &operator=(const Store &) = delete;

  // Opens (replaying) or creates the journal at `path`. Replay failures
  // throw LoadError naming the offending line.
  static std::unique_ptr<Store> Open(const std::filesystem::path &path);

  // Single-operation batches.
  InsertResult InsertPolygon(const GeoPolygon &polygon);
  std::string AttachDocument(std::span<const std::string> polygon_ids,
                             Document doc,
                             std::span<const RestrictionRef> refs);
  StoredRestriction UpdateRestrictionExtent(EdgeId id,
                                            const TemporalExtent &extent);
  void DeletePolygon(std::string_view id);

  // Runs `fn` as one atomic batch. If it throws, every change it made is
  // rolled back and nothing reaches the journal.
  template <class F>
  auto Write(F &&fn) -> std::invoke_result_t<F, Writer &>;

  // Runs `fn` with a consistent read-only view.
  template <class F>
  auto Read(F &&fn) const -> std::invoke_result_t<F, const Graph &> {
    std::shared_lock lock(mu_);
    return fn(graph_);
  }

  std::vector<ClassHit> QueryByClass(std::string_view class_name,
                                     const std::optional<BoundingBox> &bbox) const;
  std::vector<OverlapEntry> QueryOverlapping(std::string_view polygon_id) const;
  std::vector<GeoPolygon> QueryViewport(
      const BoundingBox &bbox,
      const std::optional<std::string> &category = std::nullopt) const;

  StoreCounts Counts() const;

  // Invariant violations: dangling edges, duplicate overlap pairs, index
  // drift, invalid polygons. Empty when healthy.
  std::vector<std::string> Verify() const;

  // Writes a compacted journal reproducing the current state.
  void Snapshot(const std::filesystem::path &path) const;

  const std::optional<std::filesystem::path> &journal_path() const {
    return options_.journal;
  }

  // Test seam: called at named points inside write batches; throwing from
  // it simulates a failure at that point.
  void SetFaultHook(std::function<void(std::string_view)> hook);

 private:
  friend class Writer;

  void Replay(const std::filesystem::path &path);
  void AppendJournal(const std::vector<std::string> &lines);
  std::string Now() const;

  StoreOptions options_;
  mutable std::shared_mutex mu_;
  Graph graph_;
  std::function<void(std::string_view)> fault_hook_;
};

// Mutations inside a Store::Write batch.
class Store::Writer {
 public:
  InsertResult InsertPolygon(const GeoPolygon &polygon);
  std::string AttachDocument(std::span<const std::string> polygon_ids,
                             Document doc,
                             std::span<const RestrictionRef> refs);
  StoredRestriction UpdateRestrictionExtent(EdgeId id,
                                            const TemporalExtent &extent);
  void DeletePolygon(std::string_view id);

  // Sees this batch's uncommitted changes.
  const Graph &graph() const { return store_.graph_; }

  // Invokes the store's fault hook.
  void Checkpoint(std::string_view point);

  // Id not yet used by any node, of the form `prefix` + number.
  std::string FreshId(std::string_view prefix) const;

 private:
  friend class Store;
  explicit Writer(Store &store) : store_(store) {}

  void Apply(std::string_view op, const nlohmann::json &data);
  void Commit();
  void Rollback();

  Store &store_;
  std::vector<std::function<void()>> undo_;
  std::vector<std::string> lines_;
};

template <class F>
auto Store::Write(F &&fn) -> std::invoke_result_t<F, Writer &> {
  std::unique_lock lock(mu_);
  Writer writer(*this);
  try {
    if constexpr (std::is_void_v<std::invoke_result_t<F, Writer &>>) {
      fn(writer);
      writer.Commit();
    } else {
      auto result = fn(writer);
      writer.Commit();
      return result;
    }
  } catch (...) {
    writer.Rollback();
    throw;
  }
}

}  // namespace restrictplan

#endif  // RESTRICTPLAN_STORE_H_
