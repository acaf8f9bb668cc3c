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

#ifndef RESTRICTPLAN_GRAPH_H_
#define RESTRICTPLAN_GRAPH_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "restrictplan/extraction.h"
#include "restrictplan/geometry.h"

namespace restrictplan {

enum class NodeKind { kPolygon, kDocument, kRestrictionClass };
enum class EdgeKind { kHasDocument, kOverlaps, kRestricts };

std::string_view NodeKindName(NodeKind kind);
std::string_view EdgeKindName(EdgeKind kind);

using EdgeId = std::uint64_t;

struct Document {
  std::string id;
  std::string title;
  std::string text;
  std::string source_path;
  // ISO-8601 UTC timestamp.
  std::string ingested_at;

  friend bool operator==(const Document &, const Document &) = default;
};

// Attributes carried by a Restricts edge.
struct RestrictionAttrs {
  int sentence_index = 0;
  std::string sentence;
  RestrictionKind kind = RestrictionKind::kProhibition;
  TemporalExtent extent;

  friend bool operator==(const RestrictionAttrs &, const RestrictionAttrs &) = default;
};

struct EdgeRecord {
  EdgeId id = 0;
  EdgeKind kind = EdgeKind::kHasDocument;
  std::string from;
  std::string to;
  // Overlaps only, m².
  double overlap_area = 0;
  // Restricts only.
  RestrictionAttrs restriction;
};

struct RestrictionClassNode {
  std::string name;
};

struct NodeRecord {
  std::string id;
  NodeKind kind = NodeKind::kPolygon;
  // Creation order; snapshots replay nodes in this order.
  std::uint64_t seq = 0;
  std::variant<GeoPolygon, Document, RestrictionClassNode> payload;
};

// A Restricts edge viewed as an extracted restriction.
struct StoredRestriction {
  EdgeId id = 0;
  RestrictionRef ref;

  friend bool operator==(const StoredRestriction &, const StoredRestriction &) = default;
};

// Node id of a restriction class node.
std::string ClassNodeId(std::string_view class_name);

// In-memory polygon/document/class graph with a bounding-box R-tree over
// polygons. Not synchronized; Store owns the locking.
class Graph {
 public:
  Graph();
  ~Graph();
  Graph(const Graph &) = delete;
  Graph &operator=(const Graph &) = delete;

  const NodeRecord *FindNode(std::string_view id) const;
  const GeoPolygon *FindPolygon(std::string_view id) const;
  const Document *FindDocument(std::string_view id) const;
  const EdgeRecord *FindEdge(EdgeId id) const;

  const std::map<std::string, NodeRecord, std::less<>> &nodes() const {
    return nodes_;
  }
  const std::map<EdgeId, EdgeRecord> &edges() const { return edges_; }

  // Edge ids incident to a node, in creation order.
  const std::vector<EdgeId> &OutEdges(std::string_view id) const;
  const std::vector<EdgeId> &InEdges(std::string_view id) const;

  // All polygons, ordered by id.
  std::vector<const GeoPolygon *> Polygons() const;
  std::vector<std::string> DocumentsOf(std::string_view polygon_id) const;
  std::vector<std::string> PolygonsOf(std::string_view document_id) const;
  // Ordered by sentence index, then edge id.
  std::vector<StoredRestriction> RestrictionsOf(std::string_view document_id) const;
  std::vector<StoredRestriction> RestrictionsOfClass(std::string_view class_name) const;
  std::vector<std::string> ClassNames() const;
  std::vector<const EdgeRecord *> OverlapEdges(std::string_view polygon_id) const;
  StoredRestriction ToRestriction(const EdgeRecord &edge) const;

  // Polygon ids whose bounding box intersects `box`, ordered by id.
  std::vector<std::string> IndexCandidates(const BoundingBox &box) const;
  size_t index_size() const;

  size_t polygon_count() const { return polygon_count_; }
  size_t node_count() const { return nodes_.size(); }
  size_t edge_count() const { return edges_.size(); }

  EdgeId next_edge_id() const { return next_edge_id_; }
  std::uint64_t next_seq() const { return next_seq_; }

  // Mutation primitives. Callers check preconditions; these only keep the
  // adjacency lists and the spatial index in step.
  void AddNode(NodeRecord node);
  // The node must have no incident edges.
  void RemoveNode(std::string_view id);
  void AddEdge(EdgeRecord edge);
  void RemoveEdge(EdgeId id);
  void SetRestrictionExtent(EdgeId id, const TemporalExtent &extent);
  void set_next_edge_id(EdgeId id) { next_edge_id_ = id; }
  void set_next_seq(std::uint64_t seq) { next_seq_ = seq; }

  // Structural invariant violations, empty when consistent.
  std::vector<std::string> CheckInvariants() const;

 private:
  struct SpatialIndex;

  std::map<std::string, NodeRecord, std::less<>> nodes_;
  std::map<EdgeId, EdgeRecord> edges_;
  std::unordered_map<std::string, std::vector<EdgeId>> out_;
  std::unordered_map<std::string, std::vector<EdgeId>> in_;
  std::unique_ptr<SpatialIndex> index_;
  size_t polygon_count_ = 0;
  EdgeId next_edge_id_ = 1;
  std::uint64_t next_seq_ = 1;
};

}  // namespace restrictplan

#endif  // RESTRICTPLAN_GRAPH_H_
