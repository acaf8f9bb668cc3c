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

#include "restrictplan/graph.h"

#include <algorithm>
#include <set>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/box.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/index/rtree.hpp>

namespace restrictplan {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

namespace {

using IndexPoint = bg::model::d2::point_xy<double>;
using IndexBox = bg::model::box<IndexPoint>;
using IndexValue = std::pair<IndexBox, std::string>;

IndexBox ToIndexBox(const BoundingBox &b) {
  return IndexBox{IndexPoint{b.min_lon, b.min_lat},
                  IndexPoint{b.max_lon, b.max_lat}};
}

const std::vector<EdgeId> kNoEdges;

}  // namespace

struct Graph::SpatialIndex {
  bgi::rtree<IndexValue, bgi::quadratic<16>> tree;
};

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kPolygon: return "Polygon";
    case NodeKind::kDocument: return "Document";
    case NodeKind::kRestrictionClass: return "RestrictionClass";
  }
  return "Polygon";
}

std::string_view EdgeKindName(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kHasDocument: return "HasDocument";
    case EdgeKind::kOverlaps: return "Overlaps";
    case EdgeKind::kRestricts: return "Restricts";
  }
  return "HasDocument";
}

std::string ClassNodeId(std::string_view class_name) {
  return "class:" + std::string(class_name);
}

Graph::Graph() : index_(std::make_unique<SpatialIndex>()) {}
Graph::~Graph() = default;

const NodeRecord *Graph::FindNode(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const GeoPolygon *Graph::FindPolygon(std::string_view id) const {
  const NodeRecord *n = FindNode(id);
  return n ? std::get_if<GeoPolygon>(&n->payload) : nullptr;
}

const Document *Graph::FindDocument(std::string_view id) const {
  const NodeRecord *n = FindNode(id);
  return n ? std::get_if<Document>(&n->payload) : nullptr;
}

const EdgeRecord *Graph::FindEdge(EdgeId id) const {
  auto it = edges_.find(id);
  return it == edges_.end() ? nullptr : &it->second;
}

const std::vector<EdgeId> &Graph::OutEdges(std::string_view id) const {
  auto it = out_.find(std::string(id));
  return it == out_.end() ? kNoEdges : it->second;
}

const std::vector<EdgeId> &Graph::InEdges(std::string_view id) const {
  auto it = in_.find(std::string(id));
  return it == in_.end() ? kNoEdges : it->second;
}

std::vector<const GeoPolygon *> Graph::Polygons() const {
  std::vector<const GeoPolygon *> out;
  out.reserve(polygon_count_);
  for (const auto &[id, node] : nodes_) {
    if (auto *p = std::get_if<GeoPolygon>(&node.payload)) out.push_back(p);
  }
  return out;
}

std::vector<std::string> Graph::DocumentsOf(std::string_view polygon_id) const {
  std::vector<std::string> out;
  for (EdgeId e : OutEdges(polygon_id)) {
    const EdgeRecord &edge = edges_.at(e);
    if (edge.kind == EdgeKind::kHasDocument) out.push_back(edge.to);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Graph::PolygonsOf(std::string_view document_id) const {
  std::vector<std::string> out;
  for (EdgeId e : InEdges(document_id)) {
    const EdgeRecord &edge = edges_.at(e);
    if (edge.kind == EdgeKind::kHasDocument) out.push_back(edge.from);
  }
  std::sort(out.begin(), out.end());
  return out;
}

StoredRestriction Graph::ToRestriction(const EdgeRecord &edge) const {
  const auto *cls = FindNode(edge.to);
  std::string topic =
      cls ? std::get<RestrictionClassNode>(cls->payload).name : edge.to;
  RestrictionRef ref;
  ref.doc_id = edge.from;
  ref.sentence = {edge.restriction.sentence, edge.from,
                  edge.restriction.sentence_index};
  ref.classification = {edge.restriction.kind, std::move(topic)};
  ref.extent = edge.restriction.extent;
  return {edge.id, std::move(ref)};
}

namespace {

void SortRestrictions(std::vector<StoredRestriction> *v) {
  std::sort(v->begin(), v->end(),
            [](const StoredRestriction &a, const StoredRestriction &b) {
              if (a.ref.doc_id != b.ref.doc_id) return a.ref.doc_id < b.ref.doc_id;
              if (a.ref.sentence.index != b.ref.sentence.index) {
                return a.ref.sentence.index < b.ref.sentence.index;
              }
              return a.id < b.id;
            });
}

}  // namespace

std::vector<StoredRestriction> Graph::RestrictionsOf(
    std::string_view document_id) const {
  std::vector<StoredRestriction> out;
  for (EdgeId e : OutEdges(document_id)) {
    const EdgeRecord &edge = edges_.at(e);
    if (edge.kind == EdgeKind::kRestricts) out.push_back(ToRestriction(edge));
  }
  SortRestrictions(&out);
  return out;
}

std::vector<StoredRestriction> Graph::RestrictionsOfClass(
    std::string_view class_name) const {
  std::vector<StoredRestriction> out;
  for (EdgeId e : InEdges(ClassNodeId(class_name))) {
    const EdgeRecord &edge = edges_.at(e);
    if (edge.kind == EdgeKind::kRestricts) out.push_back(ToRestriction(edge));
  }
  SortRestrictions(&out);
  return out;
}

std::vector<std::string> Graph::ClassNames() const {
  std::vector<std::string> out;
  for (const auto &[id, node] : nodes_) {
    if (auto *c = std::get_if<RestrictionClassNode>(&node.payload)) {
      out.push_back(c->name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<const EdgeRecord *> Graph::OverlapEdges(
    std::string_view polygon_id) const {
  std::vector<const EdgeRecord *> out;
  for (const auto *list : {&OutEdges(polygon_id), &InEdges(polygon_id)}) {
    for (EdgeId e : *list) {
      const EdgeRecord &edge = edges_.at(e);
      if (edge.kind == EdgeKind::kOverlaps) out.push_back(&edge);
    }
  }
  return out;
}

std::vector<std::string> Graph::IndexCandidates(const BoundingBox &box) const {
  std::vector<IndexValue> hits;
  index_->tree.query(bgi::intersects(ToIndexBox(box)), std::back_inserter(hits));
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (auto &h : hits) out.push_back(std::move(h.second));
  std::sort(out.begin(), out.end());
  return out;
}

size_t Graph::index_size() const { return index_->tree.size(); }

void Graph::AddNode(NodeRecord node) {
  if (auto *p = std::get_if<GeoPolygon>(&node.payload)) {
    index_->tree.insert({ToIndexBox(Bounds(*p)), node.id});
    ++polygon_count_;
  }
  next_seq_ = std::max(next_seq_, node.seq + 1);
  std::string id = node.id;
  nodes_.emplace(std::move(id), std::move(node));
}

void Graph::RemoveNode(std::string_view id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) return;
  if (auto *p = std::get_if<GeoPolygon>(&it->second.payload)) {
    index_->tree.remove({ToIndexBox(Bounds(*p)), it->first});
    --polygon_count_;
  }
  out_.erase(it->first);
  in_.erase(it->first);
  nodes_.erase(it);
}

void Graph::AddEdge(EdgeRecord edge) {
  EdgeId id = edge.id;
  out_[edge.from].push_back(id);
  in_[edge.to].push_back(id);
  next_edge_id_ = std::max(next_edge_id_, id + 1);
  edges_.emplace(id, std::move(edge));
}

void Graph::RemoveEdge(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) return;
  auto drop = [id](std::vector<EdgeId> &v) {
    v.erase(std::remove(v.begin(), v.end(), id), v.end());
  };
  drop(out_[it->second.from]);
  drop(in_[it->second.to]);
  edges_.erase(it);
}

void Graph::SetRestrictionExtent(EdgeId id, const TemporalExtent &extent) {
  edges_.at(id).restriction.extent = extent;
}

std::vector<std::string> Graph::CheckInvariants() const {
  std::vector<std::string> problems;
  std::set<std::pair<std::string, std::string>> overlap_pairs;
  for (const auto &[id, edge] : edges_) {
    const NodeRecord *from = FindNode(edge.from);
    const NodeRecord *to = FindNode(edge.to);
    std::string label = "edge " + std::to_string(id);
    if (!from || !to) {
      problems.push_back(label + " is dangling");
      continue;
    }
    switch (edge.kind) {
      case EdgeKind::kHasDocument:
        if (from->kind != NodeKind::kPolygon || to->kind != NodeKind::kDocument) {
          problems.push_back(label + ": HasDocument must join Polygon->Document");
        }
        break;
      case EdgeKind::kOverlaps:
        if (from->kind != NodeKind::kPolygon || to->kind != NodeKind::kPolygon) {
          problems.push_back(label + ": Overlaps must join two polygons");
        }
        if (!(edge.from < edge.to)) {
          problems.push_back(label + ": Overlaps endpoints not canonically ordered");
        }
        if (!overlap_pairs.emplace(edge.from, edge.to).second) {
          problems.push_back(label + ": duplicate Overlaps edge");
        }
        if (!(edge.overlap_area > 0)) {
          problems.push_back(label + ": Overlaps edge without positive area");
        }
        break;
      case EdgeKind::kRestricts:
        if (from->kind != NodeKind::kDocument ||
            to->kind != NodeKind::kRestrictionClass) {
          problems.push_back(label + ": Restricts must join Document->Class");
        }
        break;
    }
    const auto &outs = OutEdges(edge.from);
    const auto &ins = InEdges(edge.to);
    if (std::find(outs.begin(), outs.end(), id) == outs.end() ||
        std::find(ins.begin(), ins.end(), id) == ins.end()) {
      problems.push_back(label + " missing from adjacency lists");
    }
  }
  for (const auto *adj : {&out_, &in_}) {
    for (const auto &[node, list] : *adj) {
      for (EdgeId e : list) {
        if (!edges_.count(e)) {
          problems.push_back("node " + node + " lists unknown edge " +
                             std::to_string(e));
        }
      }
    }
  }
  if (index_->tree.size() != polygon_count_) {
    problems.push_back("spatial index holds " +
                       std::to_string(index_->tree.size()) + " entries for " +
                       std::to_string(polygon_count_) + " polygons");
  }
  for (const GeoPolygon *p : Polygons()) {
    auto hits = IndexCandidates(Bounds(*p));
    if (!std::binary_search(hits.begin(), hits.end(), p->id)) {
      problems.push_back("polygon " + p->id + " missing from spatial index");
    }
  }
  return problems;
}

}  // namespace restrictplan
