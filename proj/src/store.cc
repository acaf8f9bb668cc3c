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

#include "restrictplan/store.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "restrictplan/kernels.h"
#include "restrictplan/serialization.h"

namespace restrictplan {

namespace {

// Applies journal ops to a graph. Live batches pass an undo log and a fault
// hook; replay passes neither. Sharing this path keeps a restored store
// identical to the one that wrote the journal.
class OpApplier {
 public:
  OpApplier(Graph &graph, std::vector<std::function<void()>> *undo,
            std::function<void(std::string_view)> checkpoint)
      : graph_(graph), undo_(undo), checkpoint_(std::move(checkpoint)) {}

  void Apply(std::string_view op, const Json &data) {
    if (op == "insertPolygon") {
      InsertPolygon(data);
    } else if (op == "attachDocument") {
      AttachDocument(data);
    } else if (op == "updateExtent") {
      UpdateExtent(data);
    } else if (op == "deletePolygon") {
      DeletePolygon(data);
    } else if (op == "counters") {
      Counters(data);
    } else {
      throw ParseError("unknown op '" + std::string(op) + "'");
    }
  }

 private:
  void Check(std::string_view point) {
    if (checkpoint_) checkpoint_(point);
  }

  void AddNode(NodeRecord node) {
    std::string id = node.id;
    std::uint64_t prev_seq = graph_.next_seq();
    graph_.AddNode(std::move(node));
    if (undo_) {
      undo_->push_back([g = &graph_, id, prev_seq] {
        g->RemoveNode(id);
        g->set_next_seq(prev_seq);
      });
    }
  }

  void AddEdge(EdgeRecord edge) {
    if (graph_.FindEdge(edge.id)) {
      throw ConflictError("edge id " + std::to_string(edge.id) + " already used");
    }
    EdgeId id = edge.id;
    EdgeId prev_next = graph_.next_edge_id();
    graph_.AddEdge(std::move(edge));
    if (undo_) {
      undo_->push_back([g = &graph_, id, prev_next] {
        g->RemoveEdge(id);
        g->set_next_edge_id(prev_next);
      });
    }
  }

  static EdgeId EdgeIdField(const Json &j) {
    if (!j.contains("edge") || !j.at("edge").is_number_unsigned()) {
      throw ParseError("missing edge id");
    }
    return j.at("edge").get<EdgeId>();
  }

  const GeoPolygon &RequirePolygon(const std::string &id) const {
    const GeoPolygon *p = graph_.FindPolygon(id);
    if (!p) throw NotFoundError("unknown polygon '" + id + "'");
    return *p;
  }

  void InsertPolygon(const Json &data) {
    GeoPolygon polygon = PolygonFromJson(data.at("polygon"));
    Validate(polygon);
    if (polygon.id.empty()) {
      throw ValidationError(ValidationIssue::kMissingField, "polygon id is empty");
    }
    if (graph_.FindNode(polygon.id)) {
      throw ConflictError("id '" + polygon.id + "' already exists");
    }
    std::string id = polygon.id;
    AddNode({id, NodeKind::kPolygon, graph_.next_seq(), std::move(polygon)});
    Check("insertPolygon.node");
    for (const auto &o : data.at("overlaps")) {
      EdgeRecord edge;
      edge.id = EdgeIdField(o);
      edge.kind = EdgeKind::kOverlaps;
      edge.from = o.at("from").get<std::string>();
      edge.to = o.at("to").get<std::string>();
      edge.overlap_area = o.at("area").get<double>();
      if (!(edge.from < edge.to) || (edge.from != id && edge.to != id)) {
        throw ParseError("overlap edge " + std::to_string(edge.id) +
                         " has bad endpoints");
      }
      RequirePolygon(edge.from == id ? edge.to : edge.from);
      AddEdge(std::move(edge));
      Check("insertPolygon.edge");
    }
  }

  void AttachDocument(const Json &data) {
    Document doc = DocumentFromJson(data.at("document"));
    if (graph_.FindNode(doc.id)) {
      throw ConflictError("id '" + doc.id + "' already exists");
    }
    std::string doc_id = doc.id;
    AddNode({doc_id, NodeKind::kDocument, graph_.next_seq(), std::move(doc)});
    Check("attachDocument.node");
    for (const auto &h : data.at("hasDocument")) {
      EdgeRecord edge;
      edge.id = EdgeIdField(h);
      edge.kind = EdgeKind::kHasDocument;
      edge.from = h.at("polygon").get<std::string>();
      edge.to = doc_id;
      RequirePolygon(edge.from);
      AddEdge(std::move(edge));
      Check("attachDocument.hasDocument");
    }
    for (const auto &r : data.at("restrictions")) {
      std::string cls = r.at("class").get<std::string>();
      std::string cls_id = ClassNodeId(cls);
      const NodeRecord *existing = graph_.FindNode(cls_id);
      if (!existing) {
        AddNode({cls_id, NodeKind::kRestrictionClass, graph_.next_seq(),
                 RestrictionClassNode{cls}});
        Check("attachDocument.class");
      } else if (existing->kind != NodeKind::kRestrictionClass) {
        throw ConflictError("id '" + cls_id + "' is not a restriction class");
      }
      EdgeRecord edge;
      edge.id = EdgeIdField(r);
      edge.kind = EdgeKind::kRestricts;
      edge.from = doc_id;
      edge.to = cls_id;
      auto kind = ParseRestrictionKind(r.at("kind").get<std::string>());
      if (!kind) throw ParseError("unknown restriction kind");
      edge.restriction = {r.at("sentenceIndex").get<int>(),
                          r.at("sentence").get<std::string>(), *kind,
                          ExtentFromJson(r.at("extent"))};
      AddEdge(std::move(edge));
      Check("attachDocument.restricts");
    }
  }

  void UpdateExtent(const Json &data) {
    EdgeId id = EdgeIdField(data);
    const EdgeRecord *edge = graph_.FindEdge(id);
    if (!edge || edge->kind != EdgeKind::kRestricts) {
      throw NotFoundError("unknown restriction " + std::to_string(id));
    }
    TemporalExtent previous = edge->restriction.extent;
    graph_.SetRestrictionExtent(id, ExtentFromJson(data.at("extent")));
    if (undo_) {
      undo_->push_back(
          [g = &graph_, id, previous] { g->SetRestrictionExtent(id, previous); });
    }
    Check("updateExtent");
  }

  void DeletePolygon(const Json &data) {
    std::string id = data.at("id").get<std::string>();
    RequirePolygon(id);
    std::vector<EdgeId> incident = graph_.OutEdges(id);
    const auto &in = graph_.InEdges(id);
    incident.insert(incident.end(), in.begin(), in.end());
    std::vector<std::string> orphans;
    for (EdgeId e : incident) {
      const EdgeRecord *edge = graph_.FindEdge(e);
      if (edge->kind == EdgeKind::kHasDocument) orphans.push_back(edge->to);
      RemoveEdge(e);
    }
    RemoveNode(id);
    // Documents left without any polygon go too, with their restrictions.
    for (const auto &doc : orphans) {
      if (!graph_.InEdges(doc).empty()) continue;
      std::vector<EdgeId> out = graph_.OutEdges(doc);
      for (EdgeId e : out) RemoveEdge(e);
      RemoveNode(doc);
    }
  }

  void RemoveEdge(EdgeId e) {
    EdgeRecord copy = *graph_.FindEdge(e);
    graph_.RemoveEdge(e);
    if (undo_) undo_->push_back([g = &graph_, copy] { g->AddEdge(copy); });
    Check("deletePolygon.edge");
  }

  void RemoveNode(const std::string &id) {
    NodeRecord node = *graph_.FindNode(id);
    graph_.RemoveNode(id);
    if (undo_) undo_->push_back([g = &graph_, node] { g->AddNode(node); });
  }

  void Counters(const Json &data) {
    graph_.set_next_edge_id(
        std::max(graph_.next_edge_id(), data.at("nextEdgeId").get<EdgeId>()));
    graph_.set_next_seq(
        std::max(graph_.next_seq(), data.at("nextSeq").get<std::uint64_t>()));
  }

  Graph &graph_;
  std::vector<std::function<void()>> *undo_;
  std::function<void(std::string_view)> checkpoint_;
};

std::string JournalLine(std::string_view op, const std::string &ts,
                        Json data) {
  Json line = {{"op", op}, {"ts", ts}, {"data", std::move(data)}};
  return line.dump() + "\n";
}

Json OverlapJson(const EdgeRecord &e) {
  return {{"edge", e.id}, {"from", e.from}, {"to", e.to}, {"area", e.overlap_area}};
}

Json RestrictionJson(EdgeId id, const std::string &cls,
                     const RestrictionAttrs &attrs) {
  return {{"edge", id},
          {"class", cls},
          {"sentenceIndex", attrs.sentence_index},
          {"sentence", attrs.sentence},
          {"kind", RestrictionKindName(attrs.kind)},
          {"extent", ToJson(attrs.extent)}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Queries

namespace queries {

std::vector<DocumentRestrictions> DocumentsOf(const Graph &graph,
                                              std::string_view polygon_id) {
  std::vector<DocumentRestrictions> out;
  for (const auto &doc_id : graph.DocumentsOf(polygon_id)) {
    out.push_back({*graph.FindDocument(doc_id), graph.RestrictionsOf(doc_id)});
  }
  return out;
}

std::vector<ClassHit> ByClass(const Graph &graph, std::string_view class_name,
                              const std::optional<BoundingBox> &bbox) {
  std::vector<ClassHit> out;
  for (auto &r : graph.RestrictionsOfClass(class_name)) {
    const Document *doc = graph.FindDocument(r.ref.doc_id);
    for (const auto &pid : graph.PolygonsOf(r.ref.doc_id)) {
      const GeoPolygon *p = graph.FindPolygon(pid);
      if (bbox && !Bounds(*p).Intersects(*bbox)) continue;
      out.push_back({*p, *doc, r});
    }
  }
  std::sort(out.begin(), out.end(), [](const ClassHit &a, const ClassHit &b) {
    if (a.polygon.id != b.polygon.id) return a.polygon.id < b.polygon.id;
    if (a.document.id != b.document.id) return a.document.id < b.document.id;
    if (a.restriction.ref.sentence.index != b.restriction.ref.sentence.index) {
      return a.restriction.ref.sentence.index < b.restriction.ref.sentence.index;
    }
    return a.restriction.id < b.restriction.id;
  });
  return out;
}

std::vector<OverlapEntry> Overlapping(const Graph &graph,
                                      std::string_view polygon_id) {
  if (!graph.FindPolygon(polygon_id)) {
    throw NotFoundError("unknown polygon '" + std::string(polygon_id) + "'");
  }
  std::vector<OverlapEntry> out;
  for (const EdgeRecord *e : graph.OverlapEdges(polygon_id)) {
    const std::string &other = e->from == polygon_id ? e->to : e->from;
    out.push_back({*graph.FindPolygon(other), e->overlap_area,
                   DocumentsOf(graph, other)});
  }
  std::sort(out.begin(), out.end(), [](const OverlapEntry &a, const OverlapEntry &b) {
    if (a.area != b.area) return a.area > b.area;
    return a.polygon.id < b.polygon.id;
  });
  return out;
}

std::vector<GeoPolygon> Viewport(const Graph &graph, const BoundingBox &bbox,
                                 const std::optional<std::string> &category) {
  std::vector<GeoPolygon> out;
  for (const auto &id : graph.IndexCandidates(bbox)) {
    const GeoPolygon *p = graph.FindPolygon(id);
    if (category && p->category != *category) continue;
    if (IntersectsBox(*p, bbox)) out.push_back(*p);
  }
  return out;
}

}  // namespace queries

// ---------------------------------------------------------------------------
// Writer

void Store::Writer::Checkpoint(std::string_view point) {
  if (store_.fault_hook_) store_.fault_hook_(point);
}

std::string Store::Writer::FreshId(std::string_view prefix) const {
  for (std::uint64_t n = graph().next_seq();; ++n) {
    std::string id = std::string(prefix) + std::to_string(n);
    if (!graph().FindNode(id)) return id;
  }
}

void Store::Writer::Apply(std::string_view op, const Json &data) {
  OpApplier(store_.graph_, &undo_,
            [this](std::string_view point) { Checkpoint(point); })
      .Apply(op, data);
  lines_.push_back(JournalLine(op, store_.Now(), data));
}

InsertResult Store::Writer::InsertPolygon(const GeoPolygon &polygon) {
  Validate(polygon);
  if (polygon.id.empty()) {
    throw ValidationError(ValidationIssue::kMissingField, "polygon id is empty");
  }
  if (graph().FindNode(polygon.id)) {
    throw ConflictError("id '" + polygon.id + "' already exists");
  }
  std::vector<const GeoPolygon *> candidates;
  for (const auto &id : graph().IndexCandidates(Bounds(polygon))) {
    candidates.push_back(graph().FindPolygon(id));
  }
  std::vector<double> areas = kernels::OverlapAreas(polygon, candidates);
  Checkpoint("insertPolygon.computed");

  InsertResult result{polygon.id, {}};
  Json overlaps = Json::array();
  EdgeId next = graph().next_edge_id();
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!(areas[i] > kOverlapAreaEpsilon)) continue;
    const std::string &other = candidates[i]->id;
    EdgeRecord e;
    e.id = next++;
    e.from = std::min(polygon.id, other);
    e.to = std::max(polygon.id, other);
    e.overlap_area = areas[i];
    overlaps.push_back(OverlapJson(e));
    result.overlaps.push_back({other, areas[i], e.id});
  }
  Apply("insertPolygon", {{"polygon", ToJson(polygon)}, {"overlaps", overlaps}});
  return result;
}

std::string Store::Writer::AttachDocument(std::span<const std::string> polygon_ids,
                                          Document doc,
                                          std::span<const RestrictionRef> refs) {
  if (doc.text.empty()) {
    throw ValidationError(ValidationIssue::kMissingField, "document text is empty");
  }
  if (polygon_ids.empty()) {
    throw ValidationError(ValidationIssue::kMissingField,
                          "a document needs at least one polygon");
  }
  if (doc.id.empty()) doc.id = FreshId("doc-");
  if (graph().FindNode(doc.id)) {
    throw ConflictError("id '" + doc.id + "' already exists");
  }
  if (doc.ingested_at.empty()) doc.ingested_at = store_.Now();

  std::vector<std::string> polygons(polygon_ids.begin(), polygon_ids.end());
  std::sort(polygons.begin(), polygons.end());
  polygons.erase(std::unique(polygons.begin(), polygons.end()), polygons.end());
  EdgeId next = graph().next_edge_id();
  Json has = Json::array();
  for (const auto &pid : polygons) {
    if (!graph().FindPolygon(pid)) {
      throw NotFoundError("unknown polygon '" + pid + "'");
    }
    has.push_back({{"edge", next++}, {"polygon", pid}});
  }
  Json restrictions = Json::array();
  for (const auto &ref : refs) {
    if (ref.classification.topic.empty()) {
      throw ValidationError(ValidationIssue::kMissingField,
                            "restriction without a topic");
    }
    RestrictionAttrs attrs{ref.sentence.index, ref.sentence.text,
                           ref.classification.kind, ref.extent};
    restrictions.push_back(
        RestrictionJson(next++, ref.classification.topic, attrs));
  }
  std::string id = doc.id;
  Apply("attachDocument", {{"document", ToJson(doc, true)},
                           {"hasDocument", has},
                           {"restrictions", restrictions}});
  return id;
}

StoredRestriction Store::Writer::UpdateRestrictionExtent(
    EdgeId id, const TemporalExtent &extent) {
  Apply("updateExtent", {{"edge", id}, {"extent", ToJson(extent)}});
  return graph().ToRestriction(*graph().FindEdge(id));
}

void Store::Writer::DeletePolygon(std::string_view id) {
  Apply("deletePolygon", {{"id", id}});
}

void Store::Writer::Commit() {
  Checkpoint("commit");
  if (!lines_.empty()) store_.AppendJournal(lines_);
  undo_.clear();
}

void Store::Writer::Rollback() {
  for (auto it = undo_.rbegin(); it != undo_.rend(); ++it) (*it)();
  undo_.clear();
  lines_.clear();
}

// ---------------------------------------------------------------------------
// Store

Store::Store(StoreOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = UtcTimestampNow;
  if (options_.journal && std::filesystem::exists(*options_.journal)) {
    Replay(*options_.journal);
  }
}

Store::~Store() = default;

std::unique_ptr<Store> Store::Open(const std::filesystem::path &path) {
  StoreOptions options;
  options.journal = path;
  return std::make_unique<Store>(std::move(options));
}

std::string Store::Now() const { return options_.clock(); }

void Store::SetFaultHook(std::function<void(std::string_view)> hook) {
  std::unique_lock lock(mu_);
  fault_hook_ = std::move(hook);
}

void Store::Replay(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read journal " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  OpApplier applier(graph_, nullptr, nullptr);
  size_t pos = 0;
  int line_no = 0;
  while (pos < content.size()) {
    ++line_no;
    size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      throw LoadError(path.string(), line_no, "truncated line (no newline)");
    }
    std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      Json j = Json::parse(line);
      applier.Apply(j.at("op").get<std::string>(), j.at("data"));
    } catch (const LoadError &) {
      throw;
    } catch (const std::exception &e) {
      throw LoadError(path.string(), line_no, e.what());
    }
  }
}

void Store::AppendJournal(const std::vector<std::string> &lines) {
  if (!options_.journal) return;
  const auto &path = *options_.journal;
  std::error_code ec;
  auto before = std::filesystem::exists(path, ec)
                    ? std::filesystem::file_size(path, ec)
                    : std::uintmax_t{0};
  std::string batch;
  for (const auto &l : lines) batch += l;
  bool ok;
  {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out << batch;
    out.flush();
    ok = static_cast<bool>(out);
  }
  try {
    if (fault_hook_) fault_hook_("journal.appended");
  } catch (...) {
    std::filesystem::resize_file(path, before, ec);
    throw;
  }
  if (!ok) {
    if (std::filesystem::exists(path, ec)) {
      std::filesystem::resize_file(path, before, ec);
    }
    throw IoError("cannot append to journal " + path.string());
  }
}

InsertResult Store::InsertPolygon(const GeoPolygon &polygon) {
  return Write([&](Writer &w) { return w.InsertPolygon(polygon); });
}

std::string Store::AttachDocument(std::span<const std::string> polygon_ids,
                                  Document doc,
                                  std::span<const RestrictionRef> refs) {
  return Write([&](Writer &w) {
    return w.AttachDocument(polygon_ids, std::move(doc), refs);
  });
}

StoredRestriction Store::UpdateRestrictionExtent(EdgeId id,
                                                 const TemporalExtent &extent) {
  return Write([&](Writer &w) { return w.UpdateRestrictionExtent(id, extent); });
}

void Store::DeletePolygon(std::string_view id) {
  Write([&](Writer &w) { w.DeletePolygon(id); });
}

std::vector<ClassHit> Store::QueryByClass(
    std::string_view class_name, const std::optional<BoundingBox> &bbox) const {
  return Read([&](const Graph &g) { return queries::ByClass(g, class_name, bbox); });
}

std::vector<OverlapEntry> Store::QueryOverlapping(std::string_view polygon_id) const {
  return Read([&](const Graph &g) { return queries::Overlapping(g, polygon_id); });
}

std::vector<GeoPolygon> Store::QueryViewport(
    const BoundingBox &bbox, const std::optional<std::string> &category) const {
  ValidateBox(bbox);
  return Read([&](const Graph &g) { return queries::Viewport(g, bbox, category); });
}

StoreCounts Store::Counts() const {
  return Read([](const Graph &g) {
    return StoreCounts{g.node_count(), g.edge_count(), g.polygon_count()};
  });
}

std::vector<std::string> Store::Verify() const {
  return Read([](const Graph &g) {
    std::vector<std::string> problems = g.CheckInvariants();
    for (const GeoPolygon *p : g.Polygons()) {
      try {
        Validate(*p);
      } catch (const ValidationError &e) {
        problems.push_back("polygon " + p->id + ": " + e.what());
      }
    }
    return problems;
  });
}

void Store::Snapshot(const std::filesystem::path &path) const {
  std::string ts = Now();
  std::string content = Read([&](const Graph &g) {
    std::vector<const NodeRecord *> order;
    for (const auto &[id, node] : g.nodes()) {
      if (node.kind != NodeKind::kRestrictionClass) order.push_back(&node);
    }
    std::sort(order.begin(), order.end(),
              [](const NodeRecord *a, const NodeRecord *b) { return a->seq < b->seq; });
    std::string out;
    for (const NodeRecord *node : order) {
      if (const auto *p = std::get_if<GeoPolygon>(&node->payload)) {
        Json overlaps = Json::array();
        for (const EdgeRecord *e : g.OverlapEdges(p->id)) {
          const auto &other = e->from == p->id ? e->to : e->from;
          if (g.FindNode(other)->seq < node->seq) overlaps.push_back(OverlapJson(*e));
        }
        std::sort(overlaps.begin(), overlaps.end(), [](const Json &a, const Json &b) {
          return a.at("edge").get<EdgeId>() < b.at("edge").get<EdgeId>();
        });
        out += JournalLine("insertPolygon", ts,
                           {{"polygon", ToJson(*p)}, {"overlaps", overlaps}});
      } else {
        const auto &doc = std::get<Document>(node->payload);
        Json has = Json::array();
        Json restrictions = Json::array();
        for (EdgeId id : g.InEdges(doc.id)) {
          const EdgeRecord &e = *g.FindEdge(id);
          if (e.kind == EdgeKind::kHasDocument) {
            has.push_back({{"edge", e.id}, {"polygon", e.from}});
          }
        }
        for (EdgeId id : g.OutEdges(doc.id)) {
          const EdgeRecord &e = *g.FindEdge(id);
          if (e.kind != EdgeKind::kRestricts) continue;
          const auto &cls = std::get<RestrictionClassNode>(g.FindNode(e.to)->payload);
          restrictions.push_back(RestrictionJson(e.id, cls.name, e.restriction));
        }
        out += JournalLine("attachDocument", ts,
                           {{"document", ToJson(doc, true)},
                            {"hasDocument", has},
                            {"restrictions", restrictions}});
      }
    }
    out += JournalLine("counters", ts,
                       {{"nextEdgeId", g.next_edge_id()}, {"nextSeq", g.next_seq()}});
    return out;
  });

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write snapshot " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move snapshot into place: " + ec.message());
}

}  // namespace restrictplan
