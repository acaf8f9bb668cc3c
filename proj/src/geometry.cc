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

#include "restrictplan/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace restrictplan {

namespace bg = boost::geometry;

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint>;
using BMulti = bg::model::multi_polygon<BPolygon>;
using BLine = bg::model::linestring<BPoint>;
using BBox = bg::model::box<BPoint>;

constexpr double kDegToRad = std::numbers::pi / 180.0;

// sin of the angle below which three consecutive vertices count as
// collinear.
constexpr double kCollinearSine = 1e-10;

BPolygon ToBoost(std::span<const PlanarPoint> ring) {
  BPolygon poly;
  auto &outer = poly.outer();
  outer.reserve(ring.size() + 1);
  for (const auto &p : ring) outer.emplace_back(p.x, p.y);
  if (!ring.empty()) outer.emplace_back(ring.front().x, ring.front().y);
  bg::correct(poly);
  return poly;
}

BPolygon ToBoostDegrees(const GeoPolygon &polygon) {
  BPolygon poly;
  auto &outer = poly.outer();
  outer.reserve(polygon.ring.size() + 1);
  for (const auto &p : polygon.ring) outer.emplace_back(p.lon, p.lat);
  if (!polygon.ring.empty()) {
    outer.emplace_back(polygon.ring.front().lon, polygon.ring.front().lat);
  }
  bg::correct(poly);
  return poly;
}

std::vector<PlanarPoint> FromBoostRing(const BPolygon::ring_type &ring) {
  std::vector<PlanarPoint> out;
  out.reserve(ring.size());
  for (const auto &p : ring) out.push_back({p.x(), p.y()});
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

double Cross(PlanarPoint o, PlanarPoint a, PlanarPoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double Dist(PlanarPoint a, PlanarPoint b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

bool NearlyCollinear(PlanarPoint a, PlanarPoint b, PlanarPoint c, double sine) {
  double scale = Dist(a, b) * Dist(b, c);
  return std::abs(Cross(a, b, c)) <= sine * scale;
}

// Drops vertices whose neighbours make them collinear until none remain.
void RemoveCollinear(std::vector<PlanarPoint> *ring, double sine) {
  bool changed = true;
  while (changed && ring->size() > 3) {
    changed = false;
    for (size_t i = 0; i < ring->size() && ring->size() > 3; ++i) {
      size_t n = ring->size();
      const auto &prev = (*ring)[(i + n - 1) % n];
      const auto &next = (*ring)[(i + 1) % n];
      if ((*ring)[i] == prev || NearlyCollinear(prev, (*ring)[i], next, sine)) {
        ring->erase(ring->begin() + static_cast<long>(i));
        changed = true;
        --i;
      }
    }
  }
}

BoundingBox PointsBounds(std::span<const GeoPoint> points) {
  BoundingBox box{points.front().lon, points.front().lat, points.front().lon,
                  points.front().lat};
  for (const auto &p : points) {
    box.min_lon = std::min(box.min_lon, p.lon);
    box.min_lat = std::min(box.min_lat, p.lat);
    box.max_lon = std::max(box.max_lon, p.lon);
    box.max_lat = std::max(box.max_lat, p.lat);
  }
  return box;
}

void CheckCoordinate(GeoPoint p) {
  if (!std::isfinite(p.lon) || !std::isfinite(p.lat) || p.lon < -180 ||
      p.lon > 180 || p.lat < -90 || p.lat > 90) {
    throw ValidationError(ValidationIssue::kCoordinateOutOfRange,
                          "coordinate (" + std::to_string(p.lon) + ", " +
                              std::to_string(p.lat) + ") out of range");
  }
}

BMulti IntersectBoost(const BPolygon &a, const BPolygon &b) {
  BMulti out;
  try {
    bg::intersection(a, b, out);
  } catch (const bg::exception &e) {
    throw ContractViolation(std::string("polygon intersection failed: ") +
                            e.what());
  }
  return out;
}

}  // namespace

bool BoundingBox::Valid() const {
  return std::isfinite(min_lon) && std::isfinite(min_lat) &&
         std::isfinite(max_lon) && std::isfinite(max_lat) &&
         min_lon <= max_lon && min_lat <= max_lat;
}

BoundingBox BoundingBox::Union(const BoundingBox &other) const {
  return {std::min(min_lon, other.min_lon), std::min(min_lat, other.min_lat),
          std::max(max_lon, other.max_lon), std::max(max_lat, other.max_lat)};
}

void ValidateBox(const BoundingBox &box) {
  if (!box.Valid()) {
    throw ValidationError(ValidationIssue::kInvalidBox,
                          "bounding box min exceeds max or is not finite");
  }
}

PlanarPoint ProjectPoint(GeoPoint p, GeoPoint origin) {
  double scale = kEarthRadiusMeters * kDegToRad;
  return {scale * std::cos(origin.lat * kDegToRad) * (p.lon - origin.lon),
          scale * (p.lat - origin.lat)};
}

GeoPoint UnprojectPoint(PlanarPoint p, GeoPoint origin) {
  double scale = kEarthRadiusMeters * kDegToRad;
  return {origin.lon + p.x / (scale * std::cos(origin.lat * kDegToRad)),
          origin.lat + p.y / scale};
}

namespace detail {

PlanarPolygon ProjectUnchecked(const GeoPolygon &polygon, GeoPoint origin) {
  PlanarPolygon out;
  out.origin = origin;
  out.ring.reserve(polygon.ring.size());
  for (const auto &p : polygon.ring) out.ring.push_back(ProjectPoint(p, origin));
  return out;
}

}  // namespace detail

void Validate(const GeoPolygon &polygon) {
  const auto &ring = polygon.ring;
  for (const auto &p : ring) CheckCoordinate(p);
  if (ring.size() < 3) {
    throw ValidationError(ValidationIssue::kTooFewVertices,
                          "ring needs at least 3 vertices, got " +
                              std::to_string(ring.size()));
  }
  if (ring.front() == ring.back()) {
    throw ValidationError(ValidationIssue::kClosedRing,
                          "ring must not repeat its first vertex at the end");
  }
  std::vector<GeoPoint> sorted = ring;
  std::sort(sorted.begin(), sorted.end(), [](GeoPoint a, GeoPoint b) {
    return a.lon != b.lon ? a.lon < b.lon : a.lat < b.lat;
  });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError(ValidationIssue::kRepeatedVertex,
                          "ring repeats a vertex");
  }

  PlanarPolygon planar =
      detail::ProjectUnchecked(polygon, PointsBounds(ring).Center());
  const auto &pr = planar.ring;
  for (size_t i = 0; i < pr.size(); ++i) {
    const auto &prev = pr[(i + pr.size() - 1) % pr.size()];
    const auto &next = pr[(i + 1) % pr.size()];
    if (NearlyCollinear(prev, pr[i], next, kCollinearSine)) {
      throw ValidationError(ValidationIssue::kCollinearVertices,
                            "vertices " + std::to_string(i) +
                                " and its neighbours are collinear");
    }
  }

  BPolygon poly = ToBoost(pr);
  bg::validity_failure_type failure;
  if (!bg::is_valid(poly, failure)) {
    throw ValidationError(ValidationIssue::kSelfIntersection,
                          std::string("ring is not simple: ") +
                              bg::validity_failure_type_message(failure));
  }
  if (!(RingArea(pr) > 0)) {
    throw ValidationError(ValidationIssue::kZeroArea, "ring has zero area");
  }
}

bool IsValid(const GeoPolygon &polygon) {
  try {
    Validate(polygon);
    return true;
  } catch (const ValidationError &) {
    return false;
  }
}

PlanarPolygon Project(const GeoPolygon &polygon, GeoPoint origin) {
  Validate(polygon);
  CheckCoordinate(origin);
  return detail::ProjectUnchecked(polygon, origin);
}

std::vector<GeoPoint> Unproject(const PlanarPolygon &polygon) {
  std::vector<GeoPoint> out;
  out.reserve(polygon.ring.size());
  for (const auto &p : polygon.ring) out.push_back(UnprojectPoint(p, polygon.origin));
  return out;
}

double RingArea(std::span<const PlanarPoint> ring) {
  double twice = 0;
  for (size_t i = 0, n = ring.size(); i < n; ++i) {
    const auto &a = ring[i];
    const auto &b = ring[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2;
}

double Area(const PlanarPolygon &polygon) {
  if (polygon.ring.size() < 3) {
    throw ValidationError(ValidationIssue::kTooFewVertices,
                          "area of a degenerate ring");
  }
  return RingArea(polygon.ring);
}

std::vector<PlanarPolygon> Intersection(const PlanarPolygon &a,
                                        const PlanarPolygon &b,
                                        double min_part_area) {
  if (!(a.origin == b.origin)) {
    throw ContractViolation("intersection of polygons with different origins");
  }
  BMulti parts = IntersectBoost(ToBoost(a.ring), ToBoost(b.ring));
  std::vector<PlanarPolygon> out;
  for (const auto &part : parts) {
    PlanarPolygon p{FromBoostRing(part.outer()), a.origin};
    if (p.ring.size() < 3 || !(RingArea(p.ring) > min_part_area)) continue;
    out.push_back(std::move(p));
  }
  return out;
}

GeoPoint PairOrigin(const GeoPolygon &a, const GeoPolygon &b) {
  return Bounds(a).Union(Bounds(b)).Center();
}

double OverlapArea(const GeoPolygon &a, const GeoPolygon &b) {
  if (!Bounds(a).Intersects(Bounds(b))) return 0;
  GeoPoint origin = PairOrigin(a, b);
  BPolygon pa = ToBoost(detail::ProjectUnchecked(a, origin).ring);
  BPolygon pb = ToBoost(detail::ProjectUnchecked(b, origin).ring);
  return bg::area(IntersectBoost(pa, pb));
}

bool Overlaps(const GeoPolygon &a, const GeoPolygon &b, double epsilon) {
  return OverlapArea(a, b) > epsilon;
}

GeoPolygon BufferPath(std::span<const GeoPoint> points, double width_meters,
                      std::string id, std::string category) {
  for (const auto &p : points) CheckCoordinate(p);
  std::vector<GeoPoint> path;
  for (const auto &p : points) {
    if (path.empty() || !(path.back() == p)) path.push_back(p);
  }
  if (path.size() < 2) {
    throw ValidationError(ValidationIssue::kTooFewVertices,
                          "path needs at least 2 distinct points");
  }
  if (!std::isfinite(width_meters) || width_meters <= 0) {
    throw ValidationError(ValidationIssue::kInvalidWidth,
                          "path width must be positive");
  }

  GeoPoint origin = PointsBounds(path).Center();
  BLine line;
  for (const auto &p : path) {
    PlanarPoint q = ProjectPoint(p, origin);
    line.emplace_back(q.x, q.y);
  }
  const int per_circle = 2 * kBufferArcSegments;
  BMulti buffered;
  bg::buffer(line, buffered,
             bg::strategy::buffer::distance_symmetric<double>(width_meters / 2),
             bg::strategy::buffer::side_straight(),
             bg::strategy::buffer::join_round(per_circle),
             bg::strategy::buffer::end_round(per_circle),
             bg::strategy::buffer::point_circle(per_circle));
  if (buffered.empty()) {
    throw ValidationError(ValidationIssue::kZeroArea, "path buffer is empty");
  }
  // A self-crossing path encloses holes; only the outline is kept.
  const BPolygon *largest = &buffered.front();
  for (const auto &part : buffered) {
    if (bg::area(part.outer()) > bg::area(largest->outer())) largest = &part;
  }
  std::vector<PlanarPoint> ring = FromBoostRing(largest->outer());
  RemoveCollinear(&ring, 1e-7);

  GeoPolygon out;
  out.id = std::move(id);
  out.category = std::move(category);
  out.ring = Unproject(PlanarPolygon{std::move(ring), origin});
  Validate(out);
  return out;
}

BoundingBox Bounds(const GeoPolygon &polygon) {
  if (polygon.ring.empty()) return {};
  return PointsBounds(polygon.ring);
}

bool IntersectsBox(const GeoPolygon &polygon, const BoundingBox &box) {
  if (!Bounds(polygon).Intersects(box)) return false;
  // The projection is affine per axis, so degree space gives the same answer.
  BBox b{BPoint{box.min_lon, box.min_lat}, BPoint{box.max_lon, box.max_lat}};
  return bg::intersects(b, ToBoostDegrees(polygon));
}

}  // namespace restrictplan
