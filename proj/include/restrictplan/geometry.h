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

#ifndef RESTRICTPLAN_GEOMETRY_H_
#define RESTRICTPLAN_GEOMETRY_H_

#include <span>
#include <string>
#include <vector>

#include "restrictplan/errors.h"

namespace restrictplan {

inline constexpr double kEarthRadiusMeters = 6371000.0;

// Minimum intersection area (m²) for two polygons to be linked by an
// overlap edge. Shared boundaries produce zero area and fall below it.
inline constexpr double kOverlapAreaEpsilon = 1.0;

// Intersection parts at or below this planar area are discarded.
inline constexpr double kPartAreaEpsilon = 1e-9;

inline constexpr double kDefaultPathWidthMeters = 5.0;

// Segments used to approximate half a circle at buffered path ends/joins.
inline constexpr int kBufferArcSegments = 8;

struct GeoPoint {
  double lon = 0;
  double lat = 0;

  friend bool operator==(const GeoPoint &, const GeoPoint &) = default;
};

struct BoundingBox {
  double min_lon = 0;
  double min_lat = 0;
  double max_lon = 0;
  double max_lat = 0;

  static BoundingBox World() { return {-180, -90, 180, 90}; }

  bool Valid() const;
  bool Intersects(const BoundingBox &other) const {
    return min_lon <= other.max_lon && other.min_lon <= max_lon &&
           min_lat <= other.max_lat && other.min_lat <= max_lat;
  }
  bool Contains(GeoPoint p) const {
    return p.lon >= min_lon && p.lon <= max_lon && p.lat >= min_lat &&
           p.lat <= max_lat;
  }
  GeoPoint Center() const {
    return {(min_lon + max_lon) / 2, (min_lat + max_lat) / 2};
  }
  BoundingBox Union(const BoundingBox &other) const;

  friend bool operator==(const BoundingBox &, const BoundingBox &) = default;
};

// Simple polygon in WGS84 degrees. The exterior ring is implicitly closed:
// the first vertex is not repeated at the end.
struct GeoPolygon {
  std::string id;
  std::string category;
  std::vector<GeoPoint> ring;
  // Optional display name (drawn projects carry one).
  std::string name;

  friend bool operator==(const GeoPolygon &, const GeoPolygon &) = default;
};

struct PlanarPoint {
  double x = 0;
  double y = 0;

  friend bool operator==(const PlanarPoint &, const PlanarPoint &) = default;
};

// Ring in meters on a local tangent plane anchored at `origin`.
struct PlanarPolygon {
  std::vector<PlanarPoint> ring;
  GeoPoint origin;
};

// Throws ValidationError naming the first violated invariant.
void Validate(const GeoPolygon &polygon);
void ValidateBox(const BoundingBox &box);
bool IsValid(const GeoPolygon &polygon);

// Equirectangular projection around `origin`.
PlanarPoint ProjectPoint(GeoPoint p, GeoPoint origin);
GeoPoint UnprojectPoint(PlanarPoint p, GeoPoint origin);

// Validates `polygon` before projecting.
PlanarPolygon Project(const GeoPolygon &polygon, GeoPoint origin);
std::vector<GeoPoint> Unproject(const PlanarPolygon &polygon);

// Shoelace area, orientation independent. Throws on fewer than 3 vertices.
double Area(const PlanarPolygon &polygon);
double RingArea(std::span<const PlanarPoint> ring);

// Boolean intersection. Both inputs must be simple and share a projection
// origin; a mismatch throws ContractViolation. Parts with area at or below
// `min_part_area` are dropped.
std::vector<PlanarPolygon> Intersection(const PlanarPolygon &a,
                                        const PlanarPolygon &b,
                                        double min_part_area = kPartAreaEpsilon);

// Projection origin used when comparing two polygons: the center of their
// joint bounding box, so the result does not depend on argument order.
GeoPoint PairOrigin(const GeoPolygon &a, const GeoPolygon &b);

// Intersection area in m² of two valid polygons.
double OverlapArea(const GeoPolygon &a, const GeoPolygon &b);

bool Overlaps(const GeoPolygon &a, const GeoPolygon &b,
              double epsilon = kOverlapAreaEpsilon);

// Buffers a polyline into a simple polygon of the given total width (m).
// Consecutive duplicate points are collapsed first. Throws ValidationError
// for fewer than 2 distinct points or a non-positive width.
GeoPolygon BufferPath(std::span<const GeoPoint> points, double width_meters,
                      std::string id = {}, std::string category = {});

BoundingBox Bounds(const GeoPolygon &polygon);

// True if the polygon's area (not only its bounding box) touches `box`.
bool IntersectsBox(const GeoPolygon &polygon, const BoundingBox &box);

namespace detail {
// Projection without validation, for callers that validated earlier.
PlanarPolygon ProjectUnchecked(const GeoPolygon &polygon, GeoPoint origin);
}  // namespace detail

}  // namespace restrictplan

#endif  // RESTRICTPLAN_GEOMETRY_H_
