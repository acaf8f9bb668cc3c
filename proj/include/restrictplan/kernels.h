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

#ifndef RESTRICTPLAN_KERNELS_H_
#define RESTRICTPLAN_KERNELS_H_

// Data-parallel inner loops. Each OpenMP kernel has a serial twin with the
// same contract; tests compare the two and the benchmark times them.

#include <span>
#include <vector>

#include "restrictplan/geometry.h"

namespace restrictplan::kernels {

// Intersection area (m²) of `subject` with each candidate.
std::vector<double> OverlapAreas(const GeoPolygon &subject,
                                 std::span<const GeoPolygon *const> candidates);
std::vector<double> OverlapAreasSerial(
    const GeoPolygon &subject, std::span<const GeoPolygon *const> candidates);

// Inclusive range of day serials.
struct DayRange {
  int first = 0;
  int last = 0;

  bool Intersects(const DayRange &o) const {
    return first <= o.last && o.first <= last;
  }
};

// For each bucket, the number of documents with at least one interval
// intersecting it. `documents[i]` lists the intervals of document i.
std::vector<int> CountDocumentsPerBucket(
    std::span<const DayRange> buckets,
    std::span<const std::vector<DayRange>> documents);
std::vector<int> CountDocumentsPerBucketSerial(
    std::span<const DayRange> buckets,
    std::span<const std::vector<DayRange>> documents);

}  // namespace restrictplan::kernels

#endif  // RESTRICTPLAN_KERNELS_H_
