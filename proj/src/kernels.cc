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

#include "restrictplan/kernels.h"

#include <algorithm>
#include <exception>

namespace restrictplan::kernels {

namespace {

bool AnyIntersects(const std::vector<DayRange> &intervals, const DayRange &b) {
  return std::any_of(intervals.begin(), intervals.end(),
                     [&](const DayRange &r) { return r.Intersects(b); });
}

}  // namespace

std::vector<double> OverlapAreasSerial(
    const GeoPolygon &subject, std::span<const GeoPolygon *const> candidates) {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const GeoPolygon *c : candidates) out.push_back(OverlapArea(subject, *c));
  return out;
}

std::vector<double> OverlapAreas(const GeoPolygon &subject,
                                 std::span<const GeoPolygon *const> candidates) {
  std::vector<double> out(candidates.size(), 0.0);
  std::exception_ptr failure;
  const long n = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4) if (n > 8)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = OverlapArea(subject, *candidates[i]);
    } catch (...) {
#pragma omp critical(restrictplan_overlap_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<int> CountDocumentsPerBucketSerial(
    std::span<const DayRange> buckets,
    std::span<const std::vector<DayRange>> documents) {
  std::vector<int> out(buckets.size(), 0);
  for (size_t b = 0; b < buckets.size(); ++b) {
    for (const auto &doc : documents) {
      if (AnyIntersects(doc, buckets[b])) ++out[b];
    }
  }
  return out;
}

std::vector<int> CountDocumentsPerBucket(
    std::span<const DayRange> buckets,
    std::span<const std::vector<DayRange>> documents) {
  std::vector<int> out(buckets.size(), 0);
  const long nb = static_cast<long>(buckets.size());
  const long nd = static_cast<long>(documents.size());
#pragma omp parallel for schedule(static) if (nb * nd > 4096)
  for (long b = 0; b < nb; ++b) {
    int count = 0;
    for (long d = 0; d < nd; ++d) {
      if (AnyIntersects(documents[d], buckets[b])) ++count;
    }
    out[b] = count;
  }
  return out;
}

}  // namespace restrictplan::kernels
