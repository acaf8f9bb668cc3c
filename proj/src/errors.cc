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

#include "restrictplan/errors.h"

namespace restrictplan {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
  }
  return "io";
}

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation:
    case ErrorCode::kParse: return 400;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

std::string_view ValidationIssueName(ValidationIssue issue) {
  switch (issue) {
    case ValidationIssue::kCoordinateOutOfRange: return "coordinate_out_of_range";
    case ValidationIssue::kTooFewVertices: return "too_few_vertices";
    case ValidationIssue::kClosedRing: return "closed_ring";
    case ValidationIssue::kRepeatedVertex: return "repeated_vertex";
    case ValidationIssue::kCollinearVertices: return "collinear_vertices";
    case ValidationIssue::kSelfIntersection: return "self_intersection";
    case ValidationIssue::kZeroArea: return "zero_area";
    case ValidationIssue::kInvalidWidth: return "invalid_width";
    case ValidationIssue::kInvalidDate: return "invalid_date";
    case ValidationIssue::kInvalidExtent: return "invalid_extent";
    case ValidationIssue::kInvalidBox: return "invalid_bbox";
    case ValidationIssue::kMissingField: return "missing_field";
  }
  return "unknown";
}

LoadError::LoadError(std::string path, int line, const std::string &reason)
    : Error(ErrorCode::kParse,
            path + ":" + std::to_string(line) + ": " + reason),
      path_(std::move(path)),
      line_(line) {}

}  // namespace restrictplan
