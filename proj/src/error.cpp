// Copyright 2026 The macc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "macc/error.hpp"

#include <fmt/format.h>

#include "macc/subset.hpp"

namespace macc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kInvalidSubset: return "InvalidSubset";
    case ErrorCode::kDuplicateSubset: return "DuplicateSubset";
    case ErrorCode::kCyclicRequiresKEqualsC: return "CyclicRequiresKEqualsC";
    case ErrorCode::kSubsetTooSmall: return "SubsetTooSmall";
    case ErrorCode::kIncompleteDemandVector: return "IncompleteDemandVector";
    case ErrorCode::kDecodingFailure: return "DecodingFailure";
    case ErrorCode::kWrongAccessDegree: return "WrongAccessDegree";
    case ErrorCode::kRequiresDistinctDemands: return "RequiresDistinctDemands";
    case ErrorCode::kInstanceMismatch: return "InstanceMismatch";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kUnknownExample: return "UnknownExample";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(fmt::format("{}: {}", error_code_name(code), what)), code_(code) {}

DecodingFailure::DecodingFailure(std::uint32_t subset, std::size_t slot, std::size_t group,
                                 const std::string& reason)
    : Error(ErrorCode::kDecodingFailure,
            fmt::format("S={} l={} term group {}: {}", format_mask_hex(subset), slot, group,
                        reason)),
      subset_(subset),
      slot_(slot),
      group_(group) {}

}  // namespace macc
