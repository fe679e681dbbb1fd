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

#ifndef MACC_ERROR_HPP
#define MACC_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace macc {

enum class ErrorCode {
  kInvalidParameter,
  kInvalidSubset,
  kDuplicateSubset,
  kCyclicRequiresKEqualsC,
  kSubsetTooSmall,
  kIncompleteDemandVector,
  kDecodingFailure,
  kWrongAccessDegree,
  kRequiresDistinctDemands,
  kInstanceMismatch,
  kConfigError,
  kUnknownExample,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the decoder when a user cannot recover part of its file. Carries
/// the transmission (subset mask and slot) and the term group that blocked it.
class DecodingFailure : public Error {
 public:
  DecodingFailure(std::uint32_t subset, std::size_t slot, std::size_t group,
                  const std::string& reason);

  std::uint32_t subset() const noexcept { return subset_; }
  std::size_t slot() const noexcept { return slot_; }
  std::size_t group() const noexcept { return group_; }

 private:
  std::uint32_t subset_;
  std::size_t slot_;
  std::size_t group_;
};

}  // namespace macc

#endif  // MACC_ERROR_HPP
