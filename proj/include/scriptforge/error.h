// Copyright 2026 The Script Forge Authors.
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

#ifndef SCRIPTFORGE_ERROR_H_
#define SCRIPTFORGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace scriptforge {

// Structured error codes. The names are part of the machine-readable error
// payload emitted by the CLI and the HTTP service.
enum class ErrorCode {
  kInvalidArgument,
  kSchemaError,
  kDanglingEntityType,
  kDuplicateId,
  kUnknownType,
  kUnknownEvent,
  kUnknownVariable,
  kUnknownScript,
  kCycleError,
  kDuplicateRelation,
  kSelfRelation,
  kSelfAnchor,
  kRoleConstraintViolation,
  kRoleAlreadyFilled,
  kDimensionMismatch,
  kZeroVector,
  kProviderUnavailable,
  kDuplicateQid,
  kMalformedRow,
  kStaleCandidate,
  kEmptyRecordSet,
  kNoVariables,
  kEmptyLog,
  kSchemaVersionMismatch,
  kCorruptDocument,
  kVersionConflict,
  kValidationFailed,
  kNotFound,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base exception for every failure surfaced by the library. `details` holds
// code-specific structured data (cycle path, allowed entity types, field
// path, ...) and is copied verbatim into error payloads.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message,
        nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const { return code_; }
  const nlohmann::json &details() const { return details_; }

  // {"error": <code name>, "message": ..., "details": {...}}
  nlohmann::json ToJson() const;

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

}  // namespace scriptforge

#endif  // SCRIPTFORGE_ERROR_H_
