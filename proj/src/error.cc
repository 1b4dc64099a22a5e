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

#include "scriptforge/error.h"

namespace scriptforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kDanglingEntityType: return "DanglingEntityType";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownType: return "UnknownType";
    case ErrorCode::kUnknownEvent: return "UnknownEvent";
    case ErrorCode::kUnknownVariable: return "UnknownVariable";
    case ErrorCode::kUnknownScript: return "UnknownScript";
    case ErrorCode::kCycleError: return "CycleError";
    case ErrorCode::kDuplicateRelation: return "DuplicateRelation";
    case ErrorCode::kSelfRelation: return "SelfRelation";
    case ErrorCode::kSelfAnchor: return "SelfAnchor";
    case ErrorCode::kRoleConstraintViolation: return "RoleConstraintViolation";
    case ErrorCode::kRoleAlreadyFilled: return "RoleAlreadyFilled";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::kDuplicateQid: return "DuplicateQid";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kStaleCandidate: return "StaleCandidate";
    case ErrorCode::kEmptyRecordSet: return "EmptyRecordSet";
    case ErrorCode::kNoVariables: return "NoVariables";
    case ErrorCode::kEmptyLog: return "EmptyLog";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kCorruptDocument: return "CorruptDocument";
    case ErrorCode::kVersionConflict: return "VersionConflict";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

nlohmann::json Error::ToJson() const {
  return {{"error", std::string(ErrorCodeName(code_))},
          {"message", what()},
          {"details", details_}};
}

}  // namespace scriptforge
