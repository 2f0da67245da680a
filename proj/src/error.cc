// Copyright 2026 The SAC Authors. All Rights Reserved.
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

#include "sac/error.h"

namespace sac {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedIpc: return "MalformedIpc";
    case ErrorCode::kFileUnreadable: return "FileUnreadable";
    case ErrorCode::kCorruptLine: return "CorruptLine";
    case ErrorCode::kNoLabels: return "NoLabels";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kCacheMismatch: return "CacheMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kDimsMismatch: return "DimsMismatch";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kTypeError: return "TypeError";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

}  // namespace sac
