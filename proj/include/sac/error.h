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

#ifndef SAC_ERROR_H_
#define SAC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sac {

enum class ErrorCode {
  kMalformedIpc,
  kFileUnreadable,
  kCorruptLine,
  kNoLabels,
  kEmptyInput,
  kEmptyText,
  kShapeMismatch,
  kCacheMismatch,
  kLengthMismatch,
  kEmptySplit,
  kDimsMismatch,
  kNonFiniteLoss,
  kBadMagic,
  kUnsupportedVersion,
  kChecksumMismatch,
  kTruncatedFile,
  kUnknownKey,
  kTypeError,
  kUsage,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(ErrorCodeName(code)) + ": " + what);
}

}  // namespace sac

#endif  // SAC_ERROR_H_
