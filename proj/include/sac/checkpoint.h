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

// Binary model checkpoint, version 1. All integers little-endian.
//
//   "SATN"                       4 bytes
//   u32 version                  = 1
//   u32 h, c, v_buckets, t_max, f
//   u8  encoder kind             0 = MeanPool, 1 = MiniTransformer
//   u32 vocabulary size, then per code: u16 byte length + UTF-8 bytes
//   f32 tensors, row-major: embedding, position, encoder-kind tensors in
//       declaration order, head attention, head weights, head bias
//   u32 CRC-32 of every preceding byte

#ifndef SAC_CHECKPOINT_H_
#define SAC_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sac/model.h"

namespace sac {

inline constexpr char kCheckpointMagic[4] = {'S', 'A', 'T', 'N'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelDims dims;
  EncoderKind kind = EncoderKind::kMeanPool;
  std::vector<std::string> vocabulary;  // dims.labels codes, label order
  ModelParams<float> params;
};

std::vector<std::uint8_t> SerializeCheckpoint(const Checkpoint& checkpoint);

// Raises kBadMagic, kUnsupportedVersion, kTruncatedFile, kChecksumMismatch or
// kDimsMismatch.
Checkpoint DeserializeCheckpoint(std::span<const std::uint8_t> bytes);

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

std::uint32_t Crc32(std::span<const std::uint8_t> bytes);

}  // namespace sac

#endif  // SAC_CHECKPOINT_H_
