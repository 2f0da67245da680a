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

#ifndef SAC_HASH_H_
#define SAC_HASH_H_

#include <cstdint>
#include <string_view>

namespace sac {

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

// FNV-1a 64-bit. Pass a previous result as `state` to continue hashing.
constexpr std::uint64_t Fnv1a64(std::string_view bytes,
                                std::uint64_t state = kFnvOffsetBasis) {
  for (char ch : bytes) {
    state ^= static_cast<std::uint8_t>(ch);
    state *= kFnvPrime;
  }
  return state;
}

// Hash of the seed's 8 little-endian bytes followed by `id`.
constexpr std::uint64_t StableHash64(std::uint64_t seed, std::string_view id) {
  std::uint64_t state = kFnvOffsetBasis;
  for (int i = 0; i < 8; ++i) {
    state ^= (seed >> (8 * i)) & 0xFFu;
    state *= kFnvPrime;
  }
  return Fnv1a64(id, state);
}

}  // namespace sac

#endif  // SAC_HASH_H_
