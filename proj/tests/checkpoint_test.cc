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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "sac/checkpoint.h"
#include "sac/error.h"
#include "sac/random.h"
#include "sac/segmenter.h"
#include "test_util.h"

namespace {

sac::Checkpoint MakeCheckpoint(sac::EncoderKind kind, std::uint64_t seed) {
  sac::Checkpoint ckpt;
  ckpt.dims.hidden = 6;
  ckpt.dims.labels = 3;
  ckpt.dims.vocab_buckets = 17;
  ckpt.dims.max_tokens = 8;
  ckpt.dims.ffn = 5;
  ckpt.kind = kind;
  ckpt.vocabulary = {"B82Y", "G06N", "H04L"};
  sac::Rng rng(seed);
  ckpt.params = sac::InitModel<float>(kind, ckpt.dims, rng);
  return ckpt;
}

std::size_t TensorFloats(const sac::Checkpoint& ckpt) {
  std::size_t n = 0;
  ckpt.params.ForEachTensor(
      [&](const char*, const sac::Matrix<float>& m) { n += m.size(); });
  return n;
}

std::uint32_t ReadU32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return b[at] | (b[at + 1] << 8) | (b[at + 2] << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

sac::ErrorCode LoadError(const std::vector<std::uint8_t>& bytes) {
  try {
    sac::DeserializeCheckpoint(bytes);
  } catch (const sac::Error& e) {
    return e.code();
  }
  FAIL("checkpoint unexpectedly loaded");
  return sac::ErrorCode::kUsage;
}

}  // namespace

TEST_CASE("crc32 check value") {
  const std::string s = "123456789";
  CHECK(sac::Crc32(std::span(reinterpret_cast<const std::uint8_t*>(s.data()),
                             s.size())) == 0xCBF43926u);
}

TEST_CASE("binary layout") {
  const auto ckpt = MakeCheckpoint(sac::EncoderKind::kMiniTransformer, 1);
  const auto bytes = sac::SerializeCheckpoint(ckpt);
  REQUIRE(bytes.size() > 33);
  CHECK(std::memcmp(bytes.data(), "SATN", 4) == 0);
  CHECK(ReadU32(bytes, 4) == 1);   // version
  CHECK(ReadU32(bytes, 8) == 6);   // h
  CHECK(ReadU32(bytes, 12) == 3);  // c
  CHECK(ReadU32(bytes, 16) == 17);
  CHECK(ReadU32(bytes, 20) == 8);
  CHECK(ReadU32(bytes, 24) == 5);
  CHECK(bytes[28] == 1);
  CHECK(ReadU32(bytes, 29) == 3);
  CHECK(bytes[33] == 4);
  CHECK(bytes[34] == 0);
  CHECK(std::memcmp(bytes.data() + 35, "B82Y", 4) == 0);
  const std::size_t vocab_bytes = 4 + 3 * (2 + 4);
  CHECK(bytes.size() == 29 + vocab_bytes + 4 * TensorFloats(ckpt) + 4);

  // First tensor value is E[0][0], stored as a little-endian float.
  float e00 = 0;
  std::uint32_t raw = ReadU32(bytes, 29 + vocab_bytes);
  std::memcpy(&e00, &raw, 4);
  CHECK(e00 == ckpt.params.encoder.embedding(0, 0));

  const std::uint32_t crc = ReadU32(bytes, bytes.size() - 4);
  CHECK(crc == sac::Crc32(std::span(bytes.data(), bytes.size() - 4)));
}

TEST_CASE("round trip is bit exact for both kinds") {
  for (auto kind : {sac::EncoderKind::kMeanPool, sac::EncoderKind::kMiniTransformer}) {
    const auto ckpt = MakeCheckpoint(kind, 2);
    const auto dir = test::ScratchDir("ckpt_roundtrip");
    sac::SaveCheckpoint(ckpt, dir / "m.satn");
    const auto back = sac::LoadCheckpoint(dir / "m.satn");
    CHECK(back.dims == ckpt.dims);
    CHECK(back.kind == kind);
    CHECK(back.vocabulary == ckpt.vocabulary);
    std::vector<const sac::Matrix<float>*> a, b;
    ckpt.params.ForEachTensor([&](const char*, const sac::Matrix<float>& m) { a.push_back(&m); });
    back.params.ForEachTensor([&](const char*, const sac::Matrix<float>& m) { b.push_back(&m); });
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::memcmp(a[i]->flat().data(), b[i]->flat().data(),
                        a[i]->size() * sizeof(float)) == 0);
    }
    const sac::TokenizedDocument doc = {
        sac::Tokenize("A widget spins.", 8, 17),
        sac::Tokenize("It has gears.", 8, 17)};
    const auto before = sac::ModelForward(ckpt.params, doc);
    const auto after = sac::ModelForward(back.params, doc);
    CHECK(std::memcmp(before.data(), after.data(), before.size() * sizeof(float)) == 0);
    CHECK(sac::SerializeCheckpoint(back) == sac::SerializeCheckpoint(ckpt));
  }
}

TEST_CASE("corruption is detected") {
  const auto good = sac::SerializeCheckpoint(MakeCheckpoint(sac::EncoderKind::kMeanPool, 3));

  auto flipped = good;
  flipped[good.size() / 2] ^= 0x40;
  CHECK(LoadError(flipped) == sac::ErrorCode::kChecksumMismatch);

  auto bad_crc = good;
  bad_crc.back() ^= 0x01;
  CHECK(LoadError(bad_crc) == sac::ErrorCode::kChecksumMismatch);

  auto truncated = good;
  truncated.resize(good.size() / 2);
  CHECK(LoadError(truncated) == sac::ErrorCode::kTruncatedFile);
  truncated.resize(10);
  CHECK(LoadError(truncated) == sac::ErrorCode::kTruncatedFile);

  auto magic = good;
  magic[0] = 'X';
  CHECK(LoadError(magic) == sac::ErrorCode::kBadMagic);

  auto version = good;
  version[4] = 2;
  CHECK(LoadError(version) == sac::ErrorCode::kUnsupportedVersion);

  auto trailing = good;
  trailing.push_back(0);
  CHECK(LoadError(trailing) == sac::ErrorCode::kChecksumMismatch);
}

TEST_CASE("vocabulary size must match c") {
  auto ckpt = MakeCheckpoint(sac::EncoderKind::kMeanPool, 4);
  ckpt.vocabulary.pop_back();
  bool rejected = false;
  try {
    sac::DeserializeCheckpoint(sac::SerializeCheckpoint(ckpt));
  } catch (const sac::Error& e) {
    rejected = e.code() == sac::ErrorCode::kDimsMismatch ||
               e.code() == sac::ErrorCode::kShapeMismatch;
  }
  CHECK(rejected);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(sac::LoadCheckpoint("/nonexistent/m.satn"), sac::Error);
}
