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

#include "sac/checkpoint.h"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "sac/error.h"

namespace sac {
namespace {

class Writer {
 public:
  void U8(std::uint8_t v) { bytes_.push_back(v); }
  void U16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) bytes_.push_back((v >> (8 * i)) & 0xFF);
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back((v >> (8 * i)) & 0xFF);
  }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }
  void Raw(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }

  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t U8() { return Take(1)[0]; }
  std::uint16_t U16() {
    auto b = Take(2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  }
  std::uint32_t U32() {
    auto b = Take(4);
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }
  float F32() { return std::bit_cast<float>(U32()); }
  std::string Str(std::size_t n) {
    auto b = Take(n);
    return std::string(b.begin(), b.end());
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> Take(std::size_t n) {
    if (remaining() < n) {
      Fail(ErrorCode::kTruncatedFile,
           "needed " + std::to_string(n) + " bytes at offset " +
               std::to_string(pos_) + ", file has " +
               std::to_string(bytes_.size()));
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t CheckedU32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    Fail(ErrorCode::kShapeMismatch, std::string(what) + " exceeds u32");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks for very large payloads.
  std::size_t off = 0;
  while (off < bytes.size()) {
    const std::size_t n =
        std::min<std::size_t>(bytes.size() - off, 1u << 30);
    crc = crc32(crc, bytes.data() + off, static_cast<uInt>(n));
    off += n;
  }
  return static_cast<std::uint32_t>(crc);
}

std::vector<std::uint8_t> SerializeCheckpoint(const Checkpoint& ckpt) {
  if (ckpt.vocabulary.size() != ckpt.dims.labels ||
      ckpt.params.encoder.kind != ckpt.kind) {
    Fail(ErrorCode::kDimsMismatch, "checkpoint header disagrees with params");
  }
  CheckModelShapes(ckpt.params, ckpt.dims);
  Writer w;
  w.Raw(std::string_view(kCheckpointMagic, 4));
  w.U32(kCheckpointVersion);
  w.U32(CheckedU32(ckpt.dims.hidden, "h"));
  w.U32(CheckedU32(ckpt.dims.labels, "c"));
  w.U32(CheckedU32(ckpt.dims.vocab_buckets, "v_buckets"));
  w.U32(CheckedU32(ckpt.dims.max_tokens, "t_max"));
  w.U32(CheckedU32(ckpt.dims.ffn, "f"));
  w.U8(static_cast<std::uint8_t>(ckpt.kind));
  w.U32(CheckedU32(ckpt.vocabulary.size(), "vocabulary"));
  for (const auto& code : ckpt.vocabulary) {
    if (code.size() > std::numeric_limits<std::uint16_t>::max()) {
      Fail(ErrorCode::kShapeMismatch, "vocabulary code too long");
    }
    w.U16(static_cast<std::uint16_t>(code.size()));
    w.Raw(code);
  }
  ckpt.params.ForEachTensor([&w](const char*, const Matrix<float>& m) {
    for (float v : m.flat()) w.F32(v);
  });
  w.U32(Crc32(w.bytes()));
  return std::move(w.bytes());
}

Checkpoint DeserializeCheckpoint(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 ||
      std::memcmp(bytes.data(), kCheckpointMagic, 4) != 0) {
    Fail(ErrorCode::kBadMagic, "not a SATN checkpoint");
  }
  Reader r(bytes);
  r.Str(4);
  const std::uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    Fail(ErrorCode::kUnsupportedVersion,
         "version " + std::to_string(version));
  }
  Checkpoint ckpt;
  ckpt.dims.hidden = r.U32();
  ckpt.dims.labels = r.U32();
  ckpt.dims.vocab_buckets = r.U32();
  ckpt.dims.max_tokens = r.U32();
  ckpt.dims.ffn = r.U32();
  const std::uint8_t kind = r.U8();
  if (kind > 1) Fail(ErrorCode::kChecksumMismatch, "unknown encoder kind");
  ckpt.kind = static_cast<EncoderKind>(kind);
  const std::uint32_t vocab = r.U32();
  if (vocab != ckpt.dims.labels) {
    Fail(ErrorCode::kDimsMismatch,
         "vocabulary has " + std::to_string(vocab) + " codes, c = " +
             std::to_string(ckpt.dims.labels));
  }
  for (std::uint32_t i = 0; i < vocab; ++i) {
    const std::uint16_t len = r.U16();
    ckpt.vocabulary.push_back(r.Str(len));
  }

  // Check the payload size before allocating anything dims-sized, so a
  // corrupted header cannot trigger a huge allocation.
  const ModelDims& d = ckpt.dims;
  const std::size_t h = d.hidden;
  std::size_t floats = d.embedding_rows() * h + d.max_tokens * h;
  if (ckpt.kind == EncoderKind::kMeanPool) {
    floats += h * h + h;
  } else {
    floats += 3 * h * h + 2 * h * d.ffn + d.ffn + h;
  }
  floats += 2 * d.labels * h + d.labels;
  if (r.remaining() < floats * 4 + 4) {
    Fail(ErrorCode::kTruncatedFile,
         "payload needs " + std::to_string(floats * 4 + 4) + " bytes, " +
             std::to_string(r.remaining()) + " left");
  }
  if (r.remaining() > floats * 4 + 4) {
    Fail(ErrorCode::kChecksumMismatch, "trailing bytes after checksum");
  }

  ckpt.params = ModelParams<float>::Zeros(ckpt.kind, ckpt.dims);
  ckpt.params.ForEachTensor([&r](const char*, Matrix<float>& m) {
    for (float& v : m.flat()) v = r.F32();
  });
  const std::size_t body = r.pos();
  const std::uint32_t stored = r.U32();
  if (stored != Crc32(bytes.subspan(0, body))) {
    Fail(ErrorCode::kChecksumMismatch, "CRC-32 does not match payload");
  }
  return ckpt;
}

void SaveCheckpoint(const Checkpoint& checkpoint,
                    const std::filesystem::path& path) {
  const auto bytes = SerializeCheckpoint(checkpoint);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kFileUnreadable, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kFileUnreadable, "write failed: " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kFileUnreadable, path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DeserializeCheckpoint(bytes);
}

}  // namespace sac
