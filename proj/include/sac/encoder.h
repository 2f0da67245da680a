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

// Sentence encoders. Each sentence's token ids become one h-dimensional
// vector read at the CLS position; stacking k of them gives the document
// matrix. Two small trainable encoders are provided, both with hand-written
// backward passes.

#ifndef SAC_ENCODER_H_
#define SAC_ENCODER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sac/matrix.h"
#include "sac/random.h"
#include "sac/segmenter.h"

namespace sac {

enum class EncoderKind : std::uint8_t {
  kMeanPool = 0,
  kMiniTransformer = 1,
};

std::string_view EncoderKindName(EncoderKind kind);
std::optional<EncoderKind> ParseEncoderKind(std::string_view name);

struct ModelDims {
  std::size_t hidden = 64;                          // h
  std::size_t labels = 50;                          // c
  std::size_t vocab_buckets = kDefaultVocabBuckets;
  std::size_t max_tokens = kDefaultMaxTokens;       // t_max
  std::size_t ffn = 128;                            // f

  std::size_t embedding_rows() const { return kFirstTokenId + vocab_buckets; }
  bool operator==(const ModelDims&) const = default;
};

template <typename T>
struct EncoderParams {
  EncoderKind kind = EncoderKind::kMeanPool;
  Matrix<T> embedding;  // (4 + vocab_buckets) x h
  Matrix<T> position;   // t_max x h

  // MeanPool: cls = tanh(pool_proj * mean(x) + pool_bias)
  Matrix<T> pool_proj;  // h x h
  Matrix<T> pool_bias;  // 1 x h

  // MiniTransformer: one attention + feed-forward block, no layer norm.
  Matrix<T> query;         // h x h
  Matrix<T> key;           // h x h
  Matrix<T> value;         // h x h
  Matrix<T> ffn_in;        // h x f
  Matrix<T> ffn_out;       // f x h
  Matrix<T> ffn_in_bias;   // 1 x f
  Matrix<T> ffn_out_bias;  // 1 x h

  static EncoderParams Zeros(EncoderKind kind, const ModelDims& dims);

  std::size_t hidden() const { return embedding.cols(); }

  // Visits the tensors that belong to `kind`, in serialization order.
  template <typename Fn>
  void ForEachTensor(Fn&& fn) {
    VisitTensors(*this, fn);
  }
  template <typename Fn>
  void ForEachTensor(Fn&& fn) const {
    VisitTensors(*this, fn);
  }

  template <typename U>
  EncoderParams<U> Cast() const;

 private:
  template <typename Self, typename Fn>
  static void VisitTensors(Self& self, Fn& fn) {
    fn("embedding", self.embedding);
    fn("position", self.position);
    if (self.kind == EncoderKind::kMeanPool) {
      fn("pool_proj", self.pool_proj);
      fn("pool_bias", self.pool_bias);
    } else {
      fn("query", self.query);
      fn("key", self.key);
      fn("value", self.value);
      fn("ffn_in", self.ffn_in);
      fn("ffn_out", self.ffn_out);
      fn("ffn_in_bias", self.ffn_in_bias);
      fn("ffn_out_bias", self.ffn_out_bias);
    }
  }
};

// Weights uniform in [-scale, scale], biases zero.
template <typename T>
EncoderParams<T> InitEncoder(EncoderKind kind, const ModelDims& dims, Rng& rng,
                             double scale = 0.05);

// Raises kShapeMismatch unless every tensor matches `dims`.
template <typename T>
void CheckEncoderShapes(const EncoderParams<T>& params, const ModelDims& dims);

// Everything the backward pass needs from one sentence.
template <typename T>
struct SentenceCache {
  std::vector<std::int32_t> ids;
  Matrix<T> inputs;  // m x h, x_p = E[id_p] + P[p]
  std::vector<T> cls;

  // MeanPool
  std::vector<T> mean;

  // MiniTransformer; only position 0 feeds the output, so only its query
  // row is needed.
  std::vector<T> query0;
  Matrix<T> keys;    // m x h
  Matrix<T> values;  // m x h
  std::vector<T> attention;  // m weights of position 0 over key positions
  std::vector<T> mixed;      // z_0 = x_0 + sum_p attention_p v_p
  std::vector<T> hidden;     // tanh(F1^T z_0 + g1)
};

template <typename T>
struct DocumentCache {
  EncoderKind kind = EncoderKind::kMeanPool;
  std::size_t hidden = 0;
  std::vector<SentenceCache<T>> sentences;
};

// Returns the CLS vector. `cache` may be null for inference.
template <typename T>
std::vector<T> EncodeSentence(const TokenSequence& tokens,
                              const EncoderParams<T>& params,
                              SentenceCache<T>* cache = nullptr);

// Document matrix stored sentence-major: row j is the CLS vector of sentence
// j, i.e. column j of the h x k matrix D.
template <typename T>
Matrix<T> EncodeDocument(std::span<const TokenSequence> sentences,
                         const EncoderParams<T>& params,
                         DocumentCache<T>* cache = nullptr);

// Adds d(loss)/d(params) into `grads`, which must be shaped like the params
// used for the forward call. `grad_doc` has the document matrix's layout.
// Raises kCacheMismatch when shapes disagree with the cache.
template <typename T>
void EncoderBackward(const DocumentCache<T>& cache,
                     const EncoderParams<T>& params, const Matrix<T>& grad_doc,
                     EncoderParams<T>* grads);

template <typename T>
template <typename U>
EncoderParams<U> EncoderParams<T>::Cast() const {
  EncoderParams<U> out;
  out.kind = kind;
  out.embedding = embedding.template Cast<U>();
  out.position = position.template Cast<U>();
  out.pool_proj = pool_proj.template Cast<U>();
  out.pool_bias = pool_bias.template Cast<U>();
  out.query = query.template Cast<U>();
  out.key = key.template Cast<U>();
  out.value = value.template Cast<U>();
  out.ffn_in = ffn_in.template Cast<U>();
  out.ffn_out = ffn_out.template Cast<U>();
  out.ffn_in_bias = ffn_in_bias.template Cast<U>();
  out.ffn_out_bias = ffn_out_bias.template Cast<U>();
  return out;
}

}  // namespace sac

#endif  // SAC_ENCODER_H_
