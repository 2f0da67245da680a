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

#include "sac/encoder.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sac/error.h"

namespace sac {
namespace {

template <typename T>
void FillUniform(Matrix<T>* m, Rng& rng, double scale) {
  for (T& v : m->flat()) v = static_cast<T>(rng.Uniform(-scale, scale));
}

template <typename T>
void ExpectShape(const Matrix<T>& m, std::size_t rows, std::size_t cols,
                 const char* name) {
  if (m.rows() != rows || m.cols() != cols) {
    Fail(ErrorCode::kShapeMismatch,
         std::string(name) + " is " + std::to_string(m.rows()) + "x" +
             std::to_string(m.cols()) + ", expected " + std::to_string(rows) +
             "x" + std::to_string(cols));
  }
}

// out[c] = sum_r in[r] * m(r, c)
template <typename T>
void RowTimesMatrix(std::span<const T> in, const Matrix<T>& m,
                    std::span<T> out) {
  std::fill(out.begin(), out.end(), T(0));
  for (std::size_t r = 0; r < m.rows(); ++r) Axpy(in[r], m.row(r), out);
}

// out[r] = sum_c m(r, c) * in[c]
template <typename T>
void MatrixTimesColumn(const Matrix<T>& m, std::span<const T> in,
                       std::span<T> out) {
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = Dot(m.row(r), in);
}

// grad(r, c) += a[r] * b[c]
template <typename T>
void AddOuter(std::span<const T> a, std::span<const T> b, Matrix<T>* grad) {
  for (std::size_t r = 0; r < a.size(); ++r) Axpy(a[r], b, grad->row(r));
}

template <typename T>
void CheckTokens(const TokenSequence& tokens, const EncoderParams<T>& params) {
  if (tokens.ids.empty() || tokens.size() > params.position.rows()) {
    Fail(ErrorCode::kShapeMismatch,
         "token sequence of length " + std::to_string(tokens.size()) +
             " does not fit " + std::to_string(params.position.rows()) +
             " positions");
  }
  for (std::int32_t id : tokens.ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= params.embedding.rows()) {
      Fail(ErrorCode::kShapeMismatch,
           "token id " + std::to_string(id) + " outside embedding table");
    }
  }
}

template <typename T>
std::vector<T> MeanPoolForward(const EncoderParams<T>& params,
                               SentenceCache<T>* cache) {
  const Matrix<T>& x = cache->inputs;
  const std::size_t h = params.hidden();
  std::vector<T> mean(h, T(0));
  for (std::size_t p = 0; p < x.rows(); ++p) Axpy(T(1), x.row(p), {mean});
  const T inv = T(1) / static_cast<T>(x.rows());
  for (T& v : mean) v *= inv;
  std::vector<T> cls(h);
  MatrixTimesColumn(params.pool_proj, std::span<const T>(mean), {cls});
  for (std::size_t a = 0; a < h; ++a) {
    cls[a] = std::tanh(cls[a] + params.pool_bias(0, a));
  }
  cache->mean = std::move(mean);
  return cls;
}

template <typename T>
std::vector<T> TransformerForward(const EncoderParams<T>& params,
                                  SentenceCache<T>* cache) {
  const Matrix<T>& x = cache->inputs;
  const std::size_t m = x.rows();
  const std::size_t h = params.hidden();
  const std::size_t f = params.ffn_in.cols();

  cache->query0.assign(h, T(0));
  RowTimesMatrix(x.row(0), params.query, {cache->query0});
  cache->keys = Matrix<T>(m, h);
  cache->values = Matrix<T>(m, h);
  for (std::size_t p = 0; p < m; ++p) {
    RowTimesMatrix(x.row(p), params.key, cache->keys.row(p));
    RowTimesMatrix(x.row(p), params.value, cache->values.row(p));
  }

  const T scale = T(1) / std::sqrt(static_cast<T>(h));
  std::vector<T>& attn = cache->attention;
  attn.assign(m, T(0));
  for (std::size_t p = 0; p < m; ++p) {
    attn[p] = Dot(std::span<const T>(cache->query0),
                  std::span<const T>(cache->keys.row(p))) * scale;
  }
  const T top = *std::max_element(attn.begin(), attn.end());
  T total = T(0);
  for (T& v : attn) {
    v = std::exp(v - top);
    total += v;
  }
  for (T& v : attn) v /= total;

  std::vector<T>& z = cache->mixed;
  z.assign(x.row(0).begin(), x.row(0).end());
  for (std::size_t p = 0; p < m; ++p) {
    Axpy(attn[p], std::span<const T>(cache->values.row(p)), {z});
  }

  std::vector<T>& u = cache->hidden;
  u.assign(f, T(0));
  RowTimesMatrix(std::span<const T>(z), params.ffn_in, {u});
  for (std::size_t j = 0; j < f; ++j) {
    u[j] = std::tanh(u[j] + params.ffn_in_bias(0, j));
  }

  std::vector<T> out(h, T(0));
  RowTimesMatrix(std::span<const T>(u), params.ffn_out, {out});
  for (std::size_t c = 0; c < h; ++c) {
    out[c] += z[c] + params.ffn_out_bias(0, c);
  }
  return out;
}

// Returns d(loss)/d(inputs) for one sentence and accumulates weight grads.
template <typename T>
Matrix<T> MeanPoolBackward(const SentenceCache<T>& cache,
                           const EncoderParams<T>& params,
                           std::span<const T> grad_cls,
                           EncoderParams<T>* grads) {
  const std::size_t h = params.hidden();
  const std::size_t m = cache.inputs.rows();
  std::vector<T> grad_pre(h);
  for (std::size_t a = 0; a < h; ++a) {
    grad_pre[a] = grad_cls[a] * (T(1) - cache.cls[a] * cache.cls[a]);
  }
  Axpy(T(1), std::span<const T>(grad_pre), grads->pool_bias.row(0));
  AddOuter(std::span<const T>(grad_pre), std::span<const T>(cache.mean),
           &grads->pool_proj);
  std::vector<T> grad_mean(h);
  RowTimesMatrix(std::span<const T>(grad_pre), params.pool_proj,
                 {grad_mean});
  Matrix<T> grad_inputs(m, h);
  const T inv = T(1) / static_cast<T>(m);
  for (std::size_t p = 0; p < m; ++p) {
    Axpy(inv, std::span<const T>(grad_mean), grad_inputs.row(p));
  }
  return grad_inputs;
}

template <typename T>
Matrix<T> TransformerBackward(const SentenceCache<T>& cache,
                              const EncoderParams<T>& params,
                              std::span<const T> grad_out,
                              EncoderParams<T>* grads) {
  const Matrix<T>& x = cache.inputs;
  const std::size_t m = x.rows();
  const std::size_t h = params.hidden();
  const std::size_t f = params.ffn_in.cols();
  Matrix<T> grad_x(m, h);

  // Feed-forward with residual: out = z + F2^T u + g2, u = tanh(F1^T z + g1).
  Axpy(T(1), grad_out, grads->ffn_out_bias.row(0));
  AddOuter(std::span<const T>(cache.hidden), grad_out, &grads->ffn_out);
  std::vector<T> grad_act(f);
  MatrixTimesColumn(params.ffn_out, grad_out, {grad_act});
  for (std::size_t j = 0; j < f; ++j) {
    grad_act[j] *= T(1) - cache.hidden[j] * cache.hidden[j];
  }
  Axpy(T(1), std::span<const T>(grad_act), grads->ffn_in_bias.row(0));
  AddOuter(std::span<const T>(cache.mixed), std::span<const T>(grad_act),
           &grads->ffn_in);
  std::vector<T> grad_z(grad_out.begin(), grad_out.end());
  std::vector<T> via_ffn(h);
  MatrixTimesColumn(params.ffn_in, std::span<const T>(grad_act), {via_ffn});
  for (std::size_t c = 0; c < h; ++c) grad_z[c] += via_ffn[c];

  // Attention with residual: z = x_0 + sum_p a_p v_p.
  Axpy(T(1), std::span<const T>(grad_z), grad_x.row(0));
  std::vector<T> grad_attn(m);
  for (std::size_t p = 0; p < m; ++p) {
    grad_attn[p] = Dot(std::span<const T>(grad_z), cache.values.row(p));
  }
  T weighted = T(0);
  for (std::size_t p = 0; p < m; ++p) {
    weighted += cache.attention[p] * grad_attn[p];
  }
  const T scale = T(1) / std::sqrt(static_cast<T>(h));
  std::vector<T> grad_query0(h, T(0));
  std::vector<T> grad_row(h);
  std::vector<T> back(h);
  for (std::size_t p = 0; p < m; ++p) {
    const T grad_logit = cache.attention[p] * (grad_attn[p] - weighted);
    const T grad_dot = grad_logit * scale;
    Axpy(grad_dot, cache.keys.row(p), {grad_query0});

    // key row p: k_p = x_p K
    for (std::size_t c = 0; c < h; ++c) grad_row[c] = grad_dot * cache.query0[c];
    AddOuter(x.row(p), std::span<const T>(grad_row), &grads->key);
    MatrixTimesColumn(params.key, std::span<const T>(grad_row), {back});
    Axpy(T(1), std::span<const T>(back), grad_x.row(p));

    // value row p: v_p = x_p V
    for (std::size_t c = 0; c < h; ++c) {
      grad_row[c] = cache.attention[p] * grad_z[c];
    }
    AddOuter(x.row(p), std::span<const T>(grad_row), &grads->value);
    MatrixTimesColumn(params.value, std::span<const T>(grad_row), {back});
    Axpy(T(1), std::span<const T>(back), grad_x.row(p));
  }
  AddOuter(x.row(0), std::span<const T>(grad_query0), &grads->query);
  MatrixTimesColumn(params.query, std::span<const T>(grad_query0), {back});
  Axpy(T(1), std::span<const T>(back), grad_x.row(0));
  return grad_x;
}

}  // namespace

std::string_view EncoderKindName(EncoderKind kind) {
  return kind == EncoderKind::kMeanPool ? "meanpool" : "minitransformer";
}

std::optional<EncoderKind> ParseEncoderKind(std::string_view name) {
  if (name == "meanpool" || name == "MeanPool") return EncoderKind::kMeanPool;
  if (name == "minitransformer" || name == "MiniTransformer") {
    return EncoderKind::kMiniTransformer;
  }
  return std::nullopt;
}

template <typename T>
EncoderParams<T> EncoderParams<T>::Zeros(EncoderKind kind,
                                         const ModelDims& dims) {
  const std::size_t h = dims.hidden;
  EncoderParams p;
  p.kind = kind;
  p.embedding = Matrix<T>(dims.embedding_rows(), h);
  p.position = Matrix<T>(dims.max_tokens, h);
  if (kind == EncoderKind::kMeanPool) {
    p.pool_proj = Matrix<T>(h, h);
    p.pool_bias = Matrix<T>(1, h);
  } else {
    p.query = Matrix<T>(h, h);
    p.key = Matrix<T>(h, h);
    p.value = Matrix<T>(h, h);
    p.ffn_in = Matrix<T>(h, dims.ffn);
    p.ffn_out = Matrix<T>(dims.ffn, h);
    p.ffn_in_bias = Matrix<T>(1, dims.ffn);
    p.ffn_out_bias = Matrix<T>(1, h);
  }
  return p;
}

template <typename T>
EncoderParams<T> InitEncoder(EncoderKind kind, const ModelDims& dims, Rng& rng,
                             double scale) {
  auto p = EncoderParams<T>::Zeros(kind, dims);
  FillUniform(&p.embedding, rng, scale);
  FillUniform(&p.position, rng, scale);
  if (kind == EncoderKind::kMeanPool) {
    FillUniform(&p.pool_proj, rng, scale);
  } else {
    FillUniform(&p.query, rng, scale);
    FillUniform(&p.key, rng, scale);
    FillUniform(&p.value, rng, scale);
    FillUniform(&p.ffn_in, rng, scale);
    FillUniform(&p.ffn_out, rng, scale);
  }
  return p;
}

template <typename T>
void CheckEncoderShapes(const EncoderParams<T>& params, const ModelDims& dims) {
  const std::size_t h = dims.hidden;
  ExpectShape(params.embedding, dims.embedding_rows(), h, "embedding");
  ExpectShape(params.position, dims.max_tokens, h, "position");
  if (params.kind == EncoderKind::kMeanPool) {
    ExpectShape(params.pool_proj, h, h, "pool_proj");
    ExpectShape(params.pool_bias, 1, h, "pool_bias");
  } else {
    ExpectShape(params.query, h, h, "query");
    ExpectShape(params.key, h, h, "key");
    ExpectShape(params.value, h, h, "value");
    ExpectShape(params.ffn_in, h, dims.ffn, "ffn_in");
    ExpectShape(params.ffn_out, dims.ffn, h, "ffn_out");
    ExpectShape(params.ffn_in_bias, 1, dims.ffn, "ffn_in_bias");
    ExpectShape(params.ffn_out_bias, 1, h, "ffn_out_bias");
  }
}

template <typename T>
std::vector<T> EncodeSentence(const TokenSequence& tokens,
                              const EncoderParams<T>& params,
                              SentenceCache<T>* cache) {
  CheckTokens(tokens, params);
  SentenceCache<T> local;
  SentenceCache<T>* c = cache != nullptr ? cache : &local;
  const std::size_t m = tokens.size();
  const std::size_t h = params.hidden();
  c->ids = tokens.ids;
  c->inputs = Matrix<T>(m, h);
  for (std::size_t p = 0; p < m; ++p) {
    auto row = c->inputs.row(p);
    auto emb = params.embedding.row(static_cast<std::size_t>(tokens.ids[p]));
    auto pos = params.position.row(p);
    for (std::size_t a = 0; a < h; ++a) row[a] = emb[a] + pos[a];
  }
  c->cls = params.kind == EncoderKind::kMeanPool
               ? MeanPoolForward(params, c)
               : TransformerForward(params, c);
  return c->cls;
}

template <typename T>
Matrix<T> EncodeDocument(std::span<const TokenSequence> sentences,
                         const EncoderParams<T>& params,
                         DocumentCache<T>* cache) {
  if (sentences.empty()) {
    Fail(ErrorCode::kShapeMismatch, "document has no sentences");
  }
  const std::size_t h = params.hidden();
  Matrix<T> doc(sentences.size(), h);
  if (cache != nullptr) {
    cache->kind = params.kind;
    cache->hidden = h;
    cache->sentences.assign(sentences.size(), {});
  }
  for (std::size_t j = 0; j < sentences.size(); ++j) {
    SentenceCache<T>* sc =
        cache != nullptr ? &cache->sentences[j] : nullptr;
    auto cls = EncodeSentence(sentences[j], params, sc);
    std::copy(cls.begin(), cls.end(), doc.row(j).begin());
  }
  return doc;
}

template <typename T>
void EncoderBackward(const DocumentCache<T>& cache,
                     const EncoderParams<T>& params, const Matrix<T>& grad_doc,
                     EncoderParams<T>* grads) {
  if (cache.kind != params.kind || grads->kind != params.kind ||
      cache.hidden != params.hidden() ||
      grad_doc.rows() != cache.sentences.size() ||
      grad_doc.cols() != cache.hidden) {
    Fail(ErrorCode::kCacheMismatch,
         "document gradient does not match the forward cache");
  }
  for (std::size_t j = 0; j < cache.sentences.size(); ++j) {
    const SentenceCache<T>& sc = cache.sentences[j];
    Matrix<T> grad_inputs =
        params.kind == EncoderKind::kMeanPool
            ? MeanPoolBackward(sc, params, grad_doc.row(j), grads)
            : TransformerBackward(sc, params, grad_doc.row(j), grads);
    for (std::size_t p = 0; p < sc.ids.size(); ++p) {
      auto g = std::span<const T>(grad_inputs.row(p));
      Axpy(T(1), g, grads->embedding.row(static_cast<std::size_t>(sc.ids[p])));
      Axpy(T(1), g, grads->position.row(p));
    }
  }
}

#define SAC_INSTANTIATE_ENCODER(T)                                            \
  template struct EncoderParams<T>;                                           \
  template EncoderParams<T> InitEncoder<T>(EncoderKind, const ModelDims&,     \
                                           Rng&, double);                     \
  template void CheckEncoderShapes<T>(const EncoderParams<T>&,                \
                                      const ModelDims&);                      \
  template std::vector<T> EncodeSentence<T>(                                  \
      const TokenSequence&, const EncoderParams<T>&, SentenceCache<T>*);      \
  template Matrix<T> EncodeDocument<T>(std::span<const TokenSequence>,        \
                                       const EncoderParams<T>&,               \
                                       DocumentCache<T>*);                    \
  template void EncoderBackward<T>(const DocumentCache<T>&,                   \
                                   const EncoderParams<T>&, const Matrix<T>&, \
                                   EncoderParams<T>*);

SAC_INSTANTIATE_ENCODER(float)
SAC_INSTANTIATE_ENCODER(double)

#undef SAC_INSTANTIATE_ENCODER

}  // namespace sac
