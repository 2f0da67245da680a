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

#include "sac/head.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sac/error.h"

namespace sac {

template <typename T>
HeadParams<T> InitHead(std::size_t labels, std::size_t hidden, Rng& rng,
                       double scale) {
  auto p = HeadParams<T>::Zeros(labels, hidden);
  for (T& v : p.attention.flat()) v = static_cast<T>(rng.Uniform(-scale, scale));
  for (T& v : p.weights.flat()) v = static_cast<T>(rng.Uniform(-scale, scale));
  return p;
}

template <typename T>
Matrix<T> AttentionForward(const Matrix<T>& doc, const Matrix<T>& attention,
                           Matrix<T>* squashed) {
  if (doc.rows() == 0 || doc.cols() != attention.cols()) {
    Fail(ErrorCode::kShapeMismatch,
         "document width " + std::to_string(doc.cols()) +
             " vs attention width " + std::to_string(attention.cols()));
  }
  const std::size_t c = attention.rows();
  const std::size_t k = doc.rows();
  Matrix<T> z(c, k);
  Matrix<T> alpha(c, k);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      z(i, j) = std::tanh(Dot(attention.row(i), doc.row(j)));
    }
    auto zi = z.row(i);
    const T top = *std::max_element(zi.begin(), zi.end());
    T total = T(0);
    for (std::size_t j = 0; j < k; ++j) {
      alpha(i, j) = std::exp(zi[j] - top);
      total += alpha(i, j);
    }
    for (std::size_t j = 0; j < k; ++j) alpha(i, j) /= total;
  }
  if (squashed != nullptr) *squashed = std::move(z);
  return alpha;
}

template <typename T>
Matrix<T> PoolLabels(const Matrix<T>& alpha, const Matrix<T>& doc) {
  if (alpha.cols() != doc.rows()) {
    Fail(ErrorCode::kShapeMismatch,
         "attention over " + std::to_string(alpha.cols()) +
             " sentences, document has " + std::to_string(doc.rows()));
  }
  Matrix<T> pooled(alpha.rows(), doc.cols());
  for (std::size_t i = 0; i < alpha.rows(); ++i) {
    for (std::size_t j = 0; j < doc.rows(); ++j) {
      Axpy(alpha(i, j), doc.row(j), pooled.row(i));
    }
  }
  return pooled;
}

template <typename T>
T Sigmoid(T x) {
  if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
  const T e = std::exp(x);
  return e / (T(1) + e);
}

template <typename T>
std::vector<T> ScoreLabels(const Matrix<T>& pooled, const Matrix<T>& weights,
                           const Matrix<T>& bias, std::vector<T>* logits) {
  if (!pooled.SameShape(weights) || bias.rows() != 1 ||
      bias.cols() != weights.rows()) {
    Fail(ErrorCode::kShapeMismatch, "label representations vs classifier");
  }
  const std::size_t c = weights.rows();
  std::vector<T> raw(c);
  std::vector<T> scores(c);
  for (std::size_t i = 0; i < c; ++i) {
    raw[i] = Dot(weights.row(i), pooled.row(i)) + bias(0, i);
    scores[i] = Sigmoid(raw[i]);
  }
  if (logits != nullptr) *logits = std::move(raw);
  return scores;
}

template <typename T>
LabelVector Predict(std::span<const T> scores, double threshold) {
  LabelVector bits(scores.size(), 0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    bits[i] = static_cast<double>(scores[i]) > threshold ? 1 : 0;
  }
  return bits;
}

template <typename T>
T BceLoss(std::span<const T> logits, const LabelVector& targets) {
  if (logits.size() != targets.size() || logits.empty()) {
    Fail(ErrorCode::kShapeMismatch, "logits vs targets length");
  }
  // -[y ln s(x) + (1-y) ln(1-s(x))] = max(x,0) - x y + ln(1 + e^-|x|)
  T total = T(0);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const T x = logits[i];
    const T y = static_cast<T>(targets[i]);
    total += std::max(x, T(0)) - x * y + std::log1p(std::exp(-std::abs(x)));
  }
  return total / static_cast<T>(logits.size());
}

template <typename T>
std::vector<T> HeadForward(const Matrix<T>& doc, const HeadParams<T>& params,
                           AttentionMode mode, HeadCache<T>* cache) {
  HeadCache<T> local;
  HeadCache<T>* hc = cache != nullptr ? cache : &local;
  hc->mode = mode;
  if (mode == AttentionMode::kLearned) {
    hc->alpha = AttentionForward(doc, params.attention, &hc->squashed);
  } else {
    if (doc.rows() == 0 || doc.cols() != params.hidden()) {
      Fail(ErrorCode::kShapeMismatch, "document vs head width");
    }
    hc->squashed = Matrix<T>();
    hc->alpha = Matrix<T>(params.labels(), doc.rows(),
                          T(1) / static_cast<T>(doc.rows()));
  }
  hc->pooled = PoolLabels(hc->alpha, doc);
  hc->scores = ScoreLabels(hc->pooled, params.weights, params.bias,
                           &hc->logits);
  if (cache != nullptr) hc->doc = doc;
  return hc->scores;
}

template <typename T>
Matrix<T> HeadBackward(const HeadCache<T>& cache, const HeadParams<T>& params,
                       const LabelVector& targets, T scale,
                       HeadParams<T>* grads) {
  const std::size_t c = params.labels();
  const std::size_t h = params.hidden();
  const std::size_t k = cache.doc.rows();
  if (targets.size() != c || cache.logits.size() != c ||
      cache.doc.cols() != h || cache.alpha.rows() != c ||
      cache.alpha.cols() != k || !grads->attention.SameShape(params.attention)) {
    Fail(ErrorCode::kCacheMismatch, "head cache does not match parameters");
  }
  const Matrix<T>& doc = cache.doc;
  Matrix<T> grad_doc(k, h);
  std::vector<T> grad_pooled(h);
  std::vector<T> grad_alpha(k);
  const T per_label = scale / static_cast<T>(c);
  for (std::size_t i = 0; i < c; ++i) {
    const T grad_logit =
        (cache.scores[i] - static_cast<T>(targets[i])) * per_label;
    grads->bias(0, i) += grad_logit;
    Axpy(grad_logit, cache.pooled.row(i), grads->weights.row(i));
    for (std::size_t a = 0; a < h; ++a) {
      grad_pooled[a] = grad_logit * params.weights(i, a);
    }

    // l_i = sum_j alpha_ij d_j
    for (std::size_t j = 0; j < k; ++j) {
      grad_alpha[j] = Dot(std::span<const T>(grad_pooled), doc.row(j));
      Axpy(cache.alpha(i, j), std::span<const T>(grad_pooled),
           grad_doc.row(j));
    }
    if (cache.mode == AttentionMode::kUniform) continue;

    // Softmax Jacobian, then tanh.
    T weighted = T(0);
    for (std::size_t j = 0; j < k; ++j) weighted += cache.alpha(i, j) * grad_alpha[j];
    for (std::size_t j = 0; j < k; ++j) {
      const T z = cache.squashed(i, j);
      const T grad_pre =
          cache.alpha(i, j) * (grad_alpha[j] - weighted) * (T(1) - z * z);
      Axpy(grad_pre, doc.row(j), grads->attention.row(i));
      Axpy(grad_pre, params.attention.row(i), grad_doc.row(j));
    }
  }
  return grad_doc;
}

#define SAC_INSTANTIATE_HEAD(T)                                                \
  template HeadParams<T> InitHead<T>(std::size_t, std::size_t, Rng&, double); \
  template Matrix<T> AttentionForward<T>(const Matrix<T>&, const Matrix<T>&,   \
                                         Matrix<T>*);                          \
  template Matrix<T> PoolLabels<T>(const Matrix<T>&, const Matrix<T>&);        \
  template std::vector<T> ScoreLabels<T>(const Matrix<T>&, const Matrix<T>&,   \
                                         const Matrix<T>&, std::vector<T>*);   \
  template T Sigmoid<T>(T);                                                    \
  template LabelVector Predict<T>(std::span<const T>, double);                 \
  template T BceLoss<T>(std::span<const T>, const LabelVector&);               \
  template std::vector<T> HeadForward<T>(const Matrix<T>&,                     \
                                         const HeadParams<T>&, AttentionMode,  \
                                         HeadCache<T>*);                       \
  template Matrix<T> HeadBackward<T>(const HeadCache<T>&,                      \
                                     const HeadParams<T>&, const LabelVector&, \
                                     T, HeadParams<T>*);

SAC_INSTANTIATE_HEAD(float)
SAC_INSTANTIATE_HEAD(double)

#undef SAC_INSTANTIATE_HEAD

}  // namespace sac
