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

// Sentence attention classifier.
//
// Given a document of k sentence vectors d_j (rows of `doc`) and c labels:
//
//   z_ij     = tanh(s_i . d_j)
//   alpha_i  = softmax_j(z_i)           one distribution over sentences per label
//   l_i      = sum_j alpha_ij d_j
//   score_i  = sigmoid(w_i . l_i + b_i)
//
// Every label owns its attention vector s_i and its classifier row w_i.

#ifndef SAC_HEAD_H_
#define SAC_HEAD_H_

#include <span>
#include <vector>

#include "sac/corpus.h"
#include "sac/matrix.h"
#include "sac/random.h"

namespace sac {

template <typename T>
struct HeadParams {
  Matrix<T> attention;  // c x h, row i = s_i
  Matrix<T> weights;    // c x h, row i = w_i
  Matrix<T> bias;       // 1 x c

  static HeadParams Zeros(std::size_t labels, std::size_t hidden) {
    return {Matrix<T>(labels, hidden), Matrix<T>(labels, hidden),
            Matrix<T>(1, labels)};
  }

  std::size_t labels() const { return attention.rows(); }
  std::size_t hidden() const { return attention.cols(); }

  template <typename Fn>
  void ForEachTensor(Fn&& fn) {
    fn("attention", attention);
    fn("weights", weights);
    fn("bias", bias);
  }
  template <typename Fn>
  void ForEachTensor(Fn&& fn) const {
    fn("attention", attention);
    fn("weights", weights);
    fn("bias", bias);
  }

  template <typename U>
  HeadParams<U> Cast() const {
    return {attention.template Cast<U>(), weights.template Cast<U>(),
            bias.template Cast<U>()};
  }
};

template <typename T>
HeadParams<T> InitHead(std::size_t labels, std::size_t hidden, Rng& rng,
                       double scale = 0.05);

// kUniform replaces the learned attention with alpha = 1/k and freezes S.
// It exists for ablation runs.
enum class AttentionMode { kLearned, kUniform };

// Raises kShapeMismatch when doc.cols() != S.cols().
template <typename T>
Matrix<T> AttentionForward(const Matrix<T>& doc, const Matrix<T>& attention,
                           Matrix<T>* squashed = nullptr);

template <typename T>
Matrix<T> PoolLabels(const Matrix<T>& alpha, const Matrix<T>& doc);

// Writes the pre-sigmoid values into `logits` when non-null.
template <typename T>
std::vector<T> ScoreLabels(const Matrix<T>& pooled, const Matrix<T>& weights,
                           const Matrix<T>& bias,
                           std::vector<T>* logits = nullptr);

template <typename T>
T Sigmoid(T x);

// Bit i is set iff scores[i] > threshold.
template <typename T>
LabelVector Predict(std::span<const T> scores, double threshold = 0.5);

// Mean binary cross-entropy over labels, evaluated on logits.
template <typename T>
T BceLoss(std::span<const T> logits, const LabelVector& targets);

template <typename T>
struct HeadCache {
  AttentionMode mode = AttentionMode::kLearned;
  Matrix<T> doc;       // k x h
  Matrix<T> squashed;  // c x k, tanh(s_i . d_j)
  Matrix<T> alpha;     // c x k
  Matrix<T> pooled;    // c x h
  std::vector<T> logits;
  std::vector<T> scores;
};

template <typename T>
std::vector<T> HeadForward(const Matrix<T>& doc, const HeadParams<T>& params,
                           AttentionMode mode = AttentionMode::kLearned,
                           HeadCache<T>* cache = nullptr);

// Adds `scale` * d(BceLoss)/d(params) into `grads` and returns
// `scale` * d(BceLoss)/d(doc). Raises kCacheMismatch on shape disagreement.
template <typename T>
Matrix<T> HeadBackward(const HeadCache<T>& cache, const HeadParams<T>& params,
                       const LabelVector& targets, T scale,
                       HeadParams<T>* grads);

}  // namespace sac

#endif  // SAC_HEAD_H_
