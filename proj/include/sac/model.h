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

#ifndef SAC_MODEL_H_
#define SAC_MODEL_H_

#include <span>
#include <string>
#include <vector>

#include "sac/encoder.h"
#include "sac/head.h"

namespace sac {

// Encoder followed by the attention head. The same struct shape doubles as
// the gradient accumulator.
template <typename T>
struct ModelParams {
  EncoderParams<T> encoder;
  HeadParams<T> head;

  static ModelParams Zeros(EncoderKind kind, const ModelDims& dims) {
    return {EncoderParams<T>::Zeros(kind, dims),
            HeadParams<T>::Zeros(dims.labels, dims.hidden)};
  }

  // Checkpoint order: encoder tensors, then head tensors.
  template <typename Fn>
  void ForEachTensor(Fn&& fn) {
    encoder.ForEachTensor(fn);
    head.ForEachTensor(fn);
  }
  template <typename Fn>
  void ForEachTensor(Fn&& fn) const {
    encoder.ForEachTensor(fn);
    head.ForEachTensor(fn);
  }

  template <typename U>
  ModelParams<U> Cast() const {
    return {encoder.template Cast<U>(), head.template Cast<U>()};
  }

  ModelParams ZerosLike() const {
    ModelParams out = *this;
    out.ForEachTensor([](const char*, Matrix<T>& m) { m.SetZero(); });
    return out;
  }

  std::size_t ParameterCount() const {
    std::size_t n = 0;
    ForEachTensor([&n](const char*, const Matrix<T>& m) { n += m.size(); });
    return n;
  }
};

template <typename T>
ModelParams<T> InitModel(EncoderKind kind, const ModelDims& dims, Rng& rng);

// Raises kShapeMismatch unless every tensor agrees with `dims`.
template <typename T>
void CheckModelShapes(const ModelParams<T>& params, const ModelDims& dims);

template <typename T>
struct ForwardPass {
  DocumentCache<T> encoder;
  HeadCache<T> head;
};

// A document is its list of tokenized sentences.
using TokenizedDocument = std::vector<TokenSequence>;

template <typename T>
std::vector<T> ModelForward(const ModelParams<T>& params,
                            std::span<const TokenSequence> document,
                            AttentionMode mode = AttentionMode::kLearned,
                            ForwardPass<T>* pass = nullptr);

// Accumulates `scale` * d(loss)/d(params) into `grads` for the pass's
// document and returns the unscaled loss.
template <typename T>
T ModelBackward(const ModelParams<T>& params, const ForwardPass<T>& pass,
                const LabelVector& targets, T scale, ModelParams<T>* grads);

}  // namespace sac

#endif  // SAC_MODEL_H_
