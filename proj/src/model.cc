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

#include "sac/model.h"

#include "sac/error.h"

namespace sac {

template <typename T>
ModelParams<T> InitModel(EncoderKind kind, const ModelDims& dims, Rng& rng) {
  ModelParams<T> params;
  params.encoder = InitEncoder<T>(kind, dims, rng);
  params.head = InitHead<T>(dims.labels, dims.hidden, rng);
  return params;
}

template <typename T>
void CheckModelShapes(const ModelParams<T>& params, const ModelDims& dims) {
  CheckEncoderShapes(params.encoder, dims);
  const auto& head = params.head;
  if (head.attention.rows() != dims.labels ||
      head.attention.cols() != dims.hidden ||
      !head.weights.SameShape(head.attention) || head.bias.rows() != 1 ||
      head.bias.cols() != dims.labels) {
    Fail(ErrorCode::kShapeMismatch, "head tensors do not match dims");
  }
}

template <typename T>
std::vector<T> ModelForward(const ModelParams<T>& params,
                            std::span<const TokenSequence> document,
                            AttentionMode mode, ForwardPass<T>* pass) {
  DocumentCache<T>* enc = pass != nullptr ? &pass->encoder : nullptr;
  HeadCache<T>* head = pass != nullptr ? &pass->head : nullptr;
  Matrix<T> doc = EncodeDocument(document, params.encoder, enc);
  return HeadForward(doc, params.head, mode, head);
}

template <typename T>
T ModelBackward(const ModelParams<T>& params, const ForwardPass<T>& pass,
                const LabelVector& targets, T scale, ModelParams<T>* grads) {
  const T loss = BceLoss(std::span<const T>(pass.head.logits), targets);
  Matrix<T> grad_doc =
      HeadBackward(pass.head, params.head, targets, scale, &grads->head);
  EncoderBackward(pass.encoder, params.encoder, grad_doc, &grads->encoder);
  return loss;
}

#define SAC_INSTANTIATE_MODEL(T)                                              \
  template ModelParams<T> InitModel<T>(EncoderKind, const ModelDims&, Rng&);  \
  template void CheckModelShapes<T>(const ModelParams<T>&, const ModelDims&); \
  template std::vector<T> ModelForward<T>(const ModelParams<T>&,              \
                                          std::span<const TokenSequence>,     \
                                          AttentionMode, ForwardPass<T>*);    \
  template T ModelBackward<T>(const ModelParams<T>&, const ForwardPass<T>&,   \
                              const LabelVector&, T, ModelParams<T>*);

SAC_INSTANTIATE_MODEL(float)
SAC_INSTANTIATE_MODEL(double)

#undef SAC_INSTANTIATE_MODEL

}  // namespace sac
