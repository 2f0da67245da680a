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

#include "sac/optimizer.h"

#include <cmath>
#include <vector>

#include "sac/error.h"

namespace sac {
namespace {

std::vector<Matrix<float>*> Tensors(ModelParams<float>& p) {
  std::vector<Matrix<float>*> out;
  p.ForEachTensor([&out](const char*, Matrix<float>& m) { out.push_back(&m); });
  return out;
}

std::vector<const Matrix<float>*> ConstTensors(const ModelParams<float>& p) {
  std::vector<const Matrix<float>*> out;
  p.ForEachTensor([&out](const char*, const Matrix<float>& m) {
    out.push_back(&m);
  });
  return out;
}

}  // namespace

Adam::Adam(const ModelParams<float>& like, AdamOptions options)
    : options_(options), first_(like.ZerosLike()), second_(like.ZerosLike()) {}

void Adam::Step(const ModelParams<float>& grads, ModelParams<float>* params) {
  auto p = Tensors(*params);
  auto g = ConstTensors(grads);
  auto m = Tensors(first_);
  auto v = Tensors(second_);
  if (p.size() != g.size() || p.size() != m.size()) {
    Fail(ErrorCode::kShapeMismatch, "optimizer state does not match params");
  }
  ++steps_;
  const double t = static_cast<double>(steps_);
  const float b1 = static_cast<float>(options_.beta1);
  const float b2 = static_cast<float>(options_.beta2);
  const float correct1 =
      static_cast<float>(1.0 - std::pow(options_.beta1, t));
  const float correct2 =
      static_cast<float>(1.0 - std::pow(options_.beta2, t));
  const float lr = static_cast<float>(options_.learning_rate);
  const float eps = static_cast<float>(options_.epsilon);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i]->SameShape(*g[i]) || !p[i]->SameShape(*m[i])) {
      Fail(ErrorCode::kShapeMismatch, "gradient tensor shape");
    }
    auto pv = p[i]->flat();
    auto gv = g[i]->flat();
    auto mv = m[i]->flat();
    auto vv = v[i]->flat();
    for (std::size_t j = 0; j < pv.size(); ++j) {
      mv[j] = b1 * mv[j] + (1.0f - b1) * gv[j];
      vv[j] = b2 * vv[j] + (1.0f - b2) * gv[j] * gv[j];
      const float m_hat = mv[j] / correct1;
      const float v_hat = vv[j] / correct2;
      pv[j] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

}  // namespace sac
