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

#ifndef SAC_OPTIMIZER_H_
#define SAC_OPTIMIZER_H_

#include <cstdint>

#include "sac/model.h"

namespace sac {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adaptive moment estimation with bias correction. Dense updates: rows that
// received no gradient in a step still move with their running moments.
class Adam {
 public:
  Adam(const ModelParams<float>& like, AdamOptions options);

  void Step(const ModelParams<float>& grads, ModelParams<float>* params);

  std::uint64_t steps() const { return steps_; }

 private:
  AdamOptions options_;
  ModelParams<float> first_;
  ModelParams<float> second_;
  std::uint64_t steps_ = 0;
};

}  // namespace sac

#endif  // SAC_OPTIMIZER_H_
