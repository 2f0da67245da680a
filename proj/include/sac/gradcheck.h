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

// Finite-difference verification of the analytic gradients. Everything runs
// in double precision.

#ifndef SAC_GRADCHECK_H_
#define SAC_GRADCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sac/model.h"

namespace sac {

struct GradCheckOptions {
  EncoderKind kind = EncoderKind::kMeanPool;
  std::uint64_t seed = 7;
  double eps = 1e-3;
  std::size_t hidden = 4;
  std::size_t ffn = 6;
  std::size_t labels = 3;
  std::size_t sentences = 4;
  std::size_t max_tokens = 6;
  std::size_t vocab_buckets = 11;
  double param_scale = 0.5;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;  // "<tensor>[row,col]"
  std::size_t checked = 0;
};

// A random model, document and target built from `options.seed`.
struct GradCheckInstance {
  ModelDims dims;
  ModelParams<double> params;
  TokenizedDocument document;
  LabelVector targets;
};

GradCheckInstance MakeGradCheckInstance(const GradCheckOptions& options);

// max |analytic - numeric| / max(1, |numeric|) over every parameter entry,
// with numeric = (L(p + eps) - L(p - eps)) / (2 eps).
GradCheckReport CheckGradients(const GradCheckInstance& instance, double eps);

GradCheckReport GradCheck(const GradCheckOptions& options);

// Runs `instances` seeds starting at options.seed and keeps the worst.
GradCheckReport GradCheckMany(GradCheckOptions options, std::size_t instances);

}  // namespace sac

#endif  // SAC_GRADCHECK_H_
