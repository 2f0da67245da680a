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

#include "sac/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "sac/random.h"

namespace sac {
namespace {

double Loss(const GradCheckInstance& inst, const ModelParams<double>& params) {
  ForwardPass<double> pass;
  ModelForward(params, inst.document, AttentionMode::kLearned, &pass);
  return BceLoss(std::span<const double>(pass.head.logits), inst.targets);
}

}  // namespace

GradCheckInstance MakeGradCheckInstance(const GradCheckOptions& options) {
  Rng rng(options.seed);
  GradCheckInstance inst;
  inst.dims.hidden = options.hidden;
  inst.dims.labels = options.labels;
  inst.dims.vocab_buckets = options.vocab_buckets;
  inst.dims.max_tokens = options.max_tokens;
  inst.dims.ffn = options.ffn;
  inst.params = ModelParams<double>::Zeros(options.kind, inst.dims);
  // Biases too: zero biases would hide sign errors in their gradients.
  inst.params.ForEachTensor([&](const char*, Matrix<double>& m) {
    for (double& v : m.flat()) {
      v = rng.Uniform(-options.param_scale, options.param_scale);
    }
  });
  for (std::size_t j = 0; j < options.sentences; ++j) {
    const std::size_t len = 3 + rng.Index(options.max_tokens - 2);
    TokenSequence seq;
    seq.ids.push_back(kClsId);
    while (seq.ids.size() + 1 < len) {
      seq.ids.push_back(kFirstTokenId +
                        static_cast<std::int32_t>(
                            rng.Index(options.vocab_buckets)));
    }
    seq.ids.push_back(kSepId);
    inst.document.push_back(std::move(seq));
  }
  for (std::size_t i = 0; i < options.labels; ++i) {
    inst.targets.push_back(static_cast<std::uint8_t>(rng.Index(2)));
  }
  return inst;
}

GradCheckReport CheckGradients(const GradCheckInstance& inst, double eps) {
  ModelParams<double> grads = inst.params.ZerosLike();
  ForwardPass<double> pass;
  ModelForward(inst.params, inst.document, AttentionMode::kLearned, &pass);
  ModelBackward(inst.params, pass, inst.targets, 1.0, &grads);

  std::vector<std::pair<const char*, const Matrix<double>*>> analytic;
  grads.ForEachTensor([&](const char* name, const Matrix<double>& m) {
    analytic.emplace_back(name, &m);
  });

  GradCheckReport report;
  ModelParams<double> probe = inst.params;
  std::size_t t = 0;
  probe.ForEachTensor([&](const char* name, Matrix<double>& m) {
    const Matrix<double>& g = *analytic[t++].second;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const double saved = m(r, c);
        m(r, c) = saved + eps;
        const double up = Loss(inst, probe);
        m(r, c) = saved - eps;
        const double down = Loss(inst, probe);
        m(r, c) = saved;
        const double numeric = (up - down) / (2.0 * eps);
        const double err =
            std::abs(g(r, c) - numeric) / std::max(1.0, std::abs(numeric));
        ++report.checked;
        if (err > report.max_rel_error || report.worst_param.empty()) {
          report.max_rel_error = std::max(report.max_rel_error, err);
          report.worst_param = std::string(name) + "[" + std::to_string(r) +
                               "," + std::to_string(c) + "]";
        }
      }
    }
  });
  return report;
}

GradCheckReport GradCheck(const GradCheckOptions& options) {
  return CheckGradients(MakeGradCheckInstance(options), options.eps);
}

GradCheckReport GradCheckMany(GradCheckOptions options,
                              std::size_t instances) {
  GradCheckReport worst;
  const std::uint64_t base = options.seed;
  for (std::size_t i = 0; i < instances; ++i) {
    options.seed = base + i;
    GradCheckReport r = GradCheck(options);
    worst.checked += r.checked;
    if (r.max_rel_error > worst.max_rel_error || worst.worst_param.empty()) {
      worst.max_rel_error = r.max_rel_error;
      worst.worst_param = r.worst_param;
    }
  }
  return worst;
}

}  // namespace sac
