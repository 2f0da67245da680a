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

// Multi-label precision / recall / F1.
//
// Per-class ratios use 0/0 = 0. Macro P and R average the per-class ratios
// with equal weight; micro P and R pool the counts first. Both F1 values are
// the harmonic mean of their own P and R.

#ifndef SAC_METRICS_H_
#define SAC_METRICS_H_

#include <cstdint>
#include <vector>

#include "sac/corpus.h"

namespace sac {

struct ConfusionCounts {
  std::vector<std::uint64_t> tp;
  std::vector<std::uint64_t> fp;
  std::vector<std::uint64_t> fn;

  explicit ConfusionCounts(std::size_t classes = 0)
      : tp(classes, 0), fp(classes, 0), fn(classes, 0) {}

  std::size_t classes() const { return tp.size(); }

  // Raises kLengthMismatch.
  void Accumulate(const LabelVector& predicted, const LabelVector& target);
  void Merge(const ConfusionCounts& other);

  bool operator==(const ConfusionCounts&) const = default;
};

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

double SafeRatio(std::uint64_t num, std::uint64_t den);
double HarmonicMean(double precision, double recall);

PrecisionRecallF1 ClassScores(const ConfusionCounts& counts, std::size_t i);
PrecisionRecallF1 MacroScores(const ConfusionCounts& counts);
PrecisionRecallF1 MicroScores(const ConfusionCounts& counts);

// Unweighted mean of the per-class F1 values; reported alongside macro F1.
double MacroF1PerClassMean(const ConfusionCounts& counts);

struct MetricsReport {
  ConfusionCounts counts;
  std::vector<PrecisionRecallF1> per_class;
  PrecisionRecallF1 macro;
  PrecisionRecallF1 micro;
  double macro_f1_per_class_mean = 0.0;
};

MetricsReport BuildReport(const ConfusionCounts& counts);

}  // namespace sac

#endif  // SAC_METRICS_H_
