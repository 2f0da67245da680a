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

#include "sac/metrics.h"

#include <string>

#include "sac/error.h"

namespace sac {

void ConfusionCounts::Accumulate(const LabelVector& predicted,
                                 const LabelVector& target) {
  if (predicted.size() != classes() || target.size() != classes()) {
    Fail(ErrorCode::kLengthMismatch,
         "expected " + std::to_string(classes()) + " labels, got " +
             std::to_string(predicted.size()) + " predicted / " +
             std::to_string(target.size()) + " target");
  }
  for (std::size_t i = 0; i < classes(); ++i) {
    const bool p = predicted[i] != 0;
    const bool t = target[i] != 0;
    tp[i] += p && t;
    fp[i] += p && !t;
    fn[i] += !p && t;
  }
}

void ConfusionCounts::Merge(const ConfusionCounts& other) {
  if (other.classes() != classes()) {
    Fail(ErrorCode::kLengthMismatch, "merging counts of different widths");
  }
  for (std::size_t i = 0; i < classes(); ++i) {
    tp[i] += other.tp[i];
    fp[i] += other.fp[i];
    fn[i] += other.fn[i];
  }
}

double SafeRatio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double HarmonicMean(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

PrecisionRecallF1 ClassScores(const ConfusionCounts& counts, std::size_t i) {
  PrecisionRecallF1 s;
  s.precision = SafeRatio(counts.tp[i], counts.tp[i] + counts.fp[i]);
  s.recall = SafeRatio(counts.tp[i], counts.tp[i] + counts.fn[i]);
  s.f1 = HarmonicMean(s.precision, s.recall);
  return s;
}

PrecisionRecallF1 MacroScores(const ConfusionCounts& counts) {
  PrecisionRecallF1 s;
  const std::size_t c = counts.classes();
  if (c == 0) return s;
  for (std::size_t i = 0; i < c; ++i) {
    const auto cls = ClassScores(counts, i);
    s.precision += cls.precision;
    s.recall += cls.recall;
  }
  s.precision /= static_cast<double>(c);
  s.recall /= static_cast<double>(c);
  s.f1 = HarmonicMean(s.precision, s.recall);
  return s;
}

PrecisionRecallF1 MicroScores(const ConfusionCounts& counts) {
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < counts.classes(); ++i) {
    tp += counts.tp[i];
    fp += counts.fp[i];
    fn += counts.fn[i];
  }
  PrecisionRecallF1 s;
  s.precision = SafeRatio(tp, tp + fp);
  s.recall = SafeRatio(tp, tp + fn);
  s.f1 = HarmonicMean(s.precision, s.recall);
  return s;
}

double MacroF1PerClassMean(const ConfusionCounts& counts) {
  const std::size_t c = counts.classes();
  if (c == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < c; ++i) total += ClassScores(counts, i).f1;
  return total / static_cast<double>(c);
}

MetricsReport BuildReport(const ConfusionCounts& counts) {
  MetricsReport report;
  report.counts = counts;
  for (std::size_t i = 0; i < counts.classes(); ++i) {
    report.per_class.push_back(ClassScores(counts, i));
  }
  report.macro = MacroScores(counts);
  report.micro = MicroScores(counts);
  report.macro_f1_per_class_mean = MacroF1PerClassMean(counts);
  return report;
}

}  // namespace sac
