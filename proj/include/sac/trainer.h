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

#ifndef SAC_TRAINER_H_
#define SAC_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sac/checkpoint.h"
#include "sac/corpus.h"
#include "sac/metrics.h"
#include "sac/model.h"
#include "sac/optimizer.h"

namespace sac {

struct TrainConfig {
  ModelDims dims;  // dims.labels is the vocabulary cap (top C)
  std::size_t max_sentences = kDefaultMaxSentences;
  EncoderKind encoder = EncoderKind::kMeanPool;
  AdamOptions adam;
  std::size_t batch_size = 16;
  std::size_t max_epochs = 200;
  std::size_t patience = 10;
  std::uint64_t seed = 42;
  bool use_description = false;
  AttentionMode attention = AttentionMode::kLearned;

  // Raises kUsage on a non-positive field or patience > max_epochs.
  void Validate() const;
};

// title + ". " + abstract, then " " + description when requested. Empty
// parts are skipped.
std::string ModelInputText(const PatentRecord& record, bool use_description);

TokenizedDocument PrepareDocument(std::string_view text,
                                  const ModelDims& dims,
                                  std::size_t max_sentences);

struct Example {
  std::string id;
  TokenizedDocument document;
  LabelVector labels;
};

struct PreparedSplit {
  std::vector<Example> examples;
  std::size_t dropped = 0;  // records with no label inside the vocabulary
};

PreparedSplit PrepareExamples(std::span<const PatentRecord> records,
                              const LabelVocabulary& vocab,
                              const TrainConfig& config);

struct EpochLog {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double validation_micro_f1 = 0.0;
  double validation_macro_f1 = 0.0;
};

std::string EpochLogJson(const EpochLog& log);

// Tracks the best validation score; improvement means strictly greater.
class EarlyStopper {
 public:
  explicit EarlyStopper(std::size_t patience) : patience_(patience) {}

  // Returns true when `metric` is a new best.
  bool Observe(std::size_t epoch, double metric);
  bool ShouldStop() const { return since_best_ >= patience_; }

  std::size_t best_epoch() const { return best_epoch_; }
  double best_metric() const { return best_metric_; }

 private:
  std::size_t patience_;
  std::size_t since_best_ = 0;
  std::size_t best_epoch_ = 0;
  double best_metric_ = -1.0;
};

// Called after each epoch; return true to stop early.
using EpochCallback = std::function<bool(const EpochLog&)>;

struct FitResult {
  ModelParams<float> best;
  std::vector<EpochLog> log;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  double best_validation_micro_f1 = 0.0;
};

// Mini-batch training with seeded shuffling and a fixed, sequential gradient
// reduction order. Raises kEmptySplit or kNonFiniteLoss.
FitResult Fit(const TrainConfig& config, ModelParams<float> params,
              std::span<const Example> train,
              std::span<const Example> validation, Rng& rng,
              const EpochCallback& on_epoch = {});

ConfusionCounts EvaluateExamples(const ModelParams<float>& params,
                                 std::span<const Example> examples,
                                 AttentionMode mode = AttentionMode::kLearned);

struct TrainMetadata {
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  double best_validation_micro_f1 = 0.0;
  std::uint64_t seed = 0;
};

struct TrainResult {
  Checkpoint checkpoint;
  TrainMetadata metadata;
  std::vector<EpochLog> log;
  IngestionReport ingestion;
  std::size_t train_documents = 0;
  std::size_t validation_documents = 0;
  std::size_t dropped = 0;
};

TrainResult TrainOnRecords(const TrainConfig& config,
                           std::span<const PatentRecord> records,
                           const EpochCallback& on_epoch = {});

// Raises kNoLabels, kEmptySplit, kNonFiniteLoss.
TrainResult Train(const TrainConfig& config,
                  const std::filesystem::path& corpus,
                  const EpochCallback& on_epoch = {});

struct EvaluationResult {
  MetricsReport report;
  std::vector<std::string> codes;
  std::size_t documents = 0;
  std::size_t dropped = 0;
};

// Scores one split with the checkpoint's own vocabulary. `config` supplies
// the split seed and text options. Raises kEmptySplit.
EvaluationResult EvaluateRecords(const Checkpoint& checkpoint,
                                 std::span<const PatentRecord> records,
                                 SplitPart part, const TrainConfig& config);

EvaluationResult Evaluate(const Checkpoint& checkpoint,
                          const std::filesystem::path& corpus, SplitPart part,
                          const TrainConfig& config);

struct Prediction {
  std::string id;
  std::vector<float> scores;
  std::vector<std::string> codes;
  Matrix<float> attention;  // c x k
};

Prediction PredictRecord(const Checkpoint& checkpoint,
                         const PatentRecord& record,
                         const TrainConfig& config, double threshold = 0.5);

}  // namespace sac

#endif  // SAC_TRAINER_H_
