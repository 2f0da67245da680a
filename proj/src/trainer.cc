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

#include "sac/trainer.h"

#include <cctype>
#include <cmath>
#include <numeric>

#include "json.hpp"

#include "sac/error.h"
#include "sac/segmenter.h"

namespace sac {
namespace {

bool Blank(std::string_view s) {
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::vector<PatentRecord> RecordsInSplit(std::span<const PatentRecord> records,
                                         SplitPart part, std::uint64_t seed) {
  std::vector<PatentRecord> out;
  for (const auto& rec : records) {
    if (AssignSplit(rec.id, seed) == part) out.push_back(rec);
  }
  return out;
}

}  // namespace

void TrainConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) Fail(ErrorCode::kUsage, what);
  };
  require(dims.hidden > 0, "h must be positive");
  require(dims.labels > 0, "c must be positive");
  require(dims.vocab_buckets > 0, "v_buckets must be positive");
  require(dims.max_tokens >= 3, "t_max must be at least 3");
  require(dims.ffn > 0, "f must be positive");
  require(max_sentences > 0, "k_max must be positive");
  require(adam.learning_rate > 0, "lr must be positive");
  require(adam.beta1 > 0 && adam.beta1 < 1, "beta1 must be in (0, 1)");
  require(adam.beta2 > 0 && adam.beta2 < 1, "beta2 must be in (0, 1)");
  require(adam.epsilon > 0, "epsilon must be positive");
  require(batch_size > 0, "batch_size must be positive");
  require(max_epochs > 0, "max_epochs must be positive");
  require(patience > 0, "patience must be positive");
}

std::string ModelInputText(const PatentRecord& record, bool use_description) {
  std::string text;
  if (!Blank(record.title)) text = record.title;
  if (!Blank(record.abstract)) {
    if (!text.empty()) text += ". ";
    text += record.abstract;
  }
  if (use_description && !Blank(record.description)) {
    if (!text.empty()) text += " ";
    text += record.description;
  }
  return text;
}

TokenizedDocument PrepareDocument(std::string_view text, const ModelDims& dims,
                                  std::size_t max_sentences) {
  TokenizedDocument doc;
  for (const auto& sentence : Segment(text, max_sentences)) {
    doc.push_back(Tokenize(sentence.text, dims.max_tokens, dims.vocab_buckets));
  }
  return doc;
}

PreparedSplit PrepareExamples(std::span<const PatentRecord> records,
                              const LabelVocabulary& vocab,
                              const TrainConfig& config) {
  PreparedSplit out;
  for (const auto& rec : records) {
    auto labels = EncodeLabels(rec, vocab);
    if (!labels) {
      ++out.dropped;
      continue;
    }
    out.examples.push_back(
        {rec.id,
         PrepareDocument(ModelInputText(rec, config.use_description),
                         config.dims, config.max_sentences),
         std::move(*labels)});
  }
  return out;
}

std::string EpochLogJson(const EpochLog& log) {
  nlohmann::ordered_json j;
  j["epoch"] = log.epoch;
  j["train_loss"] = log.train_loss;
  j["validation_micro_f1"] = log.validation_micro_f1;
  j["validation_macro_f1"] = log.validation_macro_f1;
  return j.dump();
}

bool EarlyStopper::Observe(std::size_t epoch, double metric) {
  if (metric > best_metric_) {
    best_metric_ = metric;
    best_epoch_ = epoch;
    since_best_ = 0;
    return true;
  }
  ++since_best_;
  return false;
}

ConfusionCounts EvaluateExamples(const ModelParams<float>& params,
                                 std::span<const Example> examples,
                                 AttentionMode mode) {
  ConfusionCounts counts(params.head.labels());
  for (const auto& ex : examples) {
    auto scores = ModelForward(params, ex.document, mode);
    counts.Accumulate(Predict(std::span<const float>(scores)), ex.labels);
  }
  return counts;
}

FitResult Fit(const TrainConfig& config, ModelParams<float> params,
              std::span<const Example> train,
              std::span<const Example> validation, Rng& rng,
              const EpochCallback& on_epoch) {
  config.Validate();
  if (train.empty()) Fail(ErrorCode::kEmptySplit, "training split is empty");
  if (validation.empty()) {
    Fail(ErrorCode::kEmptySplit, "validation split is empty");
  }
  Adam adam(params, config.adam);
  EarlyStopper stopper(config.patience);
  ModelParams<float> grads = params.ZerosLike();
  FitResult result;
  result.best = params;

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.Shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size();
         start += config.batch_size, ++batch_index) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const float scale = 1.0f / static_cast<float>(end - start);
      grads.ForEachTensor([](const char*, Matrix<float>& m) { m.SetZero(); });
      for (std::size_t n = start; n < end; ++n) {
        const Example& ex = train[order[n]];
        ForwardPass<float> pass;
        ModelForward(params, ex.document, config.attention, &pass);
        const float loss = ModelBackward(params, pass, ex.labels, scale, &grads);
        if (!std::isfinite(loss)) {
          Fail(ErrorCode::kNonFiniteLoss,
               "epoch " + std::to_string(epoch) + " batch " +
                   std::to_string(batch_index) + " document '" + ex.id + "'");
        }
        loss_sum += loss;
      }
      adam.Step(grads, &params);
    }

    EpochLog log;
    log.epoch = epoch;
    log.train_loss = loss_sum / static_cast<double>(train.size());
    const auto counts = EvaluateExamples(params, validation, config.attention);
    log.validation_micro_f1 = MicroScores(counts).f1;
    log.validation_macro_f1 = MacroScores(counts).f1;
    result.log.push_back(log);
    result.epochs_run = epoch;
    if (stopper.Observe(epoch, log.validation_micro_f1)) result.best = params;
    if (on_epoch && on_epoch(log)) break;
    if (stopper.ShouldStop()) break;
  }
  result.best_epoch = stopper.best_epoch();
  result.best_validation_micro_f1 = stopper.best_metric();
  return result;
}

TrainResult TrainOnRecords(const TrainConfig& config,
                           std::span<const PatentRecord> records,
                           const EpochCallback& on_epoch) {
  config.Validate();
  const auto train_records =
      RecordsInSplit(records, SplitPart::kTrain, config.seed);
  const auto valid_records =
      RecordsInSplit(records, SplitPart::kValidation, config.seed);
  const LabelVocabulary vocab =
      BuildVocabulary(train_records, config.dims.labels);

  TrainConfig cfg = config;
  cfg.dims.labels = vocab.size();
  PreparedSplit train = PrepareExamples(train_records, vocab, cfg);
  PreparedSplit valid = PrepareExamples(valid_records, vocab, cfg);
  if (train.examples.empty()) {
    Fail(ErrorCode::kEmptySplit, "no labelled training documents");
  }
  if (valid.examples.empty()) {
    Fail(ErrorCode::kEmptySplit, "no labelled validation documents");
  }

  Rng rng(cfg.seed);
  auto params = InitModel<float>(cfg.encoder, cfg.dims, rng);
  FitResult fit = Fit(cfg, std::move(params), train.examples, valid.examples,
                      rng, on_epoch);

  TrainResult result;
  result.checkpoint = {cfg.dims, cfg.encoder, vocab.codes, std::move(fit.best)};
  result.metadata = {fit.epochs_run, fit.best_epoch,
                     fit.best_validation_micro_f1, cfg.seed};
  result.log = std::move(fit.log);
  result.train_documents = train.examples.size();
  result.validation_documents = valid.examples.size();
  result.dropped = train.dropped + valid.dropped;
  return result;
}

TrainResult Train(const TrainConfig& config,
                  const std::filesystem::path& corpus,
                  const EpochCallback& on_epoch) {
  LoadedCorpus loaded = LoadCorpus(corpus);
  TrainResult result = TrainOnRecords(config, loaded.records, on_epoch);
  result.ingestion = loaded.report;
  return result;
}

EvaluationResult EvaluateRecords(const Checkpoint& checkpoint,
                                 std::span<const PatentRecord> records,
                                 SplitPart part, const TrainConfig& config) {
  TrainConfig cfg = config;
  cfg.dims = checkpoint.dims;
  LabelVocabulary vocab;
  vocab.codes = checkpoint.vocabulary;
  vocab.counts.assign(vocab.codes.size(), 0);
  if (vocab.size() != checkpoint.params.head.labels()) {
    Fail(ErrorCode::kDimsMismatch, "vocabulary vs head label count");
  }
  const auto in_split = RecordsInSplit(records, part, cfg.seed);
  PreparedSplit prepared = PrepareExamples(in_split, vocab, cfg);
  if (prepared.examples.empty()) {
    Fail(ErrorCode::kEmptySplit, "split '" +
                                     std::string(SplitPartName(part)) +
                                     "' has no labelled documents");
  }
  EvaluationResult out;
  out.report = BuildReport(EvaluateExamples(checkpoint.params,
                                            prepared.examples));
  out.codes = vocab.codes;
  out.documents = prepared.examples.size();
  out.dropped = prepared.dropped;
  return out;
}

EvaluationResult Evaluate(const Checkpoint& checkpoint,
                          const std::filesystem::path& corpus, SplitPart part,
                          const TrainConfig& config) {
  LoadedCorpus loaded = LoadCorpus(corpus);
  return EvaluateRecords(checkpoint, loaded.records, part, config);
}

Prediction PredictRecord(const Checkpoint& checkpoint,
                         const PatentRecord& record,
                         const TrainConfig& config, double threshold) {
  const auto doc =
      PrepareDocument(ModelInputText(record, config.use_description),
                      checkpoint.dims, config.max_sentences);
  ForwardPass<float> pass;
  Prediction out;
  out.id = record.id;
  out.scores = ModelForward(checkpoint.params, doc, AttentionMode::kLearned,
                            &pass);
  const auto bits = Predict(std::span<const float>(out.scores), threshold);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.codes.push_back(checkpoint.vocabulary[i]);
  }
  out.attention = std::move(pass.head.alpha);
  return out;
}

}  // namespace sac
