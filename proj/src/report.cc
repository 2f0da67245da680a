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

#include "sac/report.h"

namespace sac {
namespace {

Json PrfJson(const PrecisionRecallF1& s) {
  Json j;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["f1"] = s.f1;
  return j;
}

}  // namespace

Json IngestionJson(const IngestionReport& report) {
  Json j;
  j["read"] = report.lines_read;
  j["retained"] = report.retained;
  Json skipped = Json::object();
  for (const auto& [reason, n] : report.skipped) {
    skipped[std::string(SkipReasonName(reason))] = n;
  }
  j["skipped"] = std::move(skipped);
  return j;
}

Json StatsJson(const LabelVocabulary& vocab, const LabelStats& stats,
               std::size_t skipped) {
  Json j = Json::object();
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    j[vocab.codes[i]] = stats.counts[i];
  }
  j["dropped"] = stats.dropped;
  j["skipped"] = skipped;
  return j;
}

Json VocabularyJson(const LabelVocabulary& vocab) {
  Json j;
  j["codes"] = vocab.codes;
  Json counts = Json::object();
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    counts[vocab.codes[i]] = vocab.counts[i];
  }
  j["counts"] = std::move(counts);
  return j;
}

Json SplitJson(const DatasetSplit& split) {
  Json j;
  j["train"] = split.train;
  j["validation"] = split.validation;
  j["test"] = split.test;
  j["counts"] = {{"train", split.train.size()},
                 {"validation", split.validation.size()},
                 {"test", split.test.size()}};
  return j;
}

Json SentencesJson(const std::vector<Sentence>& sentences) {
  Json j = Json::array();
  for (const auto& s : sentences) j.push_back(s.text);
  return j;
}

Json MetricsJson(const MetricsReport& report,
                 const std::vector<std::string>& codes) {
  Json per_class = Json::array();
  for (std::size_t i = 0; i < report.per_class.size(); ++i) {
    Json row;
    row["code"] = i < codes.size() ? codes[i] : std::to_string(i);
    row["tp"] = report.counts.tp[i];
    row["fp"] = report.counts.fp[i];
    row["fn"] = report.counts.fn[i];
    row["precision"] = report.per_class[i].precision;
    row["recall"] = report.per_class[i].recall;
    row["f1"] = report.per_class[i].f1;
    per_class.push_back(std::move(row));
  }
  Json j;
  j["per_class"] = std::move(per_class);
  j["macro"] = PrfJson(report.macro);
  j["macro"]["macro_f1_per_class_mean"] = report.macro_f1_per_class_mean;
  j["micro"] = PrfJson(report.micro);
  return j;
}

Json EvaluationJson(const EvaluationResult& result) {
  Json j = MetricsJson(result.report, result.codes);
  j["totals"] = {{"documents", result.documents},
                 {"dropped", result.dropped}};
  return j;
}

Json PredictionJson(const Prediction& p, bool with_attention) {
  Json j;
  j["id"] = p.id;
  j["scores"] = p.scores;
  j["predicted"] = p.codes;
  if (with_attention) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < p.attention.rows(); ++i) {
      auto r = p.attention.row(i);
      rows.push_back(std::vector<float>(r.begin(), r.end()));
    }
    j["attention"] = std::move(rows);
  }
  return j;
}

Json GradCheckJson(const GradCheckReport& report) {
  Json j;
  j["max_rel_error"] = report.max_rel_error;
  j["worst_param"] = report.worst_param;
  j["checked"] = report.checked;
  return j;
}

Json EpochLogToJson(const EpochLog& log) {
  return Json::parse(EpochLogJson(log));
}

Json TrainSummaryJson(const TrainResult& result) {
  Json j;
  j["epochs_run"] = result.metadata.epochs_run;
  j["best_epoch"] = result.metadata.best_epoch;
  j["best_validation_micro_f1"] = result.metadata.best_validation_micro_f1;
  j["seed"] = result.metadata.seed;
  j["labels"] = result.checkpoint.vocabulary;
  j["train_documents"] = result.train_documents;
  j["validation_documents"] = result.validation_documents;
  j["dropped"] = result.dropped;
  j["ingestion"] = IngestionJson(result.ingestion);
  Json log = Json::array();
  for (const auto& e : result.log) log.push_back(EpochLogToJson(e));
  j["log"] = std::move(log);
  return j;
}

}  // namespace sac
