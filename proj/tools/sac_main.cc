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

// sac: command-line front end for the sentence attention classifier.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
// Only the JSON result is written to stdout; progress goes to stderr.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "sac/checkpoint.h"
#include "sac/config.h"
#include "sac/corpus.h"
#include "sac/error.h"
#include "sac/gradcheck.h"
#include "sac/report.h"
#include "sac/segmenter.h"
#include "sac/trainer.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct Settings {
  std::string config_path;
  std::map<std::string, std::string> flags;  // config key -> raw value
  // Per subcommand: config key -> its flag.
  std::map<const CLI::App*, std::map<std::string, CLI::Option*>> options;
  std::string out_path;
};

std::string Dashed(std::string key) {
  for (char& ch : key) {
    if (ch == '_') ch = '-';
  }
  return key;
}

// Every config key is also a flag on every subcommand.
void AddSettingFlags(CLI::App* sub, Settings* s) {
  sub->add_option("--config", s->config_path, "key = value config file");
  for (const auto& key : sac::ConfigKeys()) {
    s->options[sub][key] =
        sub->add_option("--" + Dashed(key), s->flags[key], "config: " + key);
  }
}

// Config file first, then explicit flags on top.
sac::TrainConfig ResolveConfig(const Settings& s, const CLI::App* sub) {
  sac::TrainConfig cfg;
  if (!s.config_path.empty()) {
    sac::ApplyConfig(sac::LoadConfig(s.config_path), &cfg);
  }
  for (const auto& [key, opt] : s.options.at(sub)) {
    if (opt->count() > 0) sac::ApplySetting(key, s.flags.at(key), &cfg);
  }
  return cfg;
}

void Emit(const sac::Json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) sac::Fail(sac::ErrorCode::kFileUnreadable, out_path);
  out << text;
}

int ExitCodeFor(sac::ErrorCode code) {
  switch (code) {
    case sac::ErrorCode::kUsage:
    case sac::ErrorCode::kUnknownKey:
    case sac::ErrorCode::kTypeError:
      return kExitUsage;
    case sac::ErrorCode::kNonFiniteLoss:
      return kExitNumeric;
    default:
      return kExitData;
  }
}

std::vector<sac::PatentRecord> ReadRecords(const std::string& path,
                                           sac::IngestionReport* report) {
  auto loaded = sac::LoadCorpus(path);
  std::cerr << "read " << loaded.report.lines_read << " lines, retained "
            << loaded.report.retained << ", skipped "
            << loaded.report.total_skipped() << "\n";
  if (report != nullptr) *report = loaded.report;
  return std::move(loaded.records);
}

std::vector<sac::PatentRecord> InSplit(
    const std::vector<sac::PatentRecord>& records, sac::SplitPart part,
    std::uint64_t seed) {
  std::vector<sac::PatentRecord> out;
  for (const auto& r : records) {
    if (sac::AssignSplit(r.id, seed) == part) out.push_back(r);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentence attention classifier for multi-label patent codes"};
  // -h is taken by the hidden-width flag --h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Settings s;
  std::string corpus;
  std::string checkpoint;
  std::string split_name = "test";
  std::string log_path;
  bool all_records = false;
  bool with_attention = false;
  double threshold = 0.5;
  double eps = 1e-3;
  std::size_t instances = 20;

  auto* vocab_cmd = app.add_subcommand("build-vocab",
                                       "Top-C label vocabulary (training split)");
  vocab_cmd->add_option("corpus", corpus, "JSON-lines corpus")->required();
  vocab_cmd->add_flag("--all", all_records, "Count every record, not only train");

  auto* split_cmd = app.add_subcommand("split", "Id-hashed 8:1:1 split");
  split_cmd->add_option("corpus", corpus, "JSON-lines corpus")->required();

  auto* stats_cmd = app.add_subcommand("stats", "Per-code document counts");
  stats_cmd->add_option("corpus", corpus, "JSON-lines corpus")->required();

  auto* train_cmd = app.add_subcommand("train", "Train and write a checkpoint");
  train_cmd->add_option("corpus", corpus, "JSON-lines corpus")->required();
  train_cmd->add_option("--log", log_path, "Per-epoch JSON-lines log file");

  auto* eval_cmd = app.add_subcommand("evaluate", "Macro/micro F1 on a split");
  eval_cmd->add_option("checkpoint", checkpoint, "Checkpoint file")->required();
  eval_cmd->add_option("corpus", corpus, "JSON-lines corpus")->required();
  eval_cmd->add_option("--split", split_name, "train, validation or test")
      ->check(CLI::IsMember({"train", "validation", "test"}));

  auto* predict_cmd = app.add_subcommand("predict", "Per-document scores");
  predict_cmd->add_option("checkpoint", checkpoint, "Checkpoint file")
      ->required();
  predict_cmd->add_option("corpus", corpus, "JSON-lines corpus")->required();
  predict_cmd->add_option("--split", split_name,
                          "all, train, validation or test")
      ->check(CLI::IsMember({"all", "train", "validation", "test"}));
  predict_cmd->add_flag("--attention", with_attention,
                        "Include the c x k attention matrix");
  predict_cmd->add_option("--threshold", threshold, "Decision threshold")
      ->check(CLI::Range(0.0, 1.0));

  auto* segment_cmd = app.add_subcommand(
      "segment", "Split standard input into sentences");

  auto* grad_cmd = app.add_subcommand("gradcheck",
                                      "Finite-difference gradient check");
  grad_cmd->add_option("--instances", instances, "Random instances per kind")
      ->check(CLI::PositiveNumber);
  grad_cmd->add_option("--eps", eps, "Central difference step")
      ->check(CLI::PositiveNumber);

  for (auto* sub : {vocab_cmd, split_cmd, stats_cmd, train_cmd, eval_cmd,
                    predict_cmd, segment_cmd, grad_cmd}) {
    AddSettingFlags(sub, &s);
    sub->add_option("--out", s.out_path,
                    sub == train_cmd ? "Checkpoint output path"
                                     : "Write JSON here instead of stdout");
  }
  train_cmd->get_option("--out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    auto parsed = app.get_subcommands();
    std::cerr << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    const sac::TrainConfig cfg = ResolveConfig(s, active);
    std::string train_out;
    if (train_cmd->parsed()) std::swap(train_out, s.out_path);

    if (vocab_cmd->parsed()) {
      auto records = ReadRecords(corpus, nullptr);
      if (!all_records) records = InSplit(records, sac::SplitPart::kTrain, cfg.seed);
      Emit(sac::VocabularyJson(sac::BuildVocabulary(records, cfg.dims.labels)),
           s.out_path);
    } else if (split_cmd->parsed()) {
      const auto records = ReadRecords(corpus, nullptr);
      std::vector<std::string> ids;
      for (const auto& r : records) ids.push_back(r.id);
      Emit(sac::SplitJson(sac::SplitDataset(ids, cfg.seed)), s.out_path);
    } else if (stats_cmd->parsed()) {
      sac::IngestionReport report;
      const auto records = ReadRecords(corpus, &report);
      const auto vocab = sac::BuildVocabulary(records, cfg.dims.labels);
      Emit(sac::StatsJson(vocab, sac::ComputeLabelStats(records, vocab),
                          report.total_skipped()),
           s.out_path);
    } else if (train_cmd->parsed()) {
      std::ofstream log_file;
      if (!log_path.empty()) {
        log_file.open(log_path, std::ios::binary | std::ios::trunc);
        if (!log_file) sac::Fail(sac::ErrorCode::kFileUnreadable, log_path);
      }
      auto result = sac::Train(cfg, corpus, [&](const sac::EpochLog& e) {
        std::cerr << "epoch " << e.epoch << " loss " << e.train_loss
                  << " val micro-F1 " << e.validation_micro_f1
                  << " macro-F1 " << e.validation_macro_f1 << "\n";
        if (log_file.is_open()) log_file << sac::EpochLogJson(e) << "\n";
        return false;
      });
      sac::SaveCheckpoint(result.checkpoint, train_out);
      std::cerr << "wrote " << train_out << " (best epoch "
                << result.metadata.best_epoch << ")\n";
      Emit(sac::TrainSummaryJson(result), "");
    } else if (eval_cmd->parsed()) {
      const auto ckpt = sac::LoadCheckpoint(checkpoint);
      const auto part = *sac::ParseSplitPart(split_name);
      Emit(sac::EvaluationJson(sac::Evaluate(ckpt, corpus, part, cfg)),
           s.out_path);
    } else if (predict_cmd->parsed()) {
      const auto ckpt = sac::LoadCheckpoint(checkpoint);
      auto records = ReadRecords(corpus, nullptr);
      if (split_name != "all") {
        records = InSplit(records, *sac::ParseSplitPart(split_name), cfg.seed);
      }
      sac::Json docs = sac::Json::array();
      for (const auto& rec : records) {
        docs.push_back(sac::PredictionJson(
            sac::PredictRecord(ckpt, rec, cfg, threshold), with_attention));
      }
      Emit(docs, s.out_path);
    } else if (segment_cmd->parsed()) {
      const std::string text((std::istreambuf_iterator<char>(std::cin)),
                             std::istreambuf_iterator<char>());
      Emit(sac::SentencesJson(sac::Segment(text, cfg.max_sentences)),
           s.out_path);
    } else if (grad_cmd->parsed()) {
      sac::GradCheckOptions opts;
      opts.seed = cfg.seed;
      opts.eps = eps;
      sac::GradCheckReport worst;
      for (auto kind : {sac::EncoderKind::kMeanPool,
                        sac::EncoderKind::kMiniTransformer}) {
        // Both kinds unless --encoder narrows it down.
        if (s.options.at(active).at("encoder")->count() > 0 && kind != cfg.encoder) {
          continue;
        }
        opts.kind = kind;
        auto r = sac::GradCheckMany(opts, instances);
        std::cerr << sac::EncoderKindName(kind) << ": max rel error "
                  << r.max_rel_error << " at " << r.worst_param << "\n";
        worst.checked += r.checked;
        if (r.max_rel_error >= worst.max_rel_error) {
          worst.max_rel_error = r.max_rel_error;
          worst.worst_param =
              std::string(sac::EncoderKindName(kind)) + "/" + r.worst_param;
        }
      }
      Emit(sac::GradCheckJson(worst), s.out_path);
    }
  } catch (const sac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
