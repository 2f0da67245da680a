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

// JSON documents emitted by the command-line tool.

#ifndef SAC_REPORT_H_
#define SAC_REPORT_H_

#include "json.hpp"

#include "sac/corpus.h"
#include "sac/gradcheck.h"
#include "sac/metrics.h"
#include "sac/segmenter.h"
#include "sac/trainer.h"

namespace sac {

using Json = nlohmann::ordered_json;

Json IngestionJson(const IngestionReport& report);

// {"<code>": count, ..., "dropped": n, "skipped": n}
Json StatsJson(const LabelVocabulary& vocab, const LabelStats& stats,
               std::size_t skipped);

Json VocabularyJson(const LabelVocabulary& vocab);
Json SplitJson(const DatasetSplit& split);
Json SentencesJson(const std::vector<Sentence>& sentences);

Json MetricsJson(const MetricsReport& report,
                 const std::vector<std::string>& codes);
Json EvaluationJson(const EvaluationResult& result);

Json PredictionJson(const Prediction& prediction, bool with_attention);
Json GradCheckJson(const GradCheckReport& report);
Json EpochLogToJson(const EpochLog& log);
Json TrainSummaryJson(const TrainResult& result);

}  // namespace sac

#endif  // SAC_REPORT_H_
