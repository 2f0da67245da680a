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

// Synthetic "needle sentence" corpus: every positive label of a document is
// evidenced by a single token that appears in exactly one of its sentences;
// all other sentences are drawn from a shared distractor vocabulary.

#ifndef SAC_NEEDLE_H_
#define SAC_NEEDLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sac/corpus.h"

namespace sac {

struct NeedleOptions {
  std::size_t documents = 64;
  std::size_t labels = 8;
  std::size_t sentences = 32;
  std::size_t min_words = 6;        // distractor words per sentence
  std::size_t max_words = 10;
  std::size_t distractor_words = 200;
  std::size_t max_labels_per_document = 3;
  std::uint64_t seed = 2024;
};

struct NeedleCorpus {
  std::vector<PatentRecord> records;  // text in `abstract`, codes in ipc_codes
  LabelVocabulary vocabulary;         // the `labels` codes, fixed order
  std::vector<std::string> needle_tokens;  // one per label
};

NeedleCorpus MakeNeedleCorpus(const NeedleOptions& options);

}  // namespace sac

#endif  // SAC_NEEDLE_H_
