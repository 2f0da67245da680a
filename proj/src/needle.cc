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

#include "sac/needle.h"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "sac/error.h"
#include "sac/random.h"

namespace sac {
namespace {

// Label codes are synthetic subclasses: section A-H, class 01..99, subclass A.
std::string LabelCode(std::size_t i) {
  std::string code = "A00A";
  code[0] = static_cast<char>('A' + i % 8);
  const std::size_t cls = 1 + i / 8;
  code[1] = static_cast<char>('0' + cls / 10);
  code[2] = static_cast<char>('0' + cls % 10);
  return code;
}

}  // namespace

NeedleCorpus MakeNeedleCorpus(const NeedleOptions& o) {
  if (o.labels == 0 || o.labels > 8 * 99 || o.sentences == 0 ||
      o.max_labels_per_document == 0 ||
      o.max_labels_per_document > std::min(o.labels, o.sentences) ||
      o.min_words == 0 || o.min_words > o.max_words ||
      o.distractor_words == 0) {
    Fail(ErrorCode::kUsage, "inconsistent needle corpus options");
  }
  Rng rng(o.seed);
  NeedleCorpus corpus;
  for (std::size_t i = 0; i < o.labels; ++i) {
    corpus.vocabulary.codes.push_back(LabelCode(i));
    corpus.vocabulary.counts.push_back(0);
    corpus.needle_tokens.push_back("needle" + std::to_string(i));
  }
  std::vector<std::size_t> label_ids(o.labels);
  std::vector<std::size_t> slots(o.sentences);
  for (std::size_t d = 0; d < o.documents; ++d) {
    std::iota(label_ids.begin(), label_ids.end(), 0);
    rng.Shuffle(std::span<std::size_t>(label_ids));
    const std::size_t positives = 1 + rng.Index(o.max_labels_per_document);
    std::iota(slots.begin(), slots.end(), 0);
    rng.Shuffle(std::span<std::size_t>(slots));

    // needle_at[s] = label whose evidence lives in sentence s, or -1.
    std::vector<long> needle_at(o.sentences, -1);
    PatentRecord rec;
    rec.id = "needle-" + std::to_string(d);
    for (std::size_t p = 0; p < positives; ++p) {
      needle_at[slots[p]] = static_cast<long>(label_ids[p]);
      rec.ipc_codes.push_back(corpus.vocabulary.codes[label_ids[p]]);
      ++corpus.vocabulary.counts[label_ids[p]];
    }
    std::sort(rec.ipc_codes.begin(), rec.ipc_codes.end());

    std::string text;
    for (std::size_t s = 0; s < o.sentences; ++s) {
      const std::size_t words =
          o.min_words + rng.Index(o.max_words - o.min_words + 1);
      std::vector<std::string> sentence;
      for (std::size_t w = 0; w < words; ++w) {
        sentence.push_back("w" + std::to_string(rng.Index(o.distractor_words)));
      }
      if (needle_at[s] >= 0) {
        const std::size_t at = rng.Index(words + 1);
        sentence.insert(sentence.begin() + static_cast<long>(at),
                        corpus.needle_tokens[needle_at[s]]);
      }
      // Capitalized lead word so the segmenter sees a boundary.
      sentence.front()[0] = static_cast<char>(
          std::toupper(static_cast<unsigned char>(sentence.front()[0])));
      if (!text.empty()) text += ' ';
      for (std::size_t w = 0; w < sentence.size(); ++w) {
        if (w > 0) text += ' ';
        text += sentence[w];
      }
      text += '.';
    }
    rec.abstract = std::move(text);
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

}  // namespace sac
