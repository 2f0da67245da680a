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

#ifndef SAC_SEGMENTER_H_
#define SAC_SEGMENTER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sac {

inline constexpr std::int32_t kPadId = 0;
inline constexpr std::int32_t kClsId = 1;
inline constexpr std::int32_t kSepId = 2;
inline constexpr std::int32_t kUnkId = 3;
inline constexpr std::int32_t kFirstTokenId = 4;

inline constexpr std::size_t kDefaultMaxSentences = 128;
inline constexpr std::size_t kDefaultMaxTokens = 64;
inline constexpr std::size_t kDefaultVocabBuckets = 32768;

struct Sentence {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
};

// Splits `text` into at most `max_sentences` sentences.
//
// A boundary is one of `.` `!` `?`, optionally followed by closing quotes or
// brackets, then whitespace, then an ASCII uppercase letter or digit. A
// terminator that closes one of the known abbreviations ("Fig.", "No.",
// "U.S.", "e.g.", "i.e.", "et al.", "vs.", "etc.") or that sits between two
// digits never splits. Sentences are trimmed; whitespace-only fragments are
// dropped. Raises kEmptyText when `text` has no non-whitespace character.
std::vector<Sentence> Segment(std::string_view text,
                              std::size_t max_sentences = kDefaultMaxSentences);

// Lowercased whitespace tokens with leading and trailing punctuation split off
// one character at a time.
std::vector<std::string> SplitWords(std::string_view sentence);

std::int32_t HashToken(std::string_view token, std::size_t vocab_buckets);

struct TokenSequence {
  std::vector<std::int32_t> ids;  // CLS ... SEP, never padded

  std::size_t size() const { return ids.size(); }
};

// Requires max_tokens >= 3 and vocab_buckets >= 1.
TokenSequence Tokenize(std::string_view sentence,
                       std::size_t max_tokens = kDefaultMaxTokens,
                       std::size_t vocab_buckets = kDefaultVocabBuckets);

}  // namespace sac

#endif  // SAC_SEGMENTER_H_
