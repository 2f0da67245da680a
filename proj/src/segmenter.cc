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

#include "sac/segmenter.h"

#include <array>
#include <cctype>

#include "sac/error.h"
#include "sac/hash.h"

namespace sac {
namespace {

constexpr std::array<std::string_view, 8> kAbbreviations = {
    "Fig.", "No.", "U.S.", "e.g.", "i.e.", "et al.", "vs.", "etc.",
};

// Multi-byte closers: right single and double quotation marks.
constexpr std::array<std::string_view, 2> kUtf8Closers = {"\xE2\x80\x99",
                                                           "\xE2\x80\x9D"};

bool IsSpace(char ch) { return std::isspace(static_cast<unsigned char>(ch)); }
bool IsDigit(char ch) { return ch >= '0' && ch <= '9'; }
bool IsUpper(char ch) { return ch >= 'A' && ch <= 'Z'; }
bool IsAlnum(char ch) { return std::isalnum(static_cast<unsigned char>(ch)); }
bool IsPunct(char ch) { return std::ispunct(static_cast<unsigned char>(ch)); }
bool IsTerminator(char ch) { return ch == '.' || ch == '!' || ch == '?'; }

bool EndsWithAbbreviation(std::string_view text, std::size_t term) {
  const std::string_view head = text.substr(0, term + 1);
  for (std::string_view abbr : kAbbreviations) {
    if (!head.ends_with(abbr)) continue;
    const std::size_t start = head.size() - abbr.size();
    if (start == 0 || !IsAlnum(head[start - 1])) return true;
  }
  return false;
}

// Length of the closer starting at `pos`, 0 if none.
std::size_t CloserLength(std::string_view text, std::size_t pos) {
  const char ch = text[pos];
  if (ch == '"' || ch == '\'' || ch == ')' || ch == ']' || ch == '}') return 1;
  for (std::string_view closer : kUtf8Closers) {
    if (text.substr(pos).starts_with(closer)) return closer.size();
  }
  return 0;
}

// If a sentence boundary follows the terminator at `term`, returns the end of
// the sentence (exclusive) and sets `next` to the start of the next one.
bool FindBoundary(std::string_view text, std::size_t term, std::size_t* end,
                  std::size_t* next) {
  const std::size_t n = text.size();
  if (term > 0 && term + 1 < n && IsDigit(text[term - 1]) &&
      IsDigit(text[term + 1])) {
    return false;
  }
  if (EndsWithAbbreviation(text, term)) return false;
  std::size_t pos = term + 1;
  while (pos < n) {
    const std::size_t len = CloserLength(text, pos);
    if (len == 0) break;
    pos += len;
  }
  if (pos >= n || !IsSpace(text[pos])) return false;
  std::size_t after = pos;
  while (after < n && IsSpace(text[after])) ++after;
  if (after >= n || !(IsUpper(text[after]) || IsDigit(text[after]))) {
    return false;
  }
  *end = pos;
  *next = after;
  return true;
}

void PushTrimmed(std::string_view text, std::size_t begin, std::size_t end,
                 std::vector<Sentence>* out) {
  while (begin < end && IsSpace(text[begin])) ++begin;
  while (end > begin && IsSpace(text[end - 1])) --end;
  if (begin == end) return;
  out->push_back({std::string(text.substr(begin, end - begin)), begin, end});
}

}  // namespace

std::vector<Sentence> Segment(std::string_view text,
                              std::size_t max_sentences) {
  bool blank = true;
  for (char ch : text) blank = blank && IsSpace(ch);
  if (blank) Fail(ErrorCode::kEmptyText, "text has no visible characters");
  if (max_sentences == 0) Fail(ErrorCode::kUsage, "max_sentences must be > 0");

  std::vector<Sentence> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size() && out.size() < max_sentences;
       ++i) {
    if (!IsTerminator(text[i])) continue;
    std::size_t end = 0;
    std::size_t next = 0;
    if (!FindBoundary(text, i, &end, &next)) continue;
    PushTrimmed(text, start, end, &out);
    start = next;
    i = next - 1;
  }
  if (out.size() < max_sentences) PushTrimmed(text, start, text.size(), &out);
  return out;
}

std::vector<std::string> SplitWords(std::string_view sentence) {
  std::vector<std::string> words;
  std::size_t i = 0;
  const std::size_t n = sentence.size();
  while (i < n) {
    while (i < n && IsSpace(sentence[i])) ++i;
    std::size_t j = i;
    while (j < n && !IsSpace(sentence[j])) ++j;
    if (i == j) break;
    std::string_view word = sentence.substr(i, j - i);
    i = j;

    std::size_t lead = 0;
    while (lead < word.size() && IsPunct(word[lead])) ++lead;
    std::size_t trail = word.size();
    while (trail > lead && IsPunct(word[trail - 1])) --trail;
    for (std::size_t p = 0; p < lead; ++p) words.emplace_back(1, word[p]);
    if (trail > lead) {
      std::string core(word.substr(lead, trail - lead));
      for (char& ch : core) {
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      }
      words.push_back(std::move(core));
    }
    for (std::size_t p = trail; p < word.size(); ++p) {
      words.emplace_back(1, word[p]);
    }
  }
  return words;
}

std::int32_t HashToken(std::string_view token, std::size_t vocab_buckets) {
  return kFirstTokenId +
         static_cast<std::int32_t>(Fnv1a64(token) % vocab_buckets);
}

TokenSequence Tokenize(std::string_view sentence, std::size_t max_tokens,
                       std::size_t vocab_buckets) {
  if (max_tokens < 3 || vocab_buckets == 0) {
    Fail(ErrorCode::kUsage, "tokenize needs max_tokens >= 3, buckets >= 1");
  }
  TokenSequence seq;
  seq.ids.push_back(kClsId);
  for (const auto& word : SplitWords(sentence)) {
    if (seq.ids.size() + 1 >= max_tokens) break;
    seq.ids.push_back(HashToken(word, vocab_buckets));
  }
  seq.ids.push_back(kSepId);
  return seq;
}

}  // namespace sac
