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

#include "sac/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <unordered_set>

#include "json.hpp"

#include "sac/error.h"
#include "sac/hash.h"

namespace sac {
namespace {

bool IsSpace(char ch) { return std::isspace(static_cast<unsigned char>(ch)); }

bool HasNonSpace(std::string_view text) {
  return std::any_of(text.begin(), text.end(),
                     [](char ch) { return !IsSpace(ch); });
}

// Optional string field: absent or null reads as empty; any other non-string
// type makes the line unusable.
bool ReadString(const nlohmann::json& obj, const char* key, std::string* out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return true;
  if (!it->is_string()) return false;
  *out = it->get<std::string>();
  return true;
}

}  // namespace

std::optional<IpcCode> TryParseIpc(std::string_view raw) {
  while (!raw.empty() && IsSpace(raw.front())) raw.remove_prefix(1);
  if (raw.size() < 4) return std::nullopt;
  std::string code(raw.substr(0, 4));
  for (char& ch : code) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  const bool ok = code[0] >= 'A' && code[0] <= 'H' &&
                  std::isdigit(static_cast<unsigned char>(code[1])) &&
                  std::isdigit(static_cast<unsigned char>(code[2])) &&
                  code[3] >= 'A' && code[3] <= 'Z';
  if (!ok) return std::nullopt;
  return IpcCode(std::move(code));
}

IpcCode ParseIpc(std::string_view raw) {
  auto code = TryParseIpc(raw);
  if (!code) Fail(ErrorCode::kMalformedIpc, "'" + std::string(raw) + "'");
  return *code;
}

std::vector<IpcCode> NormalizedCodes(const PatentRecord& record,
                                     std::size_t* malformed) {
  std::set<IpcCode> seen;
  for (const auto& raw : record.ipc_codes) {
    if (auto code = TryParseIpc(raw)) {
      seen.insert(*code);
    } else if (malformed != nullptr) {
      ++*malformed;
    }
  }
  return {seen.begin(), seen.end()};
}

std::string_view SkipReasonName(SkipReason reason) {
  switch (reason) {
    case SkipReason::kCorruptLine: return "CorruptLine";
    case SkipReason::kMissingId: return "MissingId";
    case SkipReason::kDuplicateId: return "DuplicateId";
    case SkipReason::kNoText: return "NoText";
    case SkipReason::kMissingIpcCodes: return "MissingIpcCodes";
  }
  return "Unknown";
}

std::size_t IngestionReport::total_skipped() const {
  std::size_t total = 0;
  for (const auto& [reason, n] : skipped) total += n;
  return total;
}

std::optional<PatentRecord> ParseRecordLine(std::string_view line,
                                            SkipReason* reason) {
  auto obj = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded() || !obj.is_object()) {
    *reason = SkipReason::kCorruptLine;
    return std::nullopt;
  }
  PatentRecord rec;
  auto id = obj.find("id");
  if (id == obj.end() || !id->is_string() ||
      id->get_ref<const std::string&>().empty()) {
    *reason = SkipReason::kMissingId;
    return std::nullopt;
  }
  rec.id = id->get<std::string>();
  if (!ReadString(obj, "title", &rec.title) ||
      !ReadString(obj, "abstract", &rec.abstract) ||
      !ReadString(obj, "description", &rec.description)) {
    *reason = SkipReason::kCorruptLine;
    return std::nullopt;
  }
  auto codes = obj.find("ipc_codes");
  if (codes == obj.end() || !codes->is_array()) {
    *reason = SkipReason::kMissingIpcCodes;
    return std::nullopt;
  }
  for (const auto& code : *codes) {
    if (!code.is_string()) {
      *reason = SkipReason::kCorruptLine;
      return std::nullopt;
    }
    rec.ipc_codes.push_back(code.get<std::string>());
  }
  if (!HasNonSpace(rec.title) && !HasNonSpace(rec.abstract)) {
    *reason = SkipReason::kNoText;
    return std::nullopt;
  }
  return rec;
}

LoadedCorpus LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kFileUnreadable, path.string());
  LoadedCorpus out;
  std::unordered_set<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!HasNonSpace(line)) continue;
    ++out.report.lines_read;
    SkipReason reason{};
    auto rec = ParseRecordLine(line, &reason);
    if (rec && !ids.insert(rec->id).second) {
      rec.reset();
      reason = SkipReason::kDuplicateId;
    }
    if (!rec) {
      ++out.report.skipped[reason];
      continue;
    }
    out.records.push_back(std::move(*rec));
  }
  if (in.bad()) Fail(ErrorCode::kFileUnreadable, path.string());
  out.report.retained = out.records.size();
  return out;
}

std::optional<std::size_t> LabelVocabulary::IndexOf(
    std::string_view code) const {
  auto it = std::find(codes.begin(), codes.end(), code);
  if (it == codes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - codes.begin());
}

std::map<std::string, std::uint64_t> CountCodes(
    std::span<const PatentRecord> records) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& rec : records) {
    for (const auto& code : NormalizedCodes(rec)) ++counts[code.str()];
  }
  return counts;
}

LabelVocabulary BuildVocabulary(std::span<const PatentRecord> records,
                                std::size_t top_c) {
  if (top_c == 0) Fail(ErrorCode::kUsage, "top_c must be positive");
  auto counts = CountCodes(records);
  if (counts.empty()) {
    Fail(ErrorCode::kNoLabels, "no record has a parseable IPC code");
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(counts.begin(),
                                                            counts.end());
  // The map is already in ascending code order, so a stable sort on count
  // alone yields the lexicographic tie-break.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  if (ranked.size() > top_c) ranked.resize(top_c);
  LabelVocabulary vocab;
  for (auto& [code, n] : ranked) {
    vocab.codes.push_back(code);
    vocab.counts.push_back(n);
  }
  return vocab;
}

std::optional<LabelVector> EncodeLabels(const PatentRecord& record,
                                        const LabelVocabulary& vocab) {
  LabelVector bits(vocab.size(), 0);
  bool any = false;
  for (const auto& code : NormalizedCodes(record)) {
    if (auto idx = vocab.IndexOf(code.str())) {
      bits[*idx] = 1;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return bits;
}

std::optional<SplitPart> ParseSplitPart(std::string_view name) {
  if (name == "train") return SplitPart::kTrain;
  if (name == "validation" || name == "valid") return SplitPart::kValidation;
  if (name == "test") return SplitPart::kTest;
  return std::nullopt;
}

std::string_view SplitPartName(SplitPart part) {
  switch (part) {
    case SplitPart::kTrain: return "train";
    case SplitPart::kValidation: return "validation";
    case SplitPart::kTest: return "test";
  }
  return "unknown";
}

SplitPart AssignSplit(std::string_view id, std::uint64_t seed) {
  const std::uint64_t bucket = StableHash64(seed, id) % 10;
  if (bucket < 8) return SplitPart::kTrain;
  return bucket == 8 ? SplitPart::kValidation : SplitPart::kTest;
}

DatasetSplit SplitDataset(std::span<const std::string> ids,
                          std::uint64_t seed) {
  if (ids.empty()) Fail(ErrorCode::kEmptyInput, "no ids to split");
  DatasetSplit split;
  for (const auto& id : ids) {
    switch (AssignSplit(id, seed)) {
      case SplitPart::kTrain: split.train.push_back(id); break;
      case SplitPart::kValidation: split.validation.push_back(id); break;
      case SplitPart::kTest: split.test.push_back(id); break;
    }
  }
  return split;
}

LabelStats ComputeLabelStats(std::span<const PatentRecord> records,
                             const LabelVocabulary& vocab) {
  LabelStats stats;
  stats.counts.assign(vocab.size(), 0);
  for (const auto& rec : records) {
    auto bits = EncodeLabels(rec, vocab);
    if (!bits) {
      ++stats.dropped;
      continue;
    }
    for (std::size_t i = 0; i < bits->size(); ++i) stats.counts[i] += (*bits)[i];
  }
  return stats;
}

}  // namespace sac
