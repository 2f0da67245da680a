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

// Patent corpus ingestion: IPC normalization, label vocabulary, label
// binarization and the id-hashed 8:1:1 split.

#ifndef SAC_CORPUS_H_
#define SAC_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sac {

struct PatentRecord {
  std::string id;
  std::string title;
  std::string abstract;
  std::string description;
  std::vector<std::string> ipc_codes;
};

// A subclass-level IPC code such as "B82Y".
class IpcCode {
 public:
  const std::string& str() const { return canonical_; }
  char section() const { return canonical_[0]; }
  int class_number() const {
    return (canonical_[1] - '0') * 10 + (canonical_[2] - '0');
  }
  char subclass() const { return canonical_[3]; }

  auto operator<=>(const IpcCode&) const = default;

 private:
  explicit IpcCode(std::string canonical) : canonical_(std::move(canonical)) {}
  friend std::optional<IpcCode> TryParseIpc(std::string_view raw);

  std::string canonical_;
};

// Normalizes "B82Y 20/00", "b82y20/00" or "B82Y" to "B82Y". Returns nullopt
// for anything that does not start with [A-H][0-9][0-9][A-Z].
std::optional<IpcCode> TryParseIpc(std::string_view raw);

// Throwing variant; raises kMalformedIpc.
IpcCode ParseIpc(std::string_view raw);

// Distinct normalized codes of a record, sorted. Malformed codes are counted
// into `malformed` when it is non-null.
std::vector<IpcCode> NormalizedCodes(const PatentRecord& record,
                                     std::size_t* malformed = nullptr);

enum class SkipReason {
  kCorruptLine,
  kMissingId,
  kDuplicateId,
  kNoText,
  kMissingIpcCodes,
};

std::string_view SkipReasonName(SkipReason reason);

struct IngestionReport {
  std::size_t lines_read = 0;
  std::size_t retained = 0;
  std::map<SkipReason, std::size_t> skipped;

  std::size_t total_skipped() const;
};

struct LoadedCorpus {
  std::vector<PatentRecord> records;
  IngestionReport report;
};

// Parses one JSON line. Returns nullopt and sets `reason` when the line is
// unusable.
std::optional<PatentRecord> ParseRecordLine(std::string_view line,
                                            SkipReason* reason);

// Reads a JSON-lines corpus. Bad lines are counted, never fatal. Blank lines
// are ignored and not counted. Raises kFileUnreadable.
LoadedCorpus LoadCorpus(const std::filesystem::path& path);

struct LabelVocabulary {
  std::vector<std::string> codes;
  std::vector<std::uint64_t> counts;

  std::size_t size() const { return codes.size(); }
  std::optional<std::size_t> IndexOf(std::string_view code) const;
};

// Per-code document frequency over `records`, one count per record.
std::map<std::string, std::uint64_t> CountCodes(
    std::span<const PatentRecord> records);

// Top `top_c` codes by descending frequency, ties ascending by code. Raises
// kNoLabels when no record has a parseable code.
LabelVocabulary BuildVocabulary(std::span<const PatentRecord> records,
                                std::size_t top_c);

using LabelVector = std::vector<std::uint8_t>;

// nullopt means the record is dropped: none of its codes are in `vocab`.
std::optional<LabelVector> EncodeLabels(const PatentRecord& record,
                                        const LabelVocabulary& vocab);

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

enum class SplitPart { kTrain, kValidation, kTest };

std::optional<SplitPart> ParseSplitPart(std::string_view name);
std::string_view SplitPartName(SplitPart part);

SplitPart AssignSplit(std::string_view id, std::uint64_t seed);

// Buckets ids by StableHash64(seed, id) mod 10. Each output list keeps the
// input order. Raises kEmptyInput.
DatasetSplit SplitDataset(std::span<const std::string> ids,
                          std::uint64_t seed);

struct LabelStats {
  std::vector<std::uint64_t> counts;  // vocabulary order
  std::size_t dropped = 0;
};

LabelStats ComputeLabelStats(std::span<const PatentRecord> records,
                             const LabelVocabulary& vocab);

}  // namespace sac

#endif  // SAC_CORPUS_H_
