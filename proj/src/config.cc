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

#include "sac/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sac/error.h"

namespace sac {
namespace {

std::string_view Trim(std::string_view s) {
  const auto space = [](char ch) {
    return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n';
  };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value,
                           const char* expected) {
  Fail(ErrorCode::kTypeError, std::string(key) + " = '" + std::string(value) +
                                  "': expected " + expected);
}

std::uint64_t ParseCount(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc() || end != value.data() + value.size() ||
      value.empty()) {
    BadValue(key, value, "a non-negative integer");
  }
  return out;
}

double ParseReal(std::string_view key, std::string_view value) {
  // from_chars for floating point is missing from older libstdc++.
  std::string copy(value);
  std::istringstream in(copy);
  in.imbue(std::locale::classic());
  double out = 0.0;
  in >> out;
  if (value.empty() || in.fail() || !in.eof()) {
    BadValue(key, value, "a number");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  BadValue(key, value, "true or false");
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "h",     "c",       "v_buckets",  "t_max",      "k_max",
      "f",     "encoder", "lr",         "beta1",      "beta2",
      "epsilon", "batch_size", "max_epochs", "patience", "seed",
      "use_description",
  };
  return keys;
}

void ApplySetting(std::string_view key, std::string_view value,
                  TrainConfig* cfg) {
  value = Trim(value);
  if (key == "h") {
    cfg->dims.hidden = ParseCount(key, value);
  } else if (key == "c") {
    cfg->dims.labels = ParseCount(key, value);
  } else if (key == "v_buckets") {
    cfg->dims.vocab_buckets = ParseCount(key, value);
  } else if (key == "t_max") {
    cfg->dims.max_tokens = ParseCount(key, value);
  } else if (key == "k_max") {
    cfg->max_sentences = ParseCount(key, value);
  } else if (key == "f") {
    cfg->dims.ffn = ParseCount(key, value);
  } else if (key == "encoder") {
    auto kind = ParseEncoderKind(value);
    if (!kind) BadValue(key, value, "meanpool or minitransformer");
    cfg->encoder = *kind;
  } else if (key == "lr") {
    cfg->adam.learning_rate = ParseReal(key, value);
  } else if (key == "beta1") {
    cfg->adam.beta1 = ParseReal(key, value);
  } else if (key == "beta2") {
    cfg->adam.beta2 = ParseReal(key, value);
  } else if (key == "epsilon") {
    cfg->adam.epsilon = ParseReal(key, value);
  } else if (key == "batch_size") {
    cfg->batch_size = ParseCount(key, value);
  } else if (key == "max_epochs") {
    cfg->max_epochs = ParseCount(key, value);
  } else if (key == "patience") {
    cfg->patience = ParseCount(key, value);
  } else if (key == "seed") {
    cfg->seed = ParseCount(key, value);
  } else if (key == "use_description") {
    cfg->use_description = ParseBool(key, value);
  } else {
    Fail(ErrorCode::kUnknownKey, "'" + std::string(key) + "'");
  }
}

ConfigMap ParseConfig(std::string_view text) {
  ConfigMap settings;
  TrainConfig scratch;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      Fail(ErrorCode::kTypeError, where + "expected 'key = value'");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    try {
      ApplySetting(key, value, &scratch);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
    settings[key] = value;
  }
  return settings;
}

ConfigMap LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kFileUnreadable, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

void ApplyConfig(const ConfigMap& settings, TrainConfig* config) {
  for (const auto& [key, value] : settings) ApplySetting(key, value, config);
}

}  // namespace sac
