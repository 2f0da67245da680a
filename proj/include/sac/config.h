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

// Line-oriented `key = value` configuration files. `#` starts a comment.

#ifndef SAC_CONFIG_H_
#define SAC_CONFIG_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sac/trainer.h"

namespace sac {

// Keys accepted in config files; CLI flags use the same names with '-' in
// place of '_'.
const std::vector<std::string>& ConfigKeys();

// Applies one setting. Raises kUnknownKey or kTypeError.
void ApplySetting(std::string_view key, std::string_view value,
                  TrainConfig* config);

using ConfigMap = std::map<std::string, std::string>;

// Raises kUnknownKey or kTypeError naming the offending line.
ConfigMap ParseConfig(std::string_view text);
ConfigMap LoadConfig(const std::filesystem::path& path);

void ApplyConfig(const ConfigMap& settings, TrainConfig* config);

}  // namespace sac

#endif  // SAC_CONFIG_H_
