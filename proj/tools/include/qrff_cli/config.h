// Copyright 2026 The qrff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QRFF_CLI_CONFIG_H_
#define QRFF_CLI_CONFIG_H_

#include <filesystem>
#include <string>

#include "qrff/experiment.h"

namespace qrff::cli {

/// Parses a JSON run description. Unknown keys and wrong types are ConfigError.
/// Missing keys keep the defaults of RunConfig.
RunConfig parse_run_config(const std::string &json_text);

/// Reads and parses a config file. Unreadable files are IoError.
RunConfig load_run_config(const std::filesystem::path &path);

/// Serializes every field, so a dumped config round-trips through parse_run_config.
std::string dump_run_config(const RunConfig &cfg);

EstimatorMode parse_mode(const std::string &s);
InputLayout parse_layout(const std::string &s);

}  // namespace qrff::cli

#endif  // QRFF_CLI_CONFIG_H_
