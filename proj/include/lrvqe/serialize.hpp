// Copyright 2026 The lrvqe Authors
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

#pragma once

#include <filesystem>
#include "json.hpp"

#include "lrvqe/sweep.hpp"

namespace lrvqe {

using json = nlohmann::ordered_json;

/// Output options carried alongside the sweep settings in a config file.
struct OutputOptions {
  int precision = 10;
  bool plot_data = true;

  bool operator==(const OutputOptions&) const = default;
};

struct ConfigFile {
  SweepConfig sweep;
  OutputOptions output;

  bool operator==(const ConfigFile&) const = default;
};

/// Strict decoding: unknown keys, wrong types and out-of-range values raise
/// ConfigError naming the offending key path (e.g. "optimizer.restarts").
ConfigFile config_from_json(const json& doc);
/// Fully resolved form, every default explicit.
json config_to_json(const ConfigFile& cfg);

/// Reads and validates a config file. Throws ConfigError (including for a
/// missing file or malformed JSON).
ConfigFile parse_config(const std::filesystem::path& path);

json to_json(const RestartRecord& r);
RestartRecord restart_from_json(const json& doc);

json to_json(const OptimizerConfig& cfg);
json to_json(const NegativityProfile& profile);

}  // namespace lrvqe
