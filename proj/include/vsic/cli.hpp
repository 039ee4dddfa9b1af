// Copyright 2026 The vsic Authors
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

// Command-line front end: configuration, table output and subcommand dispatch.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsic/errors.hpp"

namespace vsic::cli {

inline constexpr std::uint64_t kDefaultCliSeed = 20180706;

/// Invalid command line or configuration; maps to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Subcommand names in help order.
const std::vector<std::string>& subcommands();

struct GridSpec {
  double start = 0.0, stop = 0.0;
  std::size_t count = 1;

  /// count == 1 yields {start}; otherwise count evenly spaced points.
  std::vector<double> values() const;
};

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = kDefaultCliSeed;
  unsigned jobs = 1;
  std::optional<std::filesystem::path> output;
  /// Parameters with defaults applied and validated.
  nlohmann::json params;
};

/// Documented defaults for a subcommand.
nlohmann::json default_parameters(std::string_view subcommand);

/// Merges \p user onto the subcommand defaults and validates. Unknown keys and
/// type mismatches raise UsageError naming the dotted key path.
RunConfig resolve_config(std::string_view subcommand, const nlohmann::json& user);

/// Parses a JSON config file. Parse errors report line and column.
RunConfig load_config(std::string_view subcommand, const std::filesystem::path& path);

/// Header plus rows of numbers.
struct TableOutput {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void validate() const;
  /// Comma separated, 12 significant digits, '\n' line endings.
  std::string to_csv() const;
};

/// Two or more numeric columns; lines starting with '#' and a non-numeric
/// first line are skipped.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path);

/// Runs a resolved configuration. Writes CSV to config.output (plus a
/// "<output>.json" sidecar) or to \p out when no output path is set.
void execute(const RunConfig& config, std::ostream& out);

/// Full command-line entry point; returns the process exit status
/// (0 success, 1 domain error, 2 usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vsic::cli
