// Copyright 2026 The gmdlab Authors
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


#ifndef GMDLAB_CLI_H_
#define GMDLAB_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gmdlab {

inline constexpr const char* kToolVersion = "0.1.0";

// Size limits enforced by the CLI. GMDLAB_CAPS="key=value,..." raises them;
// keys are the field names below.
struct CliCaps {
  int zero_set_vertices = 24;
  uint64_t elimination_entries = uint64_t{1} << 24;
  uint64_t grid_points = uint64_t{1} << 24;
  int sa_vertices = 8;
  int sa_rounds = 3;
  int sa_domain = 5;
  uint64_t tableau_cells = uint64_t{1} << 23;
  int64_t trials = int64_t{1} << 24;
  uint64_t dict_edges = uint64_t{1} << 21;
  int sasol_vertices = 64;
  int sasol_rounds = 4;
};

// Throws ValidationError on unknown keys or malformed values.
CliCaps ParseCaps(std::string_view text);

// 64-bit FNV-1a over the arguments, skipping the values of output-path flags
// (--out, --csv, --table, --maxgap-csv, --plot) so that the hash names the
// computation rather than where it was written.
uint64_t ConfigHash(const std::vector<std::string>& args);

// "# gmdlab <version> command=<cmd> config=<hex hash> seed=<seed>"
std::string CsvHeaderComment(const std::string& command, const std::vector<std::string>& args,
                             uint64_t seed);

// Writes to a sibling temporary and renames it over `path`.
void WriteFileAtomic(const std::string& path, const std::string& contents);

// Runs one subcommand. `args` excludes the program name. Returns 0 on success,
// 1 on validation errors (bad flags, unreadable input, invalid instances) and
// 2 when a cap is exceeded. Output files are only written once the whole
// command has succeeded.
int RunCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmdlab

#endif  // GMDLAB_CLI_H_
