//
// Copyright 2026 The PMW Authors
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
//

// Command-line front end. All subcommands print JSON (or CSV for grids) on
// `out` and diagnostics on `err`.
//
// Exit codes: 0 success, 1 runtime estimator failure, 2 usage or validation
// error. Every option can also be given as an environment variable named
// PMW_<OPTION>, upper-cased with dashes turned into underscores; a flag on
// the command line wins over the environment.

#ifndef PMW_CLI_H_
#define PMW_CLI_H_

#include <istream>
#include <ostream>

namespace pmw {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// `in` supplies data when a subcommand reads stdin.
int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace pmw

#endif  // PMW_CLI_H_
