// Copyright 2026 The cowwit Authors
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

#ifndef COWWIT_CLI_H
#define COWWIT_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace cowwit::cli {

// Process exit statuses (sysexits.h values where one fits).
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotAWitness = 2;
inline constexpr int kExitNotEntangled = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataError = 65;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitIoError = 74;
inline constexpr int kExitConfig = 78;

/// Runs the command line `args` (args[0] is the program name) and returns
/// the exit status. Results go to `out` unless --output names a file;
/// diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cowwit::cli

#endif
