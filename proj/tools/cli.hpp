// Copyright 2026 The parshake Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace parshake::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // self-test failure, I/O or library error
  kUsage = 2,       // bad flags
  kInvalidPlan = 3  // grammar, structure or happens-before violation
};

/// Runs one command line (args[0] is the program name) writing to the given
/// streams. Output is key=value lines, except JSON emitted to stdout on request.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parshake::cli
