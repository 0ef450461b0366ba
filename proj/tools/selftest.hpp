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

#include <cstdint>
#include <string>
#include <vector>

#include "parshake/json_io.hpp"

namespace parshake::cli {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::uint64_t cases = 0;
  std::string detail;  // first failure, empty on success
};

struct SelftestOptions {
  bool quick = false;
  std::vector<TestVector> vectors;
  std::uint64_t seed = 20260101;
};

/// Vector file, the model table, the ternary and compacted sweeps and the differential
/// corpus. Suites are independent: one failing leaves the others' verdicts
/// untouched.
std::vector<SuiteResult> run_selftest(const SelftestOptions& options);

}  // namespace parshake::cli
