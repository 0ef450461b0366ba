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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parshake/planner.hpp"
#include "parshake/sakura.hpp"
#include "parshake/scheduler.hpp"

namespace parshake {

inline constexpr std::string_view kTreeFormat = "parshake-tree/1";
inline constexpr std::string_view kScheduleFormat = "parshake-schedule/1";

/// What a tree file carries. Hand-written files may omit the hop tree and the
/// report; the node list is mandatory.
struct TreeDocument {
  std::optional<PlanReport> report;
  std::uint64_t message_bits = 0;
  std::optional<HopTree> hops;
  NodeTree nodes;
};

TreeDocument to_document(const Plan& plan);

/// Pretty-printed with a trailing newline; key order fixed, so equal
/// documents give equal text.
std::string tree_to_json(const TreeDocument& doc);
TreeDocument tree_from_json(std::string_view text);  // throws ParseError

std::string schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(std::string_view text);

struct TestVector {
  std::string message_hex;
  std::uint64_t message_bit_length = 0;
  std::uint64_t out_len_bits = 0;
  std::string digest_hex;
};

std::vector<TestVector> vectors_from_json(std::string_view text);
std::string vectors_to_json(const std::vector<TestVector>& vectors);

std::string read_file(const std::string& path);  // throws ParseError on I/O failure
void write_file(const std::string& path, std::string_view contents);

}  // namespace parshake
