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
#include <vector>

#include "parshake/sakura.hpp"

namespace parshake {

/// stall: a block waits until every CV whose first bit it holds is ready.
/// eager: blocks run back to back regardless; used to expose trees that only
/// work thanks to waiting, and to check happens-before on them.
enum class StallPolicy { stall, eager };

struct NodeTimeline {
  NodeId node_id = 0;
  /// Completion time of each absorbed block; block b ran during
  /// [block_times[b] - 1, block_times[b]).
  std::vector<std::uint64_t> block_times;
  std::uint64_t squeeze_calls = 0;  // final node only
  std::uint64_t finish = 0;         // CV ready time (or end of squeezing)
  std::uint64_t stalls = 0;         // idle units between time 0 and the last block

  friend bool operator==(const NodeTimeline&, const NodeTimeline&) = default;
};

struct Schedule {
  StallPolicy policy = StallPolicy::stall;
  std::vector<NodeTimeline> nodes;  // indexed by node id
  std::uint64_t depth = 0;
  std::uint64_t processors = 0;
  std::uint64_t max_concurrency = 0;
  std::uint64_t total_calls = 0;
  std::uint64_t total_stalls = 0;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Kahn order over the CV dependencies (producers first, ties by node id).
/// Throws CyclicDependency.
std::vector<NodeId> topological_order(const NodeTree& tree);

/// One processor per node, all starting at time 0. Squeeze calls beyond the
/// first rate extraction, ceil(out_len / 1088) - 1, run on the final node
/// after its last block.
Schedule simulate(const NodeTree& tree, StallPolicy policy = StallPolicy::stall,
                  std::uint64_t out_len = kCvBits);

/// True iff every producer finishes no later than the start of the block
/// holding the first bit of its CV, and block times are consistent.
bool validate_happens_before(const Schedule& schedule, const NodeTree& tree);

struct WorkWidth {
  std::uint64_t total_calls = 0;
  std::uint64_t processors = 0;
  std::uint64_t max_concurrency = 0;
};
WorkWidth work_and_width(const Schedule& schedule);

}  // namespace parshake
