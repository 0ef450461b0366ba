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

#include "parshake/scheduler.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "parshake/error.hpp"

namespace parshake {

std::vector<NodeId> topological_order(const NodeTree& tree) {
  const std::size_t n = tree.nodes.size();
  std::vector<std::vector<NodeId>> consumers(n);
  std::vector<std::size_t> pending(n, 0);
  for (NodeId id = 0; id < n; ++id) {
    for (const auto& cv : tree.nodes[id].cv_positions()) {
      if (cv.producer >= n) {
        throw Error(ErrorCode::GrammarViolation,
                    "node " + std::to_string(id) + " refers to missing node " + std::to_string(cv.producer));
      }
      consumers[cv.producer].push_back(id);
      ++pending[id];
    }
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId id = 0; id < n; ++id) {
    if (pending[id] == 0) ready.push(id);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId id = ready.top();
    ready.pop();
    order.push_back(id);
    for (NodeId c : consumers[id]) {
      if (--pending[c] == 0) ready.push(c);
    }
  }
  if (order.size() != n) throw Error(ErrorCode::CyclicDependency, "chaining values form a cycle");
  return order;
}

Schedule simulate(const NodeTree& tree, StallPolicy policy, std::uint64_t out_len) {
  if (out_len == 0) throw Error(ErrorCode::ZeroOutputLength, "requested output length is zero");
  Schedule s;
  s.policy = policy;
  s.nodes.resize(tree.nodes.size());
  s.processors = tree.nodes.size();
  if (tree.nodes.empty()) return s;

  for (NodeId id : topological_order(tree)) {
    const NodeLayout& node = tree.nodes[id];
    NodeTimeline& t = s.nodes[id];
    t.node_id = id;
    const std::uint64_t blocks = node.blocks();
    // latest producer finish per block, keyed by the CV's first bit
    std::vector<std::uint64_t> ready(blocks, 0);
    if (policy == StallPolicy::stall) {
      for (const auto& cv : node.cv_positions()) {
        auto& r = ready[cv.bit_offset / kRateBits];
        r = std::max(r, s.nodes[cv.producer].finish);
      }
    }
    t.block_times.resize(blocks);
    std::uint64_t clock = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
      clock = std::max(clock, ready[b]) + 1;
      t.block_times[b] = clock;
    }
    t.stalls = clock - blocks;
    if (id == tree.final_node()) t.squeeze_calls = (out_len + kRateBits - 1) / kRateBits - 1;
    t.finish = clock + t.squeeze_calls;
    s.total_calls += blocks + t.squeeze_calls;
    s.total_stalls += t.stalls;
    s.depth = std::max(s.depth, t.finish);
  }

  std::vector<std::uint64_t> busy(s.depth + 1, 0);
  for (const auto& t : s.nodes) {
    for (std::uint64_t time : t.block_times) ++busy[time];
    const std::uint64_t last = t.block_times.empty() ? 0 : t.block_times.back();
    for (std::uint64_t k = 1; k <= t.squeeze_calls; ++k) ++busy[last + k];
  }
  s.max_concurrency = *std::max_element(busy.begin(), busy.end());
  return s;
}

bool validate_happens_before(const Schedule& schedule, const NodeTree& tree) {
  if (schedule.nodes.size() != tree.nodes.size()) return false;
  for (NodeId id = 0; id < tree.nodes.size(); ++id) {
    const NodeLayout& node = tree.nodes[id];
    const NodeTimeline& t = schedule.nodes[id];
    if (t.block_times.size() != node.blocks()) return false;
    std::uint64_t prev = 0;
    for (std::uint64_t time : t.block_times) {
      if (time < prev + 1) return false;
      prev = time;
    }
    for (const auto& cv : node.cv_positions()) {
      if (cv.producer >= schedule.nodes.size()) return false;
      const std::uint64_t start = t.block_times[cv.bit_offset / kRateBits] - 1;
      if (schedule.nodes[cv.producer].finish > start) return false;
    }
  }
  return true;
}

WorkWidth work_and_width(const Schedule& schedule) {
  return {schedule.total_calls, schedule.processors, schedule.max_concurrency};
}

}  // namespace parshake
