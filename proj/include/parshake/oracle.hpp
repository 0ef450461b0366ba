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
#include <random>
#include <span>
#include <vector>

#include "parshake/bitstring.hpp"
#include "parshake/sakura.hpp"
#include "parshake/sponge.hpp"

namespace parshake {

struct Digest {
  BitString bits;
  std::uint64_t total_work = 0;  // permutation calls, squeezing included
};

/// The node's bit string with message slices and chaining values filled in.
/// `cvs[p]` must hold the CV of every producer p the node refers to. Throws
/// SliceOutOfRange.
BitString materialize_node(const NodeLayout& node, const BitString& message,
                           std::span<const BitString> cvs);

/// Nodes in Kahn order, each through inner_f; the final node through xof_output.
Digest evaluate_sequential(const NodeTree& tree, const BitString& message, std::uint64_t out_len);

/// Same, visiting nodes in the caller's order. Throws CyclicDependency if a
/// node comes before one of its producers, InvalidParameter if `order` is not a
/// permutation of the node ids.
Digest evaluate_in_order(const NodeTree& tree, const BitString& message, std::uint64_t out_len,
                         std::span<const NodeId> order);

/// A uniformly drawn topological order (random choice among ready nodes).
std::vector<NodeId> random_topological_order(const NodeTree& tree, std::mt19937_64& rng);

/// Evaluates each dependency level on a pool of worker threads (at least two,
/// whatever the core count). Digests are bit-identical to the sequential ones.
Digest evaluate_parallel(const NodeTree& tree, const BitString& message, std::uint64_t out_len,
                         unsigned threads = 0);

/// Sequential oracle vs. parallel executor.
bool differential_check(const NodeTree& tree, const BitString& message, std::uint64_t out_len);

}  // namespace parshake
