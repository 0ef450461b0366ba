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
#include <string_view>
#include <vector>

#include "parshake/sakura.hpp"

namespace parshake {

/// One optimal height-1 hop subtree: a root node carrying a head message hop
/// and a single kangaroo hop whose chaining values come from message-only
/// leaves. distribution[0] is the head (kangaroo-absorbed) hop.
struct ModelEntry {
  int id = 0;
  std::uint64_t n_mb = 0;  // message bits encapsulated (inner variant)
  unsigned n_p = 0;        // processors = nodes
  unsigned t = 0;          // parallel time in permutation calls
  std::vector<std::uint64_t> distribution;
};

/// Model 0 (a lone message hop) followed by the ten single-kangaroo subtrees.
const std::vector<ModelEntry>& model_table();
const ModelEntry& model(int id);

enum class Strategy { single_hop, ternary, ternary_with_model, compacted, compacted_relaxed };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

struct PlanReport {
  Strategy strategy = Strategy::single_hop;
  int model_id = 0;
  std::uint64_t message_bits = 0;
  std::uint64_t predicted_depth = 0;
  std::uint64_t predicted_processors = 0;
  std::uint64_t j = 0;         // kangaroo hops stacked on the final node's subtree
  std::uint64_t subtrees = 0;  // height-1 subtrees at the bottom of the tree
  std::uint64_t node_count = 0;

  friend bool operator==(const PlanReport&, const PlanReport&) = default;
};

struct Plan {
  HopTree hops;
  NodeTree nodes;
  PlanReport report;
};

// --- exact integer helpers -------------------------------------------------

/// Smallest h >= 0 with unit * 3^h >= n, i.e. ceil(log3(n / unit)) clamped at 0.
std::uint64_t ceil_log3_ratio(std::uint64_t n, std::uint64_t unit);
std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b);

// --- subtrees --------------------------------------------------------------

/// Adds model `id` over `slice` to `tree` and returns its top hop. A final
/// subtree takes one more bit in its head hop. Short slices shrink the last
/// leaves first so the root stays block-full.
HopId add_model_subtree(HopTree& tree, int id, MessageSlice slice, bool as_final);
HopTree build_model_subtree(int id, MessageSlice slice, bool as_final);

/// Single-kangaroo subtree filling a root of k blocks with as many chaining
/// values as fit in its last k-1 blocks; returns the tree and its message bits.
struct MaxKangaroo {
  HopTree tree;
  std::uint64_t message_bits = 0;
  unsigned n_cv = 0;
};
MaxKangaroo max_single_kangaroo(unsigned k);

// --- whole-message plans ---------------------------------------------------

/// Model-2 parts joined by a rate-aligned ternary kangaroo tree; small
/// messages fall back to a single final hop or a final model 1/2 subtree.
Plan plan_ternary(std::uint64_t n);

/// Processor-reducing model choice for n >= 3275 at the ternary tree's depth.
int select_model(std::uint64_t n);
Plan plan_ternary_with_model(std::uint64_t n, int model_id);

/// At most one chaining hop per node, compacted at the node's end.
Plan plan_compacted(std::uint64_t n);
/// As plan_compacted, with the leaves that would idle grown by whole blocks.
Plan plan_compacted_relaxed(std::uint64_t n);

/// One final message hop holding the whole message.
Plan plan_single_hop(std::uint64_t n);

Plan make_plan(Strategy strategy, std::uint64_t n);

struct Prediction {
  std::uint64_t depth = 0;
  std::uint64_t processors = 0;
};
/// Closed forms: ternary ceil(log3(n/3273)) + 2 with 3 ceil(n/3273) processors;
/// compacted ceil(log3((n+31)/3305)) + 2 with 3 ceil((n+31)/3305). The log
/// terms are clamped at zero.
Prediction predict(Strategy strategy, std::uint64_t n);

// --- compacted tree arithmetic ---------------------------------------------

/// Message capacity of the perfect compacted tree of height parameter j,
/// counting the final node's extra bit: 3^(j-1) * 3305 - 31.
std::uint64_t compacted_capacity(unsigned j);
/// The same capacity from the unsimplified per-level sum.
std::uint64_t compacted_capacity_by_levels(unsigned j);
/// Minimal j >= 1 with compacted_capacity(j) >= n.
unsigned compacted_height(std::uint64_t n);

/// Blocks a root of `level` kangaroo levels can let each of its two leaves grow
/// by without delaying it, read off the chaining value positions.
unsigned relaxed_leaf_extra_blocks(unsigned level, bool final_root);
/// The idle-time estimate floor(64 * level / 1088) that ignores the trailer.
unsigned idle_estimate_blocks(unsigned level);
/// Capacity of the perfect relaxed tree with the extra blocks actually granted.
std::uint64_t compacted_relaxed_capacity(unsigned j);
/// Left side of the relaxed inequality plus the final bit, using the idle estimate.
std::uint64_t relaxed_inequality_capacity(unsigned j);

/// A root of `level` levels with its two leaves grown by `leaf_extra_blocks`,
/// fed by stand-in message-only nodes with the same finish times as the
/// compacted child subtrees (two of m + 1 blocks for each m < level).
NodeTree relaxed_unit_shape(unsigned level, bool final_root, unsigned leaf_extra_blocks);

}  // namespace parshake
