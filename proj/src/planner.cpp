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

#include "parshake/planner.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "parshake/error.hpp"

namespace parshake {

namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

constexpr u64 kU64Max = std::numeric_limits<u64>::max();

// A message-only node spends 7 bits on framing and suffix (6 when final).
constexpr u64 kMessageOnlyOverhead = 7;
// Head frame bit + padSimple + chaining trailer + "10" + 1111 around a
// single kangaroo hop (one bit less when final).
constexpr u64 kKangarooOverhead = 41;

u64 saturate(u128 v) { return v > kU64Max ? kU64Max : static_cast<u64>(v); }

u64 pow3_sat(unsigned e) {
  u128 v = 1;
  for (unsigned i = 0; i < e && v <= kU64Max; ++i) v *= 3;
  return saturate(v);
}

u64 message_only_capacity(u64 blocks, bool is_final) {
  return blocks * kRateBits - kMessageOnlyOverhead + (is_final ? 1 : 0);
}

u64 message_only_blocks(u64 bits, bool is_final) {
  return ceil_div(bits + kMessageOnlyOverhead - (is_final ? 1 : 0), kRateBits);
}

/// Head hop of a single-kangaroo root of `blocks` blocks holding `n_cv` CVs.
u64 kangaroo_head(u64 blocks, u64 n_cv, bool is_final) {
  return blocks * kRateBits - n_cv * kCvBits - kKangarooOverhead + (is_final ? 1 : 0);
}

// Hop trees are first described with lengths only, then emitted depth first
// so message offsets follow Sakura child order.
struct Proto {
  bool message = true;
  u64 length = 0;
  std::vector<std::size_t> children;
};

class ProtoTree {
 public:
  std::size_t message(u64 length) {
    items_.push_back({true, length, {}});
    return items_.size() - 1;
  }
  std::size_t kangaroo(std::vector<std::size_t> children) {
    items_.push_back({false, 0, std::move(children)});
    return items_.size() - 1;
  }

  HopTree emit(std::size_t root, u64 offset = 0) const {
    HopTree tree;
    const HopId top = emit_into(tree, root, offset);
    tree.set_root(top);
    return tree;
  }

  HopId emit_into(HopTree& tree, std::size_t id, u64& offset) const {
    const Proto& p = items_[id];
    if (p.message) {
      const HopId h = tree.add_message_hop({offset, p.length});
      offset += p.length;
      return h;
    }
    std::vector<HopId> kids;
    kids.reserve(p.children.size());
    for (std::size_t c : p.children) kids.push_back(emit_into(tree, c, offset));
    return tree.add_chaining_hop(std::move(kids), true);
  }

 private:
  std::vector<Proto> items_;
};

std::vector<u64> model_lengths(int id, u64 length, bool as_final) {
  const ModelEntry& m = model(id);
  const u64 cap = m.n_mb + (as_final ? 1 : 0);
  if (length > cap) {
    throw Error(ErrorCode::SliceTooLarge, std::to_string(length) + " bits exceed model " +
                                              std::to_string(id) + "'s " + std::to_string(cap));
  }
  std::vector<u64> lengths = m.distribution;
  if (as_final) ++lengths.front();
  u64 deficit = cap - length;
  for (std::size_t i = lengths.size(); i-- > 0 && deficit > 0;) {
    const u64 take = std::min(deficit, lengths[i]);
    lengths[i] -= take;
    deficit -= take;
  }
  return lengths;
}

std::size_t add_model(ProtoTree& proto, int id, u64 length, bool as_final) {
  if (id == 0) return proto.message(length);
  const auto lengths = model_lengths(id, length, as_final);
  std::vector<std::size_t> kids;
  for (u64 l : lengths) kids.push_back(proto.message(l));
  return proto.kangaroo(std::move(kids));
}

/// Cheapest subtree for an r-bit part that must finish within t units: fewest
/// nodes, then fewest message bits. A lone message hop of up to t blocks counts.
int cheapest_model(u64 r, u64 t, bool as_final) {
  int best = -1;
  auto better = [&](const ModelEntry& m) {
    if (best < 0) return true;
    const ModelEntry& b = model(best);
    return m.n_p < b.n_p || (m.n_p == b.n_p && m.n_mb < b.n_mb);
  };
  for (const ModelEntry& m : model_table()) {
    if (m.id == 0) {
      if (message_only_blocks(r, as_final) > t) continue;
    } else if (m.t > t || m.n_mb + (as_final ? 1 : 0) < r) {
      continue;
    }
    if (better(m)) best = m.id;
  }
  if (best < 0) throw Error(ErrorCode::SliceTooLarge, "no subtree model holds " + std::to_string(r) + " bits");
  return best;
}

Plan finish_plan(HopTree hops, Compaction compaction, PlanReport report) {
  Plan plan;
  plan.nodes = map_hop_tree_to_node_tree(hops, compaction);
  plan.hops = std::move(hops);
  report.node_count = plan.nodes.nodes.size();
  plan.report = report;
  return plan;
}

/// Parts of model `part_model` joined by kangaroo hops with two CVs each,
/// grouped three by three; every upper hop sits in its own block.
Plan compose_ternary(u64 n, int part_model, Strategy strategy) {
  const ModelEntry& pm = model(part_model);
  const u64 p = n <= pm.n_mb + 1 ? 1 : ceil_div(n, pm.n_mb);
  ProtoTree proto;
  std::vector<std::size_t> tops;
  int first_model = part_model;
  for (u64 i = 0; i < p; ++i) {
    if (i + 1 < p) {
      tops.push_back(add_model(proto, part_model, pm.n_mb, false));
      continue;
    }
    const u64 r = n - (p - 1) * pm.n_mb;
    const int id = cheapest_model(r, pm.t, p == 1);
    if (p == 1) first_model = id;
    tops.push_back(add_model(proto, id, r, p == 1));
  }
  u64 levels = 0;
  while (tops.size() > 1) {
    std::vector<std::size_t> next;
    for (std::size_t g = 0; g < tops.size(); g += 3) {
      if (g + 1 == tops.size()) {
        next.push_back(tops[g]);
      } else {
        const std::size_t end = std::min(g + 3, tops.size());
        next.push_back(proto.kangaroo({tops.begin() + static_cast<std::ptrdiff_t>(g),
                                       tops.begin() + static_cast<std::ptrdiff_t>(end)}));
      }
    }
    tops = std::move(next);
    ++levels;
  }

  PlanReport report;
  report.strategy = strategy;
  report.model_id = first_model;
  report.message_bits = n;
  report.j = levels;
  report.subtrees = p;
  if (p == 1) {
    const ModelEntry& m = model(first_model);
    report.predicted_depth = first_model == 0 ? message_only_blocks(n, true) : m.t;
    report.predicted_processors = m.n_p;
  } else {
    report.predicted_depth = ceil_log3_ratio(n, pm.n_mb) + pm.t;
    report.predicted_processors = p * pm.n_p;
  }
  return finish_plan(proto.emit(tops.front()), Compaction::aligned_multi_hop, report);
}

// --- compacted trees --------------------------------------------------------

unsigned leaf_extra(unsigned level, bool is_final, bool relaxed) {
  if (!relaxed) return 0;
  return std::min(relaxed_leaf_extra_blocks(level, is_final), idle_estimate_blocks(level));
}

u64 leaf_capacity(unsigned level, bool is_final, bool relaxed) {
  return message_only_capacity(1 + leaf_extra(level, is_final, relaxed), false);
}

/// A unit of level L alone: its root (L + 1 blocks) with two leaves and no
/// child units.
u64 unit_alone(unsigned level, bool is_final, bool relaxed) {
  return kangaroo_head(level + 1, 2, is_final) + 2 * leaf_capacity(level, is_final, relaxed);
}

u128 perfect_capacity(unsigned j, bool relaxed) {
  // C(L) = head with 2L CVs + 2 leaves + 2 * sum of C(m), m < L
  u128 lower_sum = 0;
  u128 total = 0;
  for (unsigned level = 1; level <= j; ++level) {
    const bool is_final = level == j;
    const u128 own = kangaroo_head(level + 1, 2ULL * level, is_final) +
                     2 * static_cast<u128>(leaf_capacity(level, is_final, relaxed));
    total = own + 2 * lower_sum;
    if (total > kU64Max) return total;
    lower_sum += total;
  }
  return total;
}

unsigned height_for(u64 n, bool relaxed) {
  unsigned j = 1;
  while (saturate(relaxed ? perfect_capacity(j, true) : static_cast<u128>(compacted_capacity(j))) < n) ++j;
  return j;
}

struct Unit {
  unsigned level = 0;
  std::vector<std::size_t> child_units;
  // filled once the unit set is fixed
  bool message_only = false;
  u64 head = 0;
  std::vector<u64> leaves;
  u64 finish = 0;
};

Plan build_compacted(u64 n, bool relaxed) {
  const unsigned j = height_for(n, relaxed);
  std::vector<Unit> units(1);
  units[0].level = j;
  u64 cap = unit_alone(j, true, relaxed);

  // Parents come first; each child unit adds its own bits minus the 512 its
  // chaining value takes from the parent's head.
  for (unsigned m = j; m-- > 1 && cap < n;) {
    const std::size_t known = units.size();
    for (std::size_t u = 0; u < known && cap < n; ++u) {
      if (units[u].level <= m) continue;
      for (int c = 0; c < 2 && cap < n; ++c) {
        Unit child;
        child.level = m;
        units.push_back(child);
        units[u].child_units.push_back(units.size() - 1);
        cap += unit_alone(m, false, relaxed) - kCvBits;
      }
    }
  }

  const std::size_t last = units.size() - 1;
  u64 used = 0;
  for (std::size_t u = 0; u < last; ++u) {
    Unit& unit = units[u];
    const bool is_final = u == 0;
    unit.head = kangaroo_head(unit.level + 1, 2 + unit.child_units.size(), is_final);
    unit.leaves.assign(2, leaf_capacity(unit.level, is_final, relaxed));
    used += unit.head + unit.leaves[0] + unit.leaves[1];
  }
  {
    Unit& unit = units[last];
    const bool is_final = last == 0;
    const u64 r = n - used;
    const u64 leaf_cap = leaf_capacity(unit.level, is_final, relaxed);
    const u64 head1 = kangaroo_head(unit.level + 1, 1, is_final);
    if (r <= message_only_capacity(unit.level + 1, is_final)) {
      unit.message_only = true;
      unit.head = r;
    } else if (r <= head1 + leaf_cap) {
      unit.head = head1;
      unit.leaves = {r - head1};
    } else {
      unit.head = kangaroo_head(unit.level + 1, 2, is_final);
      const u64 first = std::min(leaf_cap, r - unit.head);
      unit.leaves = {first, r - unit.head - first};
    }
  }

  // Children carry larger indices than their parents, so build bottom-up.
  ProtoTree proto;
  std::vector<std::size_t> top(units.size());
  for (std::size_t u = units.size(); u-- > 0;) {
    Unit& unit = units[u];
    const bool is_final = u == 0;
    if (unit.message_only) {
      top[u] = proto.message(unit.head);
      unit.finish = message_only_blocks(unit.head, is_final);
      continue;
    }
    struct Feed {
      u64 finish;
      bool leaf;
      std::size_t proto;
    };
    std::vector<Feed> feeds;
    for (u64 l : unit.leaves) feeds.push_back({message_only_blocks(l, false), true, proto.message(l)});
    for (std::size_t c : unit.child_units) feeds.push_back({units[c].finish, false, top[c]});
    std::stable_sort(feeds.begin(), feeds.end(), [](const Feed& a, const Feed& b) {
      return a.finish != b.finish ? a.finish < b.finish : (a.leaf && !b.leaf);
    });
    std::vector<std::size_t> kids{proto.message(unit.head)};
    for (const Feed& f : feeds) kids.push_back(f.proto);
    top[u] = proto.kangaroo(std::move(kids));
    unit.finish = unit.level + 1;
  }

  PlanReport report;
  report.strategy = relaxed ? Strategy::compacted_relaxed : Strategy::compacted;
  report.message_bits = n;
  report.j = j;
  report.subtrees = units.size();
  report.predicted_depth = j + 1;
  report.predicted_processors = predict(Strategy::compacted, n).processors;
  return finish_plan(proto.emit(top[0]), Compaction::compacted_single_hop, report);
}

}  // namespace

// --- models ----------------------------------------------------------------

const std::vector<ModelEntry>& model_table() {
  static const std::vector<ModelEntry> table = {
      {0, 2169, 1, 2, {2169}},
      {1, 2704, 2, 2, {1623, 1081}},
      {2, 3273, 3, 2, {1111, 1081, 1081}},
      {3, 4880, 2, 3, {2711, 2169}},
      {4, 6537, 3, 3, {2199, 2169, 2169}},
      {5, 7106, 4, 3, {1687, 1081, 2169, 2169}},
      {6, 7675, 5, 3, {1175, 1081, 1081, 2169, 2169}},
      {7, 11458, 4, 4, {2775, 2169, 3257, 3257}},
      {8, 13115, 5, 4, {2263, 2169, 2169, 3257, 3257}},
      {9, 13684, 6, 4, {1751, 1081, 2169, 2169, 3257, 3257}},
      {10, 14253, 7, 4, {1239, 1081, 1081, 2169, 2169, 3257, 3257}},
  };
  return table;
}

const ModelEntry& model(int id) {
  const auto& table = model_table();
  if (id < 0 || static_cast<std::size_t>(id) >= table.size()) {
    throw Error(ErrorCode::InvalidParameter, "no model " + std::to_string(id));
  }
  return table[static_cast<std::size_t>(id)];
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::single_hop: return "single";
    case Strategy::ternary: return "ternary";
    case Strategy::ternary_with_model: return "ternary-min-procs";
    case Strategy::compacted: return "compacted";
    case Strategy::compacted_relaxed: return "compacted-relaxed";
  }
  return "?";
}

Strategy strategy_from_string(std::string_view name) {
  for (Strategy s : {Strategy::single_hop, Strategy::ternary, Strategy::ternary_with_model,
                     Strategy::compacted, Strategy::compacted_relaxed}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown strategy '" + std::string(name) + "'");
}

// --- integer helpers ---------------------------------------------------------

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0 ? 1 : 0); }

std::uint64_t ceil_log3_ratio(std::uint64_t n, std::uint64_t unit) {
  if (unit == 0) throw Error(ErrorCode::InvalidParameter, "zero unit");
  std::uint64_t h = 0;
  for (u128 v = unit; v < n; v *= 3) ++h;
  return h;
}

// --- subtrees ------------------------------------------------------------------

HopId add_model_subtree(HopTree& tree, int id, MessageSlice slice, bool as_final) {
  ProtoTree proto;
  const std::size_t top = add_model(proto, id, slice.length_bits, as_final);
  u64 offset = slice.offset_bits;
  return proto.emit_into(tree, top, offset);
}

HopTree build_model_subtree(int id, MessageSlice slice, bool as_final) {
  HopTree tree;
  const HopId top = add_model_subtree(tree, id, slice, as_final);
  tree.set_root(top);
  return tree;
}

MaxKangaroo max_single_kangaroo(unsigned k) {
  if (k < 2) throw Error(ErrorCode::KTooSmall, "a kangaroo root needs at least 2 blocks");
  const u64 node = k * kRateBits;
  const u64 tail = kChainingTrailerBits + 2 + kSuffixBits.size();
  MaxKangaroo out;
  out.n_cv = static_cast<unsigned>(((k - 1) * kRateBits - tail) / kCvBits);
  const u64 head = node - tail - out.n_cv * kCvBits - 2;
  ProtoTree proto;
  std::vector<std::size_t> kids{proto.message(head)};
  out.message_bits = head;
  for (unsigned c = 0; c < out.n_cv; ++c) {
    const u64 first_bit = head + 2 + c * kCvBits;
    const u64 leaf = message_only_capacity(first_bit / kRateBits, false);
    kids.push_back(proto.message(leaf));
    out.message_bits += leaf;
  }
  out.tree = proto.emit(proto.kangaroo(std::move(kids)));
  return out;
}

// --- plans -------------------------------------------------------------------

Plan plan_single_hop(std::uint64_t n) {
  ProtoTree proto;
  PlanReport report;
  report.strategy = Strategy::single_hop;
  report.message_bits = n;
  report.subtrees = 1;
  report.predicted_depth = message_only_blocks(n, true);
  report.predicted_processors = 1;
  return finish_plan(proto.emit(proto.message(n)), Compaction::aligned_multi_hop, report);
}

Plan plan_ternary(std::uint64_t n) { return compose_ternary(n, 2, Strategy::ternary); }

int select_model(std::uint64_t n) {
  if (n < 3275) throw Error(ErrorCode::MessageTooShort, "model selection needs n >= 3275");
  const u64 t = ceil_log3_ratio(n, model(2).n_mb) + 2;
  int best = -1;
  u64 best_score = 0;
  for (int id = 1; id <= 10; ++id) {
    const ModelEntry& m = model(id);
    if (ceil_log3_ratio(n, m.n_mb) + m.t != t) continue;
    const u64 score = ceil_div(n, m.n_mb) * m.n_p;
    if (best < 0 || score < best_score) {
      best = id;
      best_score = score;
    }
  }
  return best;
}

Plan plan_ternary_with_model(std::uint64_t n, int model_id) {
  if (n < 3275) throw Error(ErrorCode::MessageTooShort, "model selection needs n >= 3275");
  if (model_id < 1 || model_id > 10) {
    throw Error(ErrorCode::InvalidParameter, "part model must be one of 1..10");
  }
  return compose_ternary(n, model_id, Strategy::ternary_with_model);
}

Plan plan_compacted(std::uint64_t n) { return build_compacted(n, false); }
Plan plan_compacted_relaxed(std::uint64_t n) { return build_compacted(n, true); }

Plan make_plan(Strategy strategy, std::uint64_t n) {
  switch (strategy) {
    case Strategy::single_hop: return plan_single_hop(n);
    case Strategy::ternary: return plan_ternary(n);
    case Strategy::ternary_with_model: {
      if (n >= 3275) return plan_ternary_with_model(n, select_model(n));
      Plan plan = plan_ternary(n);
      plan.report.strategy = Strategy::ternary_with_model;
      return plan;
    }
    case Strategy::compacted: return plan_compacted(n);
    case Strategy::compacted_relaxed: return plan_compacted_relaxed(n);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown strategy");
}

Prediction predict(Strategy strategy, std::uint64_t n) {
  switch (strategy) {
    case Strategy::single_hop: return {message_only_blocks(n, true), 1};
    case Strategy::ternary:
    case Strategy::ternary_with_model: {
      if (n < 3275) {
        const int id = cheapest_model(n, 2, true);
        return {id == 0 ? message_only_blocks(n, true) : model(id).t, model(id).n_p};
      }
      if (strategy == Strategy::ternary) return {ceil_log3_ratio(n, 3273) + 2, 3 * ceil_div(n, 3273)};
      const ModelEntry& m = model(select_model(n));
      return {ceil_log3_ratio(n, m.n_mb) + m.t, ceil_div(n, m.n_mb) * m.n_p};
    }
    case Strategy::compacted:
      return {ceil_log3_ratio(n + 31, 3305) + 2, 3 * ceil_div(n + 31, 3305)};
    case Strategy::compacted_relaxed:
      return {std::uint64_t{height_for(n, true)} + 1, 3 * ceil_div(n + 31, 3305)};
  }
  return {};
}

// --- compacted arithmetic ------------------------------------------------------

std::uint64_t compacted_capacity(unsigned j) {
  if (j == 0) throw Error(ErrorCode::InvalidParameter, "j starts at 1");
  const u128 v = static_cast<u128>(pow3_sat(j - 1)) * 3305;
  return saturate(v) == kU64Max ? kU64Max : saturate(v - 31);
}

std::uint64_t compacted_capacity_by_levels(unsigned j) {
  if (j == 0) throw Error(ErrorCode::InvalidParameter, "j starts at 1");
  return saturate(perfect_capacity(j, false));
}

unsigned compacted_height(std::uint64_t n) { return height_for(n, false); }

unsigned relaxed_leaf_extra_blocks(unsigned level, bool final_root) {
  if (level == 0) throw Error(ErrorCode::InvalidParameter, "level starts at 1");
  const u64 first_cv = kangaroo_head(level + 1, 2ULL * level, final_root) + 2;
  unsigned best = 0;
  for (unsigned e = 1;; ++e) {
    std::vector<u64> finish{1ULL + e, 1ULL + e};
    for (unsigned m = 1; m < level; ++m) finish.insert(finish.end(), 2, m + 1ULL);
    std::sort(finish.begin(), finish.end());
    bool ok = true;
    for (std::size_t k = 0; k < finish.size() && ok; ++k) {
      ok = first_cv + k * kCvBits >= finish[k] * kRateBits;
    }
    if (!ok) return best;
    best = e;
  }
}

unsigned idle_estimate_blocks(unsigned level) {
  return static_cast<unsigned>(64ULL * level / kRateBits);
}

std::uint64_t compacted_relaxed_capacity(unsigned j) {
  if (j == 0) throw Error(ErrorCode::InvalidParameter, "j starts at 1");
  return saturate(perfect_capacity(j, true));
}

std::uint64_t relaxed_inequality_capacity(unsigned j) {
  if (j == 0) throw Error(ErrorCode::InvalidParameter, "j starts at 1");
  u128 total = compacted_capacity(j);
  for (unsigned level = 1; level <= j; ++level) {
    const u128 count = level == j ? 1 : 2 * static_cast<u128>(pow3_sat(j - 1 - level));
    total += count * 2 * idle_estimate_blocks(level) * kRateBits;
  }
  return saturate(total);
}

NodeTree relaxed_unit_shape(unsigned level, bool final_root, unsigned leaf_extra_blocks) {
  if (level == 0) throw Error(ErrorCode::InvalidParameter, "level starts at 1");
  NodeTree tree;
  u64 offset = 0;
  struct Feed {
    u64 finish;
    bool leaf;
    NodeId node;
  };
  std::vector<Feed> feeds;
  auto add_message_node = [&](u64 blocks, bool leaf) {
    NodeHop hop;
    hop.slice = {offset, message_only_capacity(blocks, false)};
    offset += hop.slice.length_bits;
    tree.nodes.push_back(encode_node(hop, {}, false, false, BlockFill::exact));
    feeds.push_back({blocks, leaf, static_cast<NodeId>(tree.nodes.size() - 1)});
  };
  for (int i = 0; i < 2; ++i) add_message_node(1ULL + leaf_extra_blocks, true);
  for (unsigned m = 1; m < level; ++m) {
    for (int i = 0; i < 2; ++i) add_message_node(m + 1ULL, false);
  }
  std::stable_sort(feeds.begin(), feeds.end(), [](const Feed& a, const Feed& b) {
    return a.finish != b.finish ? a.finish < b.finish : (a.leaf && !b.leaf);
  });
  NodeHop head;
  head.slice = {offset, kangaroo_head(level + 1, 2ULL * level, final_root)};
  NodeHop chain;
  chain.kind = HopKind::chaining;
  for (const Feed& f : feeds) chain.cv_producers.push_back(f.node);
  tree.nodes.push_back(encode_node(head, std::span<const NodeHop>(&chain, 1), final_root, false,
                                   BlockFill::exact));
  return tree;
}

}  // namespace parshake
