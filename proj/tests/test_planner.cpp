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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "parshake/error.hpp"
#include "parshake/planner.hpp"
#include "parshake/scheduler.hpp"

using namespace parshake;

namespace {

NodeTree nodes_of(const HopTree& t, NodeRole role = NodeRole::final) {
  return map_hop_tree_to_node_tree(t, Compaction::aligned_multi_hop, role);
}

std::uint64_t pow3(unsigned e) {
  std::uint64_t v = 1;
  while (e--) v *= 3;
  return v;
}

// Straight from the definition, by repeated multiplication.
std::uint64_t clog3(std::uint64_t n, std::uint64_t unit) {
  std::uint64_t h = 0;
  for (std::uint64_t cap = unit; cap < n; cap *= 3) ++h;
  return h;
}

int brute_select(std::uint64_t n) {
  const std::uint64_t t = clog3(n, 3273) + 2;
  int best = -1;
  std::uint64_t best_score = 0;
  for (int i = 1; i <= 10; ++i) {
    const ModelEntry& m = model(i);
    if (clog3(n, m.n_mb) + m.t != t) continue;
    const std::uint64_t score = (n + m.n_mb - 1) / m.n_mb * m.n_p;
    if (best < 0 || score < best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("model table") {
  const auto& table = model_table();
  REQUIRE(table.size() == 11);
  const std::uint64_t n_mb[] = {2169, 2704, 3273, 4880, 6537, 7106, 7675, 11458, 13115, 13684, 14253};
  const unsigned n_p[] = {1, 2, 3, 2, 3, 4, 5, 4, 5, 6, 7};
  const unsigned t[] = {2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4};
  for (int i = 0; i <= 10; ++i) {
    CAPTURE(i);
    const ModelEntry& m = table[i];
    CHECK(m.id == i);
    CHECK(m.n_mb == n_mb[i]);
    CHECK(m.n_p == n_p[i]);
    CHECK(m.t == t[i]);
    CHECK(std::accumulate(m.distribution.begin(), m.distribution.end(), std::uint64_t{0}) == m.n_mb);
    if (i > 0) CHECK(m.distribution.size() == m.n_p);
  }
  CHECK(model(2).distribution == std::vector<std::uint64_t>{1111, 1081, 1081});
  CHECK(model(6).distribution == std::vector<std::uint64_t>{1175, 1081, 1081, 2169, 2169});
  CHECK(model(9).distribution == std::vector<std::uint64_t>{1751, 1081, 2169, 2169, 3257, 3257});
  CHECK_THROWS_AS(model(11), Error);
}

TEST_CASE("model subtrees") {
  const NodeTree m2 = nodes_of(build_model_subtree(2, {0, 3274}, true));
  REQUIRE(m2.nodes.size() == 3);
  CHECK(m2.nodes.back().total_bits == 2176);
  CHECK(m2.nodes[0].total_bits == 1088);
  CHECK(m2.nodes[1].total_bits == 1088);
  CHECK(simulate(m2).depth == 2);

  const NodeTree m1 = nodes_of(build_model_subtree(1, {0, 2704}, false), NodeRole::inner);
  CHECK(m1.nodes.size() == 2);
  CHECK(simulate(m1).depth == 2);
  const NodeTree inner2 = nodes_of(build_model_subtree(2, {0, 3273}, false), NodeRole::inner);
  CHECK(inner2.nodes.size() == 3);
  CHECK(simulate(inner2).depth == 2);

  CHECK_THROWS_AS(build_model_subtree(2, {0, 3274}, false), Error);

  // a short final slice shrinks the last leaf, never the root
  const NodeTree shrunk = nodes_of(build_model_subtree(6, {0, 7000}, true));
  CHECK(shrunk.nodes.back().total_bits == 3264);
  CHECK(shrunk.message_bits() == 7000);
}

TEST_CASE("every table model is rate-full and meets its time") {
  for (int id = 1; id <= 10; ++id) {
    for (bool as_final : {false, true}) {
      const ModelEntry& m = model(id);
      const NodeTree t = nodes_of(build_model_subtree(id, {0, m.n_mb + as_final}, as_final),
                                  as_final ? NodeRole::final : NodeRole::inner);
      CAPTURE(id);
      CAPTURE(as_final);
      CHECK(t.nodes.size() == m.n_p);
      CHECK(simulate(t).depth == m.t);
      for (const auto& node : t.nodes) {
        CHECK(node.total_bits % 1088 == 0);
        CHECK(std::get<SuffixPad>(node.segments.back()).zeros == 0);
      }
    }
  }
}

TEST_CASE("single kangaroo recipe") {
  const unsigned models[] = {0, 0, 2, 6, 10};
  for (unsigned k = 2; k <= 4; ++k) {
    const MaxKangaroo mk = max_single_kangaroo(k);
    CAPTURE(k);
    CHECK(mk.message_bits == model(models[k]).n_mb);
    const NodeTree t = nodes_of(mk.tree, NodeRole::inner);
    CHECK(t.nodes.size() == model(models[k]).n_p);
    CHECK(simulate(t).depth == k);
  }
  const MaxKangaroo k3 = max_single_kangaroo(3);
  bool has_2169 = false;
  for (const auto& h : k3.tree.hops()) has_2169 |= h.kind == HopKind::message && h.slice.length_bits == 2169;
  CHECK(has_2169);
  CHECK(max_single_kangaroo(5).n_cv > 6);
  try {
    max_single_kangaroo(1);
    FAIL("k=1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KTooSmall);
  }
}

TEST_CASE("exact logarithms") {
  CHECK(ceil_log3_ratio(3273, 3273) == 0);
  CHECK(ceil_log3_ratio(3274, 3273) == 1);
  CHECK(ceil_log3_ratio(9819, 3273) == 1);
  CHECK(ceil_log3_ratio(9820, 3273) == 2);
  CHECK(ceil_log3_ratio(1, 3273) == 0);
  CHECK(ceil_log3_ratio(29457, 3273) == 2);
  CHECK(ceil_log3_ratio(UINT64_MAX, 1) == 41);
  for (unsigned e = 0; e < 30; ++e) {
    CHECK(ceil_log3_ratio(pow3(e) * 3273, 3273) == e);
    CHECK(ceil_log3_ratio(pow3(e) * 3273 + 1, 3273) == e + 1);
  }
}

TEST_CASE("ternary plans") {
  const Plan p = plan_ternary(29457);
  CHECK(p.report.subtrees == 9);
  CHECK(p.nodes.nodes.size() == 27);
  CHECK(simulate(p.nodes).depth == 4);
  CHECK(p.report.predicted_depth == 4);
  CHECK(p.report.predicted_processors == 27);

  const Plan small = plan_ternary(3273);
  CHECK(simulate(small.nodes).depth == 2);
  CHECK(small.nodes.nodes.size() == 3);

  const Plan lone = plan_ternary(2170);
  CHECK(lone.nodes.nodes.size() == 1);
  CHECK(simulate(lone.nodes).depth == 2);
  CHECK(plan_ternary(2171).nodes.nodes.size() == 2);
  CHECK(plan_ternary(1).nodes.nodes.size() == 1);
}

TEST_CASE("processor-reducing model choice") {
  CHECK(select_model(13115) == 8);
  CHECK(brute_select(13115) == 8);
  CHECK(select_model(3275) == brute_select(3275));
  CHECK(model(select_model(3275)).t <= 3);
  CHECK(select_model(9819) == brute_select(9819));
  CHECK_THROWS_AS(select_model(3274), Error);

  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t n = 3275 + rng() % (i < 2000 ? 200'000 : 100'000'000);
    const int got = select_model(n);
    REQUIRE(got == brute_select(n));
    const ModelEntry& m = model(got);
    CHECK((n + m.n_mb - 1) / m.n_mb * m.n_p <= (n + 3272) / 3273 * 3);
  }
}

TEST_CASE("ternary trees over a chosen model") {
  const Plan one = plan_ternary_with_model(13115, 8);
  CHECK(one.report.subtrees == 1);
  CHECK(one.nodes.nodes.size() == 5);
  CHECK(simulate(one.nodes).depth == 4);

  const Plan chosen = plan_ternary_with_model(29457, select_model(29457));
  CHECK(simulate(chosen.nodes).depth == 4);
  CHECK(chosen.nodes.nodes.size() <= 27);

  const Plan via2 = plan_ternary_with_model(7675, 2);
  const Plan via6 = plan_ternary_with_model(7675, 6);
  CHECK(simulate(via2.nodes).depth == 3);
  CHECK(simulate(via6.nodes).depth == 3);
  CHECK(via2.nodes.nodes.size() == 7);
  CHECK(via6.nodes.nodes.size() == 5);
  CHECK_THROWS_AS(plan_ternary_with_model(3000, 2), Error);
}

TEST_CASE("compacted capacity identities") {
  for (unsigned j = 2; j <= 12; ++j) {
    CAPTURE(j);
    std::uint64_t s = 0, ks = 0;
    for (unsigned k = 0; k + 2 <= j; ++k) {
      s += pow3(k);
      ks += k * pow3(k);
    }
    CHECK(4 * ks + 5 * pow3(j - 1) == pow3(j - 1) * 2 * j + 3);
    const std::uint64_t proof_sum = pow3(j - 1) * 3209 + 64 * j + 128 * (j * s - s - ks);
    CHECK(proof_sum == pow3(j - 1) * 3305 - 32);
    CHECK(compacted_capacity(j) == proof_sum + 1);
    CHECK(compacted_capacity_by_levels(j) == compacted_capacity(j));
  }
  CHECK(compacted_capacity(3) == 29713 + 1);
  CHECK(compacted_height(29457) == 3);
  CHECK(compacted_height(compacted_capacity(5)) == 5);
  CHECK(compacted_height(compacted_capacity(5) + 1) == 6);
}

TEST_CASE("compacted plans") {
  const Plan p = plan_compacted(29457);
  CHECK(p.report.j == 3);
  CHECK(p.nodes.nodes.size() == 27);
  CHECK(simulate(p.nodes).depth == 4);
  CHECK(predict(Strategy::compacted, 29457).depth == 4);
  for (const auto& node : p.nodes.nodes) {
    std::size_t chaining = 0;
    for (const auto& seg : node.segments) {
      if (const auto* f = std::get_if<FrameBits>(&seg); f && f->label == "{∞}") ++chaining;
    }
    CHECK(chaining <= 1);
  }
  for (std::uint64_t n : {1ULL, 1000ULL, 5000ULL, 100'000ULL, 1'234'567ULL}) {
    const Plan c = plan_compacted(n);
    CHECK(c.nodes.message_bits() == n);
    CHECK(simulate(c.nodes).total_stalls == 0);
  }
}

TEST_CASE("relaxed leaves") {
  for (unsigned L = 1; L <= 60; ++L) {
    CAPTURE(L);
    CHECK(idle_estimate_blocks(L) == 64 * L / 1088);
    for (bool final_root : {false, true}) {
      const unsigned granted = relaxed_leaf_extra_blocks(L, final_root);
      // one past the feasible amount stalls the root, the amount itself does not
      CHECK(simulate(relaxed_unit_shape(L, final_root, granted)).total_stalls == 0);
      CHECK(simulate(relaxed_unit_shape(L, final_root, granted + 1)).total_stalls > 0);
      if (L != 17) CHECK(granted >= idle_estimate_blocks(L));
    }
  }
  CHECK(relaxed_leaf_extra_blocks(17, true) == 0);
  CHECK(relaxed_leaf_extra_blocks(18, true) == 1);

  for (unsigned j = 1; j <= 16; ++j) CHECK(compacted_relaxed_capacity(j) == compacted_capacity(j));
  for (unsigned j = 17; j <= 25; ++j) CHECK(compacted_relaxed_capacity(j) >= compacted_capacity(j));
  CHECK(relaxed_inequality_capacity(10) == compacted_capacity(10));

  for (std::uint64_t n : {5000ULL, 100'000ULL, 2'000'000ULL}) {
    const Plan a = plan_compacted(n);
    const Plan b = plan_compacted_relaxed(n);
    CHECK(b.nodes.nodes.size() == a.nodes.nodes.size());
    CHECK(simulate(b.nodes).depth == simulate(a.nodes).depth);
  }
}

TEST_CASE("closed-form predictions") {
  CHECK(predict(Strategy::ternary, 29457).depth == 4);
  CHECK(predict(Strategy::ternary, 29457).processors == 27);
  CHECK(predict(Strategy::ternary, 3273).depth == 2);
  CHECK(predict(Strategy::ternary, 3273).processors == 3);
  CHECK(predict(Strategy::compacted, 29457).depth == 4);
  CHECK(predict(Strategy::compacted, 29457).processors <= 27);
  for (Strategy s : {Strategy::ternary, Strategy::compacted}) {
    std::uint64_t last = 0;
    for (std::uint64_t n = 1; n < 50'000'000; n = n * 11 / 10 + 1) {
      const std::uint64_t d = predict(s, n).depth;
      CHECK(d >= last);
      last = d;
    }
  }
}

TEST_CASE("strategy names") {
  for (Strategy s : {Strategy::single_hop, Strategy::ternary, Strategy::ternary_with_model, Strategy::compacted,
                     Strategy::compacted_relaxed}) {
    CHECK(strategy_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(strategy_from_string("binary"), Error);
}
