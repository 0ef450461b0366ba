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

#include "selftest.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <random>

#include "parshake/error.hpp"
#include "parshake/oracle.hpp"
#include "parshake/planner.hpp"
#include "parshake/scheduler.hpp"
#include "parshake/sponge.hpp"

namespace parshake::cli {

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

SuiteResult run_suite(const std::string& name, const std::function<std::uint64_t()>& body) {
  SuiteResult r;
  r.name = name;
  try {
    r.cases = body();
    r.passed = true;
  } catch (const Failure& f) {
    r.detail = f.what;
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi, unsigned count) {
  std::vector<std::uint64_t> out;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (unsigned i = 0; i < count; ++i) {
    const double x = count == 1 ? a : a + (b - a) * i / (count - 1);
    out.push_back(static_cast<std::uint64_t>(std::llround(std::exp(x))));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::uint64_t vector_suite(const std::vector<TestVector>& vectors) {
  expect(!vectors.empty(), "no test vectors loaded");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const TestVector& v = vectors[i];
    const BitString msg = BitString::from_hex(v.message_hex, v.message_bit_length);
    const std::string got = shake256_reference(msg, v.out_len_bits).to_hex();
    expect(got == v.digest_hex, "vector " + std::to_string(i) + " digest mismatch");
  }
  return vectors.size();
}

std::uint64_t model_suite() {
  std::uint64_t cases = 0;
  for (int id = 1; id <= 10; ++id) {
    const ModelEntry& m = model(id);
    for (bool as_final : {false, true}) {
      const std::uint64_t n = m.n_mb + (as_final ? 1 : 0);
      HopTree hops = build_model_subtree(id, {0, n}, as_final);
      const NodeTree nodes = map_hop_tree_to_node_tree(hops, Compaction::aligned_multi_hop,
                                                        as_final ? NodeRole::final : NodeRole::inner);
      const Schedule s = simulate(nodes);
      const std::string tag = "model " + std::to_string(id) + (as_final ? " final" : " inner");
      expect(nodes.nodes.size() == m.n_p, tag + ": processor count");
      expect(s.depth == m.t, tag + ": depth");
      for (const auto& node : nodes.nodes) {
        const auto* pad = std::get_if<SuffixPad>(&node.segments.back());
        expect(pad != nullptr && pad->zeros == 0, tag + ": node not rate-full");
      }
      ++cases;
    }
    bool rejected = false;
    try {
      build_model_subtree(id, {0, m.n_mb + 2}, true);
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::SliceTooLarge;
    }
    expect(rejected, "model " + std::to_string(id) + " accepted two extra bits");
  }
  return cases;
}

std::uint64_t ternary_suite(unsigned samples) {
  std::uint64_t cases = 0;
  for (std::uint64_t n : log_spaced(3275, 10'000'000, samples)) {
    const Plan plan = plan_ternary(n);
    const Schedule s = simulate(plan.nodes);
    const Prediction p = predict(Strategy::ternary, n);
    expect(s.depth == p.depth, "ternary depth off at n=" + std::to_string(n));
    expect(plan.nodes.nodes.size() <= p.processors, "ternary node count off at n=" + std::to_string(n));
    expect(s.total_stalls == 0, "ternary stalls at n=" + std::to_string(n));
    ++cases;
  }
  return cases;
}

std::uint64_t compacted_suite(unsigned samples) {
  std::uint64_t cases = 0;
  for (std::uint64_t n : log_spaced(3275, 10'000'000, samples)) {
    const Plan plan = plan_compacted(n);
    const Schedule s = simulate(plan.nodes);
    const Prediction p = predict(Strategy::compacted, n);
    const std::string at = " at n=" + std::to_string(n);
    expect(s.depth <= p.depth, "compacted depth" + at);
    expect(plan.nodes.nodes.size() <= p.processors, "compacted node count" + at);
    expect(s.total_stalls == 0, "compacted stalls" + at);
    expect(validate_happens_before(simulate(plan.nodes, StallPolicy::eager), plan.nodes), "happens-before" + at);
    ++cases;
  }
  return cases;
}

std::uint64_t differential_suite(unsigned samples, std::uint64_t max_bits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Strategy strategies[] = {Strategy::single_hop, Strategy::ternary, Strategy::ternary_with_model,
                                 Strategy::compacted, Strategy::compacted_relaxed};
  const std::uint64_t out_lens[] = {256, 512, 1088, 4096};
  for (unsigned i = 0; i < samples; ++i) {
    const Strategy st = strategies[rng() % 5];
    const std::uint64_t n = st == Strategy::single_hop ? rng() % 20000 : rng() % (max_bits + 1);
    BitString msg;
    msg.reserve(n);
    for (std::uint64_t b = 0; b < n; b += 64) msg.append_bits(rng(), static_cast<unsigned>(std::min<std::uint64_t>(64, n - b)));
    const Plan plan = make_plan(st, n);
    const std::uint64_t out_len = out_lens[rng() % 4];
    expect(differential_check(plan.nodes, msg, out_len),
           "parallel digest differs for " + std::string(to_string(st)) + " n=" + std::to_string(n));
  }
  return samples;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& o) {
  std::vector<SuiteResult> out;
  out.push_back(run_suite("vectors", [&] { return vector_suite(o.vectors); }));
  out.push_back(run_suite("models", [] { return model_suite(); }));
  out.push_back(run_suite("ternary-sweep", [&] { return ternary_suite(o.quick ? 24 : 200); }));
  out.push_back(run_suite("compacted-sweep", [&] { return compacted_suite(o.quick ? 24 : 200); }));
  out.push_back(run_suite("differential", [&] {
    return differential_suite(o.quick ? 40 : 300, o.quick ? 100'000 : 1'000'000, o.seed);
  }));
  return out;
}

}  // namespace parshake::cli
