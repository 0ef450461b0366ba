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

#include "parshake/error.hpp"
#include "parshake/json_io.hpp"

using namespace parshake;

namespace {

ErrorCode parse_code(std::string_view text) {
  try {
    tree_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidParameter;
}

}  // namespace

TEST_CASE("tree documents round trip to identical text") {
  for (Strategy s : {Strategy::single_hop, Strategy::ternary, Strategy::ternary_with_model, Strategy::compacted,
                     Strategy::compacted_relaxed}) {
    const Plan p = make_plan(s, 33'000);
    const std::string text = tree_to_json(to_document(p));
    const TreeDocument back = tree_from_json(text);
    CHECK(tree_to_json(back) == text);
    REQUIRE(back.hops.has_value());
    CHECK(*back.hops == p.hops);
    CHECK(back.report == p.report);
    CHECK(back.message_bits == 33'000);
    REQUIRE(back.nodes.nodes.size() == p.nodes.nodes.size());
    for (std::size_t i = 0; i < back.nodes.nodes.size(); ++i) {
      CHECK(back.nodes.nodes[i].render() == p.nodes.nodes[i].render());
      CHECK(back.nodes.nodes[i].total_bits == p.nodes.nodes[i].total_bits);
    }
  }
}

TEST_CASE("compacted trees carry no alignment padding") {
  const std::string text = tree_to_json(to_document(plan_compacted(29457)));
  CHECK(text.find("align_pad") == std::string::npos);
  CHECK(tree_to_json(to_document(plan_ternary(29457))).find("align_pad") != std::string::npos);
  CHECK(text.find("\"format\": \"parshake-tree/1\"") != std::string::npos);
}

TEST_CASE("schedules round trip") {
  const Plan p = plan_ternary(12'345);
  const Schedule s = simulate(p.nodes, StallPolicy::stall, 2000);
  const std::string text = schedule_to_json(s);
  CHECK(schedule_from_json(text) == s);
  CHECK(schedule_to_json(schedule_from_json(text)) == text);
}

TEST_CASE("broken tree files are rejected") {
  CHECK(parse_code("{") == ErrorCode::ParseError);
  CHECK(parse_code("[]") == ErrorCode::ParseError);
  CHECK(parse_code(R"({"format": "something-else/1", "nodes": []})") == ErrorCode::ParseError);
  std::string text = tree_to_json(to_document(plan_ternary(5000)));
  const auto at = text.find("\"message\"");
  REQUIRE(at != std::string::npos);
  text.replace(at, 9, "\"mystery\"");
  CHECK(parse_code(text) == ErrorCode::ParseError);
  CHECK_THROWS_AS(read_file("/nonexistent/tree.json"), Error);
}

TEST_CASE("vector files") {
  const std::vector<TestVector> v = {{"00ff", 12, 256, "ab"}, {"", 0, 512, "cd"}};
  const auto back = vectors_from_json(vectors_to_json(v));
  REQUIRE(back.size() == 2);
  CHECK(back[0].message_hex == "00ff");
  CHECK(back[0].message_bit_length == 12);
  CHECK(back[1].out_len_bits == 512);
  CHECK(back[1].digest_hex == "cd");
  CHECK_THROWS_AS(vectors_from_json("{\"nope\": 1}"), Error);
}
