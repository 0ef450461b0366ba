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

#include <filesystem>
#include <sstream>

#include "../tools/cli.hpp"
#include "known_answers.hpp"
#include "parshake/json_io.hpp"

using namespace parshake;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "parshake");
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool has_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("parshake_cli_" + name);
}

}  // namespace

TEST_CASE("hash prints the digest and the tree it used") {
  const Run r = run({"hash", "--hex", "", "--strategy", "single"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "digest=" + std::string(kat::kShakeEmpty512)));
  CHECK(has_line(r.out, "strategy=single"));

  const std::string hex(2 * 4000, 'a');
  const Run seq = run({"hash", "--hex", hex, "--strategy", "compacted"});
  const Run par = run({"hash", "--hex", hex, "--strategy", "compacted", "--parallel"});
  CHECK(seq.code == 0);
  CHECK(seq.out == par.out);
  const Run shorter = run({"hash", "--hex", hex, "--strategy", "compacted", "--out-bits", "256"});
  CHECK(has_line(shorter.out, "digest_bits=256"));

  const Run partial = run({"hash", "--hex", "ff", "--bits", "3", "--strategy", "single"});
  CHECK(has_line(partial.out, "message_bits=3"));
}

TEST_CASE("plan writes a tree that analyze accepts") {
  const auto path = scratch("plan.json");
  const Run plan = run({"plan", "--message-bits", "29457", "--strategy", "ternary", "--emit-tree", path.string()});
  CHECK(plan.code == 0);
  CHECK(has_line(plan.out, "nodes=27"));
  const Run analyze = run({"analyze", "--plan", path.string()});
  CHECK(analyze.code == 0);
  CHECK(has_line(analyze.out, "depth=4"));
  CHECK(has_line(analyze.out, "happens_before=ok"));
  CHECK(has_line(analyze.out, "grammar=ok"));

  const Run json = run({"plan", "--message-bits", "5000"});
  CHECK(json.out.find("parshake-tree/1") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("analyze rejects a tree that needs a value too early") {
  NodeTree tree;
  tree.nodes.push_back(
      encode_node(NodeHop{HopKind::message, {0, 2169}, {}}, {}, false, true, BlockFill::pad));
  tree.nodes.push_back(encode_node(NodeHop{HopKind::chaining, {}, {0}}, {}, true, true, BlockFill::pad));
  TreeDocument doc;
  doc.message_bits = 2169;
  doc.nodes = tree;
  const auto path = scratch("early.json");
  write_file(path.string(), tree_to_json(doc));
  const Run r = run({"analyze", "--plan", path.string()});
  CHECK(r.code == 3);
  CHECK(has_line(r.out, "happens_before=violated"));
  std::filesystem::remove(path);
}

TEST_CASE("bad command lines") {
  CHECK(run({}).code == 2);
  CHECK(run({"hash"}).code != 0);
  CHECK(run({"hash", "--hex", "00", "--strategy", "binary"}).code != 0);
  CHECK(run({"hash", "--hex", "00", "--bits", "9"}).code != 0);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"analyze", "--plan", "/nonexistent.json"}).code == 1);
}

TEST_CASE("quick selftest") {
  const Run r = run({"selftest", "--quick"});
  CHECK(r.code == 0);
  CHECK(r.out.find("status=fail") == std::string::npos);
  CHECK(r.out.find("suite=models status=pass") != std::string::npos);
}
