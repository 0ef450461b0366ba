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

#include "cli.hpp"

#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "parshake/error.hpp"
#include "parshake/json_io.hpp"
#include "parshake/oracle.hpp"
#include "parshake/planner.hpp"
#include "parshake/scheduler.hpp"
#include "selftest.hpp"

#ifndef PARSHAKE_DEFAULT_VECTORS
#define PARSHAKE_DEFAULT_VECTORS ""
#endif

namespace parshake::cli {

namespace {

struct Config {
  std::string strategy = "auto";
  std::uint64_t out_bits = 512;
  std::string in_file;
  std::optional<std::string> hex;
  unsigned bits = 0;
  std::optional<std::uint64_t> message_bits;
  std::string plan_file;
  std::string emit_tree;
  std::string emit_schedule;
  std::string vectors_file = PARSHAKE_DEFAULT_VECTORS;
  bool quick = false;
  bool parallel = false;
};

struct ValidationFailure {
  std::string what;
};

std::optional<BitString> read_message(const Config& c) {
  if (c.bits > 7) throw Error(ErrorCode::InvalidParameter, "--bits takes 0..7");
  std::string bytes;
  if (!c.in_file.empty()) {
    bytes = read_file(c.in_file);
  } else if (c.hex) {
    const BitString whole = BitString::from_hex(*c.hex);
    bytes.assign(whole.bytes().begin(), whole.bytes().end());
  } else {
    return std::nullopt;
  }
  std::size_t nbits = bytes.size() * 8;
  if (c.bits != 0) {
    if (bytes.empty()) throw Error(ErrorCode::InvalidParameter, "--bits needs at least one byte of input");
    nbits -= 8 - c.bits;
  }
  const auto* p = reinterpret_cast<const std::uint8_t*>(bytes.data());
  return BitString::from_bytes({p, bytes.size()}, nbits);
}

Plan plan_for(const Config& c, std::uint64_t n) {
  if (c.strategy == "auto") return make_plan(Strategy::ternary_with_model, n);
  return make_plan(strategy_from_string(c.strategy), n);
}

void print_report(std::ostream& out, const PlanReport& r) {
  out << "strategy=" << to_string(r.strategy) << '\n'
      << "model=" << r.model_id << '\n'
      << "message_bits=" << r.message_bits << '\n'
      << "subtrees=" << r.subtrees << '\n'
      << "j=" << r.j << '\n'
      << "nodes=" << r.node_count << '\n'
      << "predicted_depth=" << r.predicted_depth << '\n'
      << "predicted_processors=" << r.predicted_processors << '\n';
}

void print_schedule(std::ostream& out, const Schedule& s) {
  const WorkWidth w = work_and_width(s);
  out << "depth=" << s.depth << '\n'
      << "processors=" << w.processors << '\n'
      << "max_concurrency=" << w.max_concurrency << '\n'
      << "total_calls=" << w.total_calls << '\n'
      << "stalls=" << s.total_stalls << '\n';
}

void emit(const std::string& path, std::string_view json, std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    out << json;
  } else {
    write_file(path, json);
  }
}

/// Grammar of every node and the tree's shape; throws ValidationFailure.
void check_tree(const NodeTree& tree) {
  for (NodeId id = 0; id < tree.nodes.size(); ++id) {
    const GrammarCheck g = validate_grammar(tree.nodes[id]);
    if (!g.ok) throw ValidationFailure{"node " + std::to_string(id) + ": " + g.diagnosis};
  }
  try {
    tree.validate_structure();
  } catch (const Error& e) {
    throw ValidationFailure{e.what()};
  }
}

int cmd_hash(const Config& c, std::ostream& out) {
  const auto msg = read_message(c);
  if (!msg) throw Error(ErrorCode::InvalidParameter, "hash needs --in or --hex");
  const Plan plan = plan_for(c, msg->size());
  const Schedule s = simulate(plan.nodes, StallPolicy::stall, c.out_bits);
  const Digest d = c.parallel ? evaluate_parallel(plan.nodes, *msg, c.out_bits)
                              : evaluate_sequential(plan.nodes, *msg, c.out_bits);
  print_report(out, plan.report);
  out << "depth=" << s.depth << '\n' << "processors=" << s.processors << '\n';
  out << "total_calls=" << d.total_work << '\n';
  out << "digest_bits=" << d.bits.size() << '\n' << "digest=" << d.bits.to_hex() << '\n';
  emit(c.emit_tree, tree_to_json(to_document(plan)), out);
  emit(c.emit_schedule, schedule_to_json(s), out);
  return kOk;
}

std::uint64_t planned_length(const Config& c) {
  if (c.message_bits) return *c.message_bits;
  if (const auto msg = read_message(c)) return msg->size();
  throw Error(ErrorCode::InvalidParameter, "give --message-bits, --in or --hex");
}

int cmd_plan(const Config& c, std::ostream& out) {
  const Plan plan = plan_for(c, planned_length(c));
  const std::string json = tree_to_json(to_document(plan));
  if (c.emit_tree.empty() || c.emit_tree == "-") {
    out << json;
    return kOk;
  }
  write_file(c.emit_tree, json);
  print_report(out, plan.report);
  return kOk;
}

int cmd_analyze(const Config& c, std::ostream& out) {
  TreeDocument doc;
  if (!c.plan_file.empty()) {
    doc = tree_from_json(read_file(c.plan_file));
  } else {
    doc = to_document(plan_for(c, planned_length(c)));
  }
  if (doc.report) print_report(out, *doc.report);
  const Schedule s = simulate(doc.nodes, StallPolicy::stall, c.out_bits);
  print_schedule(out, s);
  emit(c.emit_schedule, schedule_to_json(s), out);

  // A tree is sound only if it needs no waiting: run it back to back and
  // look for chaining values used before they exist.
  const bool hb = validate_happens_before(simulate(doc.nodes, StallPolicy::eager, c.out_bits), doc.nodes);
  out << "happens_before=" << (hb ? "ok" : "violated") << '\n';
  check_tree(doc.nodes);
  out << "grammar=ok\n";
  return hb ? kOk : kInvalidPlan;
}

int cmd_selftest(const Config& c, std::ostream& out) {
  SelftestOptions o;
  o.quick = c.quick;
  if (!c.vectors_file.empty()) {
    try {
      o.vectors = vectors_from_json(read_file(c.vectors_file));
    } catch (const Error& e) {
      out << "vectors_error=" << e.what() << '\n';  // the vector suite then fails on its own
    }
  }
  bool all = true;
  for (const SuiteResult& r : run_selftest(o)) {
    out << "suite=" << r.name << " status=" << (r.passed ? "pass" : "fail") << " cases=" << r.cases;
    if (!r.passed) out << " detail=\"" << r.detail << '"';
    out << '\n';
    all = all && r.passed;
  }
  out << "selftest=" << (all ? "pass" : "fail") << '\n';
  return all ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel SHAKE256 tree hashing over Sakura-coded nodes", "parshake"};
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--strategy", c.strategy, "auto|ternary|ternary-min-procs|compacted|compacted-relaxed|single")
        ->check(CLI::IsMember({"auto", "ternary", "ternary-min-procs", "compacted", "compacted-relaxed", "single"}));
    sub->add_option("--out-bits", c.out_bits, "output length in bits")->check(CLI::PositiveNumber);
    auto* in = sub->add_option("--in", c.in_file, "message file");
    auto* hex = sub->add_option("--hex", c.hex, "message as hex");
    in->excludes(hex);
    sub->add_option("--bits", c.bits, "keep only this many low bits of the last byte (0 = all)")
        ->check(CLI::Range(0U, 7U));
    sub->add_option("--emit-tree", c.emit_tree, "write the tree JSON here (- for stdout)");
    sub->add_option("--emit-schedule", c.emit_schedule, "write the schedule JSON here (- for stdout)");
  };

  auto* hash = app.add_subcommand("hash", "hash a message and report the tree it used");
  add_common(hash);
  hash->add_flag("--parallel", c.parallel, "evaluate with the threaded executor");

  auto* plan = app.add_subcommand("plan", "emit the tree for a message length");
  add_common(plan);
  plan->add_option("--message-bits", c.message_bits, "message length when no input is given");

  auto* analyze = app.add_subcommand("analyze", "simulate a tree and check it");
  add_common(analyze);
  analyze->add_option("--message-bits", c.message_bits, "message length when no input is given");
  analyze->add_option("--plan", c.plan_file, "tree JSON to analyze instead of planning");

  auto* selftest = app.add_subcommand("selftest", "run the built-in suites");
  selftest->add_flag("--quick", c.quick, "reduced ranges");
  selftest->add_option("--vectors", c.vectors_file, "SHAKE256 vector file");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (hash->parsed()) return cmd_hash(c, out);
    if (plan->parsed()) return cmd_plan(c, out);
    if (analyze->parsed()) return cmd_analyze(c, out);
    return cmd_selftest(c, out);
  } catch (const ValidationFailure& v) {
    out << "grammar=violated\n";
    err << "error: " << v.what << '\n';
    return kInvalidPlan;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace parshake::cli
