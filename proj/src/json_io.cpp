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

#include "parshake/json_io.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "parshake/error.hpp"

namespace parshake {

namespace {

using Json = nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  }
}

// Field access that reports the missing or mistyped key instead of a
// library message.
template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    parse_fail(std::string("field '") + key + "' has the wrong type");
  }
}

const Json& array_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    parse_fail(std::string("missing array '") + key + "'");
  }
  return j.at(key);
}

Json report_json(const PlanReport& r) {
  Json j;
  j["strategy"] = std::string(to_string(r.strategy));
  j["model_id"] = r.model_id;
  j["message_bits"] = r.message_bits;
  j["predicted_depth"] = r.predicted_depth;
  j["predicted_processors"] = r.predicted_processors;
  j["j"] = r.j;
  j["subtrees"] = r.subtrees;
  j["node_count"] = r.node_count;
  return j;
}

PlanReport report_from(const Json& j) {
  PlanReport r;
  try {
    r.strategy = strategy_from_string(field<std::string>(j, "strategy"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_fail(e.what());
  }
  r.model_id = field<int>(j, "model_id");
  r.message_bits = field<std::uint64_t>(j, "message_bits");
  r.predicted_depth = field<std::uint64_t>(j, "predicted_depth");
  r.predicted_processors = field<std::uint64_t>(j, "predicted_processors");
  r.j = field<std::uint64_t>(j, "j");
  r.subtrees = field<std::uint64_t>(j, "subtrees");
  r.node_count = field<std::uint64_t>(j, "node_count");
  return r;
}

Json segment_json(const Segment& s) {
  return std::visit(Overloaded{
                        [](const MessageBits& m) {
                          return Json{{"type", "message"},
                                      {"offset_bits", m.slice.offset_bits},
                                      {"length_bits", m.slice.length_bits}};
                        },
                        [](const FrameBits& f) {
                          Json j{{"type", "frame"}, {"bits", f.bits}};
                          if (!f.label.empty()) j["label"] = f.label;
                          return j;
                        },
                        [](const CVSlot& c) { return Json{{"type", "cv"}, {"producer", c.producer}}; },
                        [](const AlignPad& p) { return Json{{"type", "align_pad"}, {"zeros", p.zeros}}; },
                        [](const SuffixPad& p) { return Json{{"type", "suffix_pad"}, {"zeros", p.zeros}}; },
                    },
                    s);
}

Segment segment_from(const Json& j) {
  const auto type = field<std::string>(j, "type");
  if (type == "message") {
    return MessageBits{{field<std::uint64_t>(j, "offset_bits"), field<std::uint64_t>(j, "length_bits")}};
  }
  if (type == "frame") {
    FrameBits f{field<std::string>(j, "bits"), j.contains("label") ? field<std::string>(j, "label") : ""};
    if (f.bits.find_first_not_of("01") != std::string::npos) parse_fail("frame bits must be 0/1");
    return f;
  }
  if (type == "cv") return CVSlot{field<NodeId>(j, "producer")};
  if (type == "align_pad") return AlignPad{field<std::uint32_t>(j, "zeros")};
  if (type == "suffix_pad") return SuffixPad{field<std::uint32_t>(j, "zeros")};
  parse_fail("unknown segment type '" + type + "'");
}

}  // namespace

TreeDocument to_document(const Plan& plan) {
  TreeDocument doc;
  doc.report = plan.report;
  doc.message_bits = plan.report.message_bits;
  doc.hops = plan.hops;
  doc.nodes = plan.nodes;
  return doc;
}

std::string tree_to_json(const TreeDocument& doc) {
  Json j;
  j["format"] = std::string(kTreeFormat);
  if (doc.report) j["report"] = report_json(*doc.report);
  j["message_bits"] = doc.message_bits;
  if (doc.hops) {
    const HopTree& t = *doc.hops;
    const auto index = t.indices();
    Json hops = Json::array();
    for (HopId id = 0; id < t.size(); ++id) {
      const Hop& h = t.hop(id);
      Json hj;
      hj["id"] = id;
      hj["index"] = index[id];
      if (h.kind == HopKind::message) {
        hj["kind"] = "message";
        hj["offset_bits"] = h.slice.offset_bits;
        hj["length_bits"] = h.slice.length_bits;
      } else {
        hj["kind"] = "chaining";
        hj["children"] = h.children;
        hj["kangaroo_first_child"] = h.kangaroo_first_child;
      }
      hops.push_back(std::move(hj));
    }
    j["hops"] = std::move(hops);
    j["root_hop"] = t.root();
  }
  Json nodes = Json::array();
  for (NodeId id = 0; id < doc.nodes.nodes.size(); ++id) {
    const NodeLayout& n = doc.nodes.nodes[id];
    Json nj;
    nj["id"] = id;
    nj["final"] = n.is_final;
    nj["total_bits"] = n.total_bits;
    nj["hops"] = n.hops;
    Json segs = Json::array();
    for (const auto& s : n.segments) segs.push_back(segment_json(s));
    nj["segments"] = std::move(segs);
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

TreeDocument tree_from_json(std::string_view text) {
  const Json j = parse(text);
  if (field<std::string>(j, "format") != kTreeFormat) parse_fail("not a " + std::string(kTreeFormat) + " document");
  TreeDocument doc;
  if (j.contains("report")) doc.report = report_from(j.at("report"));
  doc.message_bits = field<std::uint64_t>(j, "message_bits");

  if (j.contains("hops")) {
    HopTree t;
    HopId expected = 0;
    for (const Json& hj : array_field(j, "hops")) {
      if (field<HopId>(hj, "id") != expected++) parse_fail("hops must be listed by id");
      const auto kind = field<std::string>(hj, "kind");
      try {
        if (kind == "message") {
          t.add_message_hop({field<std::uint64_t>(hj, "offset_bits"), field<std::uint64_t>(hj, "length_bits")});
        } else if (kind == "chaining") {
          t.add_chaining_hop(field<std::vector<HopId>>(hj, "children"), field<bool>(hj, "kangaroo_first_child"));
        } else {
          parse_fail("unknown hop kind '" + kind + "'");
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        parse_fail(e.what());
      }
    }
    try {
      t.set_root(field<HopId>(j, "root_hop"));
      const auto index = t.indices();  // validates
      for (HopId id = 0; id < t.size(); ++id) {
        if (array_field(j, "hops")[id].at("index") != Json(index[id])) {
          parse_fail("hop " + std::to_string(id) + " has an inconsistent Sakura index");
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      parse_fail(e.what());
    }
    doc.hops = std::move(t);
  }

  NodeId expected = 0;
  for (const Json& nj : array_field(j, "nodes")) {
    if (field<NodeId>(nj, "id") != expected++) parse_fail("nodes must be listed by id");
    NodeLayout n;
    n.is_final = field<bool>(nj, "final");
    n.hops = nj.contains("hops") ? field<std::vector<HopId>>(nj, "hops") : std::vector<HopId>{};
    std::uint64_t total = 0;
    for (const Json& sj : array_field(nj, "segments")) {
      n.segments.push_back(segment_from(sj));
      total += segment_bits(n.segments.back());
    }
    n.total_bits = field<std::uint64_t>(nj, "total_bits");
    if (n.total_bits != total) parse_fail("node " + std::to_string(expected - 1) + " total_bits disagrees with its segments");
    doc.nodes.nodes.push_back(std::move(n));
  }
  if (doc.nodes.nodes.empty()) parse_fail("a tree needs at least one node");
  return doc;
}

std::string schedule_to_json(const Schedule& s) {
  Json j;
  j["format"] = std::string(kScheduleFormat);
  j["policy"] = s.policy == StallPolicy::stall ? "stall" : "eager";
  j["depth"] = s.depth;
  j["processors"] = s.processors;
  j["max_concurrency"] = s.max_concurrency;
  j["total_calls"] = s.total_calls;
  j["total_stalls"] = s.total_stalls;
  Json rows = Json::array();
  for (const auto& t : s.nodes) {
    Json r;
    r["node_id"] = t.node_id;
    r["block_times"] = t.block_times;
    r["squeeze_calls"] = t.squeeze_calls;
    r["finish"] = t.finish;
    r["stalls"] = t.stalls;
    rows.push_back(std::move(r));
  }
  j["nodes"] = std::move(rows);
  return j.dump(2) + "\n";
}

Schedule schedule_from_json(std::string_view text) {
  const Json j = parse(text);
  if (field<std::string>(j, "format") != kScheduleFormat) parse_fail("not a " + std::string(kScheduleFormat) + " document");
  Schedule s;
  const auto policy = field<std::string>(j, "policy");
  if (policy != "stall" && policy != "eager") parse_fail("unknown policy '" + policy + "'");
  s.policy = policy == "stall" ? StallPolicy::stall : StallPolicy::eager;
  s.depth = field<std::uint64_t>(j, "depth");
  s.processors = field<std::uint64_t>(j, "processors");
  s.max_concurrency = field<std::uint64_t>(j, "max_concurrency");
  s.total_calls = field<std::uint64_t>(j, "total_calls");
  s.total_stalls = field<std::uint64_t>(j, "total_stalls");
  for (const Json& r : array_field(j, "nodes")) {
    NodeTimeline t;
    t.node_id = field<NodeId>(r, "node_id");
    t.block_times = field<std::vector<std::uint64_t>>(r, "block_times");
    t.squeeze_calls = field<std::uint64_t>(r, "squeeze_calls");
    t.finish = field<std::uint64_t>(r, "finish");
    t.stalls = field<std::uint64_t>(r, "stalls");
    s.nodes.push_back(std::move(t));
  }
  return s;
}

std::vector<TestVector> vectors_from_json(std::string_view text) {
  const Json j = parse(text);
  if (!j.is_array()) parse_fail("a vector file is a JSON array");
  std::vector<TestVector> out;
  for (const Json& v : j) {
    out.push_back({field<std::string>(v, "message_hex"), field<std::uint64_t>(v, "message_bit_length"),
                   field<std::uint64_t>(v, "out_len_bits"), field<std::string>(v, "digest_hex")});
  }
  return out;
}

std::string vectors_to_json(const std::vector<TestVector>& vectors) {
  Json j = Json::array();
  for (const auto& v : vectors) {
    j.push_back({{"message_hex", v.message_hex},
                 {"message_bit_length", v.message_bit_length},
                 {"out_len_bits", v.out_len_bits},
                 {"digest_hex", v.digest_hex}});
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::ParseError, "write failed for " + path);
}

}  // namespace parshake
