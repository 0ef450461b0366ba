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

#include "parshake/sakura.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "parshake/error.hpp"

namespace parshake {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string byte_bits(unsigned value) {
  std::string out(8, '0');
  for (int i = 0; i < 8; ++i) {
    if ((value >> i) & 1U) out[i] = '1';
  }
  return out;
}

void check_cv_count(std::uint64_t n_cv) {
  if (n_cv == 0) throw Error(ErrorCode::GrammarViolation, "chaining hop without chaining values");
  if (n_cv > kMaxCVs) {
    throw Error(ErrorCode::TooManyCVs,
                std::to_string(n_cv) + " chaining values in one hop (limit " +
                    std::to_string(kMaxCVs) + ")");
  }
}

std::uint64_t segments_bits(const std::vector<Segment>& segs) {
  std::uint64_t total = 0;
  for (const auto& s : segs) total += segment_bits(s);
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// HopTree

HopId HopTree::add_message_hop(MessageSlice slice) {
  Hop h;
  h.kind = HopKind::message;
  h.slice = slice;
  hops_.push_back(std::move(h));
  return static_cast<HopId>(hops_.size() - 1);
}

HopId HopTree::add_chaining_hop(std::vector<HopId> children, bool kangaroo_first_child) {
  Hop h;
  h.kind = HopKind::chaining;
  h.children = std::move(children);
  h.kangaroo_first_child = kangaroo_first_child;
  check_cv_count(h.n_cv());
  hops_.push_back(std::move(h));
  return static_cast<HopId>(hops_.size() - 1);
}

void HopTree::set_root(HopId root) {
  if (root >= hops_.size()) throw Error(ErrorCode::InvalidParameter, "root hop out of range");
  root_ = root;
}

std::vector<HopId> HopTree::parents() const {
  std::vector<HopId> parent(hops_.size(), root_);
  for (HopId id = 0; id < hops_.size(); ++id) {
    for (HopId c : hops_[id].children) {
      if (c < parent.size()) parent[c] = id;
    }
  }
  return parent;
}

void HopTree::validate() const {
  if (hops_.empty()) throw Error(ErrorCode::GrammarViolation, "empty hop tree");
  if (root_ >= hops_.size()) throw Error(ErrorCode::GrammarViolation, "root hop out of range");
  std::vector<unsigned> in_edges(hops_.size(), 0);
  for (HopId id = 0; id < hops_.size(); ++id) {
    const Hop& h = hops_[id];
    if (h.kind == HopKind::message) {
      if (!h.children.empty() || h.kangaroo_first_child) {
        throw Error(ErrorCode::GrammarViolation, "message hop with children");
      }
      continue;
    }
    check_cv_count(h.n_cv());
    for (HopId c : h.children) {
      if (c >= hops_.size() || c == id) {
        throw Error(ErrorCode::GrammarViolation, "chaining hop references an invalid child");
      }
      ++in_edges[c];
    }
  }
  if (in_edges[root_] != 0) throw Error(ErrorCode::GrammarViolation, "final hop has a parent");
  for (HopId id = 0; id < hops_.size(); ++id) {
    if (id != root_ && in_edges[id] != 1) {
      throw Error(ErrorCode::GrammarViolation,
                  "hop " + std::to_string(id) + " has " + std::to_string(in_edges[id]) +
                      " outgoing edges");
    }
  }
  // With single parents everywhere, reachability from the root rules out cycles.
  std::vector<char> seen(hops_.size(), 0);
  std::vector<HopId> stack{root_};
  std::size_t reached = 0;
  while (!stack.empty()) {
    const HopId id = stack.back();
    stack.pop_back();
    if (seen[id]) throw Error(ErrorCode::CyclicDependency, "hop reached twice");
    seen[id] = 1;
    ++reached;
    for (HopId c : hops_[id].children) stack.push_back(c);
  }
  if (reached != hops_.size()) throw Error(ErrorCode::GrammarViolation, "unreachable hops");
}

std::vector<std::vector<std::uint32_t>> HopTree::indices() const {
  validate();
  std::vector<std::vector<std::uint32_t>> index(hops_.size());
  std::vector<HopId> stack{root_};
  while (!stack.empty()) {
    const HopId id = stack.back();
    stack.pop_back();
    const auto& children = hops_[id].children;
    for (std::uint32_t i = 0; i < children.size(); ++i) {
      index[children[i]] = index[id];
      index[children[i]].push_back(i);
      stack.push_back(children[i]);
    }
  }
  return index;
}

std::uint64_t HopTree::message_bits() const {
  std::uint64_t total = 0;
  for (const Hop& h : hops_) {
    if (h.kind == HopKind::message) total += h.slice.length_bits;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Segments and layouts

std::uint64_t segment_bits(const Segment& s) {
  return std::visit(Overloaded{
                        [](const MessageBits& m) { return m.slice.length_bits; },
                        [](const FrameBits& f) { return static_cast<std::uint64_t>(f.bits.size()); },
                        [](const CVSlot&) { return kCvBits; },
                        [](const AlignPad& p) { return std::uint64_t{1} + p.zeros; },
                        [](const SuffixPad& p) { return std::uint64_t{4} + p.zeros; },
                    },
                    s);
}

std::vector<CvPosition> NodeLayout::cv_positions() const {
  std::vector<CvPosition> out;
  std::uint64_t pos = 0;
  for (const auto& s : segments) {
    if (const auto* cv = std::get_if<CVSlot>(&s)) out.push_back({cv->producer, pos});
    pos += segment_bits(s);
  }
  return out;
}

std::uint64_t NodeLayout::message_bits() const {
  std::uint64_t total = 0;
  for (const auto& s : segments) {
    if (const auto* m = std::get_if<MessageBits>(&s)) total += m->slice.length_bits;
  }
  return total;
}

std::size_t NodeLayout::cv_count() const {
  return static_cast<std::size_t>(
      std::count_if(segments.begin(), segments.end(),
                    [](const Segment& s) { return std::holds_alternative<CVSlot>(s); }));
}

std::string NodeLayout::render() const {
  std::string out;
  bool prev_frame = false;
  for (const auto& s : segments) {
    const bool frame = std::holds_alternative<FrameBits>(s);
    if (!out.empty() && !(frame && prev_frame)) out.push_back(' ');
    std::visit(Overloaded{
                   [&](const MessageBits& m) { out += "M[" + std::to_string(m.slice.length_bits) + "]"; },
                   [&](const FrameBits& f) { out += f.label.empty() ? f.bits : f.label; },
                   [&](const CVSlot&) { out += "CV"; },
                   [&](const AlignPad& p) {
                     out += p.zeros == 0 ? std::string("1") : "10^" + std::to_string(p.zeros);
                   },
                   [&](const SuffixPad& p) {
                     out += p.zeros == 0 ? std::string("1111") : "1110^" + std::to_string(p.zeros) + "1";
                   },
               },
               s);
    prev_frame = frame;
  }
  return out;
}

std::uint64_t NodeTree::total_blocks() const {
  std::uint64_t total = 0;
  for (const auto& n : nodes) total += n.blocks();
  return total;
}

std::uint64_t NodeTree::message_bits() const {
  std::uint64_t total = 0;
  for (const auto& n : nodes) total += n.message_bits();
  return total;
}

void NodeTree::validate_structure() const {
  if (nodes.empty()) throw Error(ErrorCode::GrammarViolation, "empty node tree");
  std::vector<unsigned> consumed(nodes.size(), 0);
  for (NodeId id = 0; id < nodes.size(); ++id) {
    const NodeLayout& n = nodes[id];
    if (n.is_final != (id == final_node())) {
      throw Error(ErrorCode::GrammarViolation, "the final node must be the unique last node");
    }
    for (const auto& cv : n.cv_positions()) {
      if (cv.producer >= nodes.size()) {
        throw Error(ErrorCode::GrammarViolation, "CV slot refers to a missing node");
      }
      if (cv.producer >= id) {
        throw Error(ErrorCode::CyclicDependency,
                    "node " + std::to_string(id) + " consumes later node " + std::to_string(cv.producer));
      }
      ++consumed[cv.producer];
    }
  }
  for (NodeId id = 0; id + 1 < nodes.size(); ++id) {
    if (consumed[id] != 1) {
      throw Error(ErrorCode::GrammarViolation,
                  "node " + std::to_string(id) + " feeds " + std::to_string(consumed[id]) + " CV slots");
    }
  }
  if (consumed[final_node()] != 0) throw Error(ErrorCode::GrammarViolation, "final node is consumed");
}

// ---------------------------------------------------------------------------
// Encoding

std::uint64_t node_bit_cost(NodeRole role, NodeClass cls, std::uint64_t l, std::uint64_t n_cv) {
  if (cls != NodeClass::message_only) check_cv_count(n_cv);
  const std::uint64_t tail = role == NodeRole::inner ? 27 : 26;
  const std::uint64_t coded = (coded_nr_cvs_bytes(n_cv) - 1) * 8ULL;
  switch (cls) {
    case NodeClass::message_only:
      return l + (role == NodeRole::inner ? 3 : 2);
    case NodeClass::chaining_only:
      return n_cv * kCvBits + coded + tail;
    case NodeClass::kangaroo:
      return l + 2 + n_cv * kCvBits + coded + tail;
  }
  return 0;
}

unsigned coded_nr_cvs_bytes(std::uint64_t n_cv) {
  unsigned bytes = 1;
  for (std::uint64_t v = n_cv; v >= 256; v >>= 8) ++bytes;
  return bytes + 1;
}

std::string coded_nr_cvs_bits(std::uint64_t n_cv) {
  const unsigned value_bytes = coded_nr_cvs_bytes(n_cv) - 1;
  std::string out;
  for (unsigned i = value_bytes; i-- > 0;) out += byte_bits(static_cast<unsigned>((n_cv >> (8 * i)) & 0xFF));
  out += byte_bits(value_bytes);
  return out;
}

std::vector<Segment> encode_message_hop(MessageSlice slice) {
  std::vector<Segment> out;
  if (slice.length_bits > 0) out.emplace_back(MessageBits{slice});
  out.emplace_back(FrameBits{"1", ""});
  return out;
}

std::vector<Segment> encode_chaining_hop(std::span<const NodeId> producers) {
  check_cv_count(producers.size());
  std::vector<Segment> out;
  out.reserve(producers.size() + 3);
  for (NodeId p : producers) out.emplace_back(CVSlot{p});
  out.emplace_back(FrameBits{coded_nr_cvs_bits(producers.size()), "{" + std::to_string(producers.size()) + "}"});
  out.emplace_back(FrameBits{std::string(kNoInterleavingBits), "{\xE2\x88\x9E}"});
  out.emplace_back(FrameBits{"0", ""});
  return out;
}

NodeLayout encode_node(const NodeHop& first, std::span<const NodeHop> kangaroo_chain, bool is_final,
                       bool align_to_rate, BlockFill fill) {
  NodeLayout node;
  node.is_final = is_final;
  std::uint64_t pos = 0;
  auto add_all = [&](std::vector<Segment> segs) {
    for (auto& s : segs) {
      pos += segment_bits(s);
      node.segments.push_back(std::move(s));
    }
  };

  if (first.kind == HopKind::message) {
    if (!first.cv_producers.empty()) throw Error(ErrorCode::GrammarViolation, "message hop with CVs");
    add_all(encode_message_hop(first.slice));
  } else {
    add_all(encode_chaining_hop(first.cv_producers));
  }

  const std::uint64_t terminator_bits = is_final ? 1 : 2;
  for (std::size_t i = 0; i < kangaroo_chain.size(); ++i) {
    const NodeHop& hop = kangaroo_chain[i];
    if (hop.kind != HopKind::chaining) {
      throw Error(ErrorCode::GrammarViolation, "only chaining hops may follow kangaroo hopping");
    }
    auto segs = encode_chaining_hop(hop.cv_producers);
    if (!align_to_rate || i == 0) {
      node.segments.emplace_back(FrameBits{"1", ""});
      pos += 1;
    } else {
      std::uint64_t gap = (pos / kRateBits + 1) * kRateBits - pos;
      if (i + 1 == kangaroo_chain.size()) {
        const std::uint64_t rest = segments_bits(segs) + terminator_bits + kSuffixBits.size();
        gap += (kRateBits - rest % kRateBits) % kRateBits;
      }
      node.segments.emplace_back(AlignPad{static_cast<std::uint32_t>(gap - 1)});
      pos += gap;
    }
    add_all(std::move(segs));
  }

  node.segments.emplace_back(FrameBits{is_final ? "1" : "10", ""});
  pos += terminator_bits;

  SuffixPad suffix;
  const std::uint64_t unpadded = pos + kSuffixBits.size();
  const std::uint64_t slack = (kRateBits - unpadded % kRateBits) % kRateBits;
  if (slack != 0) {
    if (fill == BlockFill::exact) {
      throw Error(ErrorCode::MisalignedNode,
                  "node of " + std::to_string(unpadded) + " bits is not a multiple of " +
                      std::to_string(kRateBits));
    }
    if (fill == BlockFill::pad) suffix.zeros = static_cast<std::uint32_t>(slack);
  }
  node.segments.emplace_back(suffix);
  node.total_bits = unpadded + suffix.zeros;
  return node;
}

NodeTree map_hop_tree_to_node_tree(const HopTree& tree, Compaction compaction, NodeRole root_role) {
  tree.validate();
  NodeTree out;
  out.nodes.reserve(tree.size());

  // Explicit recursion through std::function keeps the post order obvious;
  // depth is bounded by the tree height.
  std::function<NodeId(HopId, bool)> emit = [&](HopId top, bool is_final) -> NodeId {
    std::vector<HopId> chain;  // top hop first while walking down
    HopId h = top;
    while (tree.hop(h).kind == HopKind::chaining && tree.hop(h).kangaroo_first_child) {
      chain.push_back(h);
      h = tree.hop(h).children.front();
    }
    std::reverse(chain.begin(), chain.end());

    auto producers_of = [&](HopId id) {
      std::vector<NodeId> producers;
      for (HopId c : tree.hop(id).cv_children()) producers.push_back(emit(c, false));
      return producers;
    };

    NodeHop first;
    first.kind = tree.hop(h).kind;
    first.slice = tree.hop(h).slice;
    if (first.kind == HopKind::chaining) first.cv_producers = producers_of(h);

    std::vector<NodeHop> kangaroo;
    for (HopId c : chain) {
      NodeHop nh;
      nh.kind = HopKind::chaining;
      nh.cv_producers = producers_of(c);
      kangaroo.push_back(std::move(nh));
    }

    if (compaction == Compaction::compacted_single_hop) {
      std::vector<NodeId> merged;
      if (first.kind == HopKind::chaining) merged = first.cv_producers;
      for (const auto& k : kangaroo) merged.insert(merged.end(), k.cv_producers.begin(), k.cv_producers.end());
      if (first.kind == HopKind::chaining) {
        first.cv_producers = std::move(merged);
        kangaroo.clear();
      } else if (!kangaroo.empty()) {
        kangaroo.resize(1);
        kangaroo[0].cv_producers = std::move(merged);
      }
    }

    NodeLayout layout = encode_node(first, kangaroo, is_final,
                                    compaction == Compaction::aligned_multi_hop, BlockFill::pad);
    layout.hops.push_back(h);
    layout.hops.insert(layout.hops.end(), chain.begin(), chain.end());
    out.nodes.push_back(std::move(layout));
    return static_cast<NodeId>(out.nodes.size() - 1);
  };

  emit(tree.root(), root_role == NodeRole::final);
  return out;
}

// ---------------------------------------------------------------------------
// Grammar check

std::string node_symbols(const NodeLayout& node) {
  std::string out;
  out.reserve(node.total_bits);
  for (const auto& s : node.segments) {
    std::visit(Overloaded{
                   [&](const MessageBits& m) { out.append(m.slice.length_bits, 'M'); },
                   [&](const FrameBits& f) { out += f.bits; },
                   [&](const CVSlot&) { out.append(kCvBits, 'C'); },
                   [&](const AlignPad& p) {
                     out.push_back('1');
                     out.append(p.zeros, '0');
                   },
                   [&](const SuffixPad& p) {
                     out += "111";
                     out.append(p.zeros, '0');
                     out.push_back('1');
                   },
               },
               s);
  }
  return out;
}

GrammarCheck parse_node_symbols(std::string_view s) {
  GrammarCheck result;
  auto fail = [&](std::string why) {
    result.ok = false;
    result.diagnosis = std::move(why);
    result.hops.clear();
    return result;
  };
  std::size_t e = s.size();
  auto at_end = [&](char c) { return e > 0 && s[e - 1] == c; };

  if (s.empty() || s.size() % kRateBits != 0) return fail("node length is not a positive multiple of the rate");

  // pad10*1 and the RawSHAKE suffix, read backwards: 1 0* 1 1 1
  if (!at_end('1')) return fail("node does not end with the padding bit 1");
  --e;
  while (at_end('0')) --e;
  if (!at_end('1')) return fail("malformed multi-rate padding");
  --e;
  if (!at_end('1')) return fail("missing suffix bit");
  --e;
  if (!at_end('1')) return fail("missing suffix bit");
  --e;

  // final node: '1'; inner node: padSimple '0', with the extra zeros removed: "10"
  if (at_end('1')) {
    result.is_final = true;
    --e;
  } else if (at_end('0') && e >= 2 && s[e - 2] == '1') {
    result.is_final = false;
    e -= 2;
  } else {
    return fail("malformed node terminator");
  }

  std::vector<ParsedHop> hops;
  for (;;) {
    if (e == 0) return fail("empty node body");
    if (at_end('1')) {
      --e;
      for (std::size_t i = 0; i < e; ++i) {
        if (s[i] != 'M') return fail("non-message bit inside a message hop at " + std::to_string(i));
      }
      hops.push_back({HopKind::message, e, 0});
      break;
    }
    if (!at_end('0')) return fail("hop does not end with a frame bit at " + std::to_string(e - 1));
    --e;
    if (e < 16) return fail("truncated interleaving block size");
    for (std::size_t i = e - 16; i < e; ++i) {
      if (s[i] != '1') return fail("interleaving block size is not the no-interleaving sentinel");
    }
    e -= 16;
    auto read_byte = [&](std::size_t start, unsigned& value) {
      value = 0;
      for (unsigned i = 0; i < 8; ++i) {
        const char c = s[start + i];
        if (c != '0' && c != '1') return false;
        if (c == '1') value |= 1U << i;
      }
      return true;
    };
    unsigned nbytes = 0;
    if (e < 8 || !read_byte(e - 8, nbytes)) return fail("malformed coded nrCVs length byte");
    e -= 8;
    if (nbytes == 0 || nbytes > 7 || e < 8ULL * nbytes) return fail("invalid coded nrCVs length");
    std::uint64_t n_cv = 0;
    for (unsigned b = 0; b < nbytes; ++b) {
      unsigned v = 0;
      if (!read_byte(e - 8ULL * nbytes + 8ULL * b, v)) return fail("malformed coded nrCVs");
      n_cv = (n_cv << 8) | v;
    }
    e -= 8ULL * nbytes;
    if (n_cv == 0) return fail("chaining hop declares zero chaining values");
    if (coded_nr_cvs_bytes(n_cv) != nbytes + 1) return fail("non-canonical coded nrCVs");
    if (n_cv > kMaxCVs) return fail("more than 255 chaining values in one hop");
    if (e < n_cv * kCvBits) return fail("declared chaining values exceed the node");
    for (std::size_t i = e - n_cv * kCvBits; i < e; ++i) {
      if (s[i] != 'C') return fail("coded nrCVs disagrees with the chaining value slots");
    }
    e -= n_cv * kCvBits;
    hops.push_back({HopKind::chaining, 0, n_cv});
    if (e == 0) break;
    // kangaroo hopping: padSimple between the previous node content and this hop
    while (at_end('0')) --e;
    if (!at_end('1')) return fail("missing padSimple before a kangaroo chaining hop");
    --e;
  }
  std::reverse(hops.begin(), hops.end());
  result.hops = std::move(hops);
  result.ok = true;
  return result;
}

GrammarCheck validate_grammar(const NodeLayout& node) {
  const std::string symbols = node_symbols(node);
  if (symbols.size() != node.total_bits) {
    GrammarCheck bad;
    bad.diagnosis = "segment lengths disagree with total_bits";
    return bad;
  }
  GrammarCheck check = parse_node_symbols(symbols);
  if (check.ok && check.is_final != node.is_final) {
    check.ok = false;
    check.diagnosis = "node role disagrees with its terminator";
    check.hops.clear();
  }
  return check;
}

}  // namespace parshake
