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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace parshake {

// Geometry of the tree mode over Keccak[512]. Every node is a whole number of
// rate-sized blocks and every chaining value is one capacity.
inline constexpr std::uint64_t kRateBits = 1088;
inline constexpr std::uint64_t kCvBits = 512;
inline constexpr std::uint64_t kMaxCVs = 255;
/// RawSHAKE suffix 11 followed by pad10*1 with no zeros.
inline constexpr std::string_view kSuffixBits = "1111";
/// Chaining hop trailer: coded nrCVs (2 bytes), interleaving sentinel (2 bytes), '0'.
inline constexpr std::uint64_t kChainingTrailerBits = 33;

using HopId = std::uint32_t;
using NodeId = std::uint32_t;

/// A run of the global message, referenced by position; never copied.
struct MessageSlice {
  std::uint64_t offset_bits = 0;
  std::uint64_t length_bits = 0;

  friend bool operator==(const MessageSlice&, const MessageSlice&) = default;
};

// ---------------------------------------------------------------------------
// Hop tree

enum class HopKind { message, chaining };

struct Hop {
  HopKind kind = HopKind::message;
  MessageSlice slice;           // message hops only
  std::vector<HopId> children;  // chaining hops only, Sakura child order
  /// Child 0 sits in the same node, absorbed by kangaroo hopping; the other
  /// children contribute one chaining value each.
  bool kangaroo_first_child = false;

  std::size_t n_cv() const noexcept {
    return children.size() - (kangaroo_first_child && !children.empty() ? 1 : 0);
  }
  std::span<const HopId> cv_children() const noexcept {
    return std::span<const HopId>(children).subspan(kangaroo_first_child ? 1 : 0);
  }

  friend bool operator==(const Hop&, const Hop&) = default;
};

class HopTree {
 public:
  HopId add_message_hop(MessageSlice slice);
  HopId add_chaining_hop(std::vector<HopId> children, bool kangaroo_first_child);
  void set_root(HopId root);

  HopId root() const { return root_; }
  const Hop& hop(HopId id) const { return hops_.at(id); }
  const std::vector<Hop>& hops() const noexcept { return hops_; }
  std::size_t size() const noexcept { return hops_.size(); }

  /// Checks the tree shape (one final hop, every other hop with exactly one
  /// outgoing edge, all hops reachable) and the CV count limits. Throws
  /// GrammarViolation / TooManyCVs.
  void validate() const;

  /// Sakura index of every hop: the final hop is the empty sequence and the
  /// i-th child of a hop indexed alpha is alpha || i-1.
  std::vector<std::vector<std::uint32_t>> indices() const;
  std::vector<HopId> parents() const;  // root maps to itself

  std::uint64_t message_bits() const;

  friend bool operator==(const HopTree&, const HopTree&) = default;

 private:
  std::vector<Hop> hops_;
  HopId root_ = 0;
};

// ---------------------------------------------------------------------------
// Node layouts

struct MessageBits {
  MessageSlice slice;
};
struct FrameBits {
  std::string bits;   // literal '0'/'1' in absorption order
  std::string label;  // rendering hint, e.g. "{4}" or "{inf}"; empty for plain bits
};
struct CVSlot {
  NodeId producer = 0;
};
/// padSimple used to push a chaining hop onto a block boundary: '1' then zeros.
struct AlignPad {
  std::uint32_t zeros = 0;
};
/// RawSHAKE suffix and multi-rate padding: "11" "1" 0^zeros "1". Nodes that
/// fill their last block exactly carry zeros = 0, i.e. the literal 1111.
struct SuffixPad {
  std::uint32_t zeros = 0;
};

using Segment = std::variant<MessageBits, FrameBits, CVSlot, AlignPad, SuffixPad>;

std::uint64_t segment_bits(const Segment& s);

struct CvPosition {
  NodeId producer = 0;
  std::uint64_t bit_offset = 0;
};

struct NodeLayout {
  std::vector<Segment> segments;
  bool is_final = false;
  std::uint64_t total_bits = 0;
  std::vector<HopId> hops;  // source hops, first hop to top hop; informational

  std::uint64_t blocks() const noexcept { return (total_bits + kRateBits - 1) / kRateBits; }
  std::vector<CvPosition> cv_positions() const;
  std::uint64_t message_bits() const;
  std::size_t cv_count() const;
  /// One-line picture in the style M[1175] 1 1 CV CV CV CV {4}{inf}0 1 1111.
  std::string render() const;
};

/// Nodes in topological order (every CVSlot refers to an earlier node); the
/// final node is last.
struct NodeTree {
  std::vector<NodeLayout> nodes;

  NodeId final_node() const { return static_cast<NodeId>(nodes.size() - 1); }
  std::uint64_t total_blocks() const;
  std::uint64_t message_bits() const;
  /// Exactly one final node, at the end; CV producers earlier in order and
  /// consumed exactly once. Throws GrammarViolation or CyclicDependency.
  void validate_structure() const;
};

// ---------------------------------------------------------------------------
// Encoding

enum class NodeRole { inner, final };
enum class NodeClass { message_only, chaining_only, kangaroo };

/// Sakura-coded node size excluding the 4 suffix/padding bits.
std::uint64_t node_bit_cost(NodeRole role, NodeClass cls, std::uint64_t l, std::uint64_t n_cv);

/// Bytes needed by coded nrCVs: floor(log256(n_cv)) + 2.
unsigned coded_nr_cvs_bytes(std::uint64_t n_cv);
/// n_cv in big-endian bytes followed by the byte count, each byte LSB first.
std::string coded_nr_cvs_bits(std::uint64_t n_cv);
/// "No interleaving" sentinel: two all-ones bytes.
inline constexpr std::string_view kNoInterleavingBits = "1111111111111111";

std::vector<Segment> encode_message_hop(MessageSlice slice);
std::vector<Segment> encode_chaining_hop(std::span<const NodeId> producers);

/// One hop as it sits inside a node.
struct NodeHop {
  HopKind kind = HopKind::message;
  MessageSlice slice;
  std::vector<NodeId> cv_producers;
};

enum class BlockFill {
  exact,  // total must already be a multiple of the rate (MisalignedNode otherwise)
  pad,    // fill the last block with the zeros of pad10*1
  none,   // leave unaligned; for measuring raw encoded sizes
};

/// Builds one node: the first hop, then each kangaroo chaining hop after a
/// padSimple. With align_to_rate every chaining hop after the first kangaroo
/// hop gets its own block: intermediate ones start on a block boundary and
/// the last one is pushed so that the node ends exactly on a boundary.
NodeLayout encode_node(const NodeHop& first, std::span<const NodeHop> kangaroo_chain, bool is_final,
                       bool align_to_rate, BlockFill fill = BlockFill::exact);

enum class Compaction { aligned_multi_hop, compacted_single_hop };

/// Encodes a hop tree into its node tree. Nodes come out in post order (CV
/// producers first, in CV order) which is deterministic for a given tree.
/// In compacted mode every node's chaining hops are merged into one. An inner
/// root role encodes a subtree as it would sit below some parent; such a tree
/// has no final node and is only good for sizing and timing.
NodeTree map_hop_tree_to_node_tree(const HopTree& tree, Compaction compaction,
                                   NodeRole root_role = NodeRole::final);

// ---------------------------------------------------------------------------
// Grammar check

struct ParsedHop {
  HopKind kind = HopKind::message;
  std::uint64_t message_bits = 0;
  std::uint64_t n_cv = 0;
};

struct GrammarCheck {
  bool ok = false;
  std::string diagnosis;
  bool is_final = false;
  std::vector<ParsedHop> hops;  // first hop first
};

/// Parses the node right to left under the Sakura production rules with the
/// suffix and padding folded in. Message and CV bits are opaque; every frame
/// bit must be exactly where the grammar puts it.
GrammarCheck validate_grammar(const NodeLayout& node);

/// Same parser over an explicit symbol stream: '0'/'1' frame bits, 'M' message
/// bits and 'C' chaining-value bits.
GrammarCheck parse_node_symbols(std::string_view symbols);
std::string node_symbols(const NodeLayout& node);

}  // namespace parshake
