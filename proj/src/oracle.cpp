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

#include "parshake/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <variant>

#include "parshake/error.hpp"
#include "parshake/scheduler.hpp"

namespace parshake {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Evaluation {
  std::vector<BitString> cvs;
  Digest digest;
};

// Node `id` of `tree`, assuming its producers are done. Returns the calls spent.
std::uint64_t evaluate_node(const NodeTree& tree, NodeId id, const BitString& message,
                            std::uint64_t out_len, Evaluation& ev) {
  const BitString bits = materialize_node(tree.nodes[id], message, ev.cvs);
  if (id == tree.final_node()) {
    SpongeResult r = xof_output(bits, out_len);
    ev.digest.bits = std::move(r.bits);
    return r.permutation_calls;
  }
  SpongeResult r = inner_f(bits);
  ev.cvs[id] = std::move(r.bits);
  return r.permutation_calls;
}

void check_message(const NodeTree& tree, const BitString& message) {
  for (const auto& node : tree.nodes) {
    for (const auto& seg : node.segments) {
      if (const auto* m = std::get_if<MessageBits>(&seg)) {
        const auto& sl = m->slice;
        if (sl.offset_bits > message.size() || sl.length_bits > message.size() - sl.offset_bits) {
          throw Error(ErrorCode::SliceOutOfRange,
                      "slice [" + std::to_string(sl.offset_bits) + ", +" + std::to_string(sl.length_bits) +
                          ") outside a " + std::to_string(message.size()) + "-bit message");
        }
      }
    }
  }
}

}  // namespace

BitString materialize_node(const NodeLayout& node, const BitString& message,
                           std::span<const BitString> cvs) {
  BitString out;
  out.reserve(node.total_bits);
  for (const auto& seg : node.segments) {
    std::visit(Overloaded{
                   [&](const MessageBits& m) {
                     const auto& sl = m.slice;
                     if (sl.offset_bits > message.size() || sl.length_bits > message.size() - sl.offset_bits) {
                       throw Error(ErrorCode::SliceOutOfRange, "message slice outside the message");
                     }
                     out.append(message, sl.offset_bits, sl.length_bits);
                   },
                   [&](const FrameBits& f) { out.append_binary(f.bits); },
                   [&](const CVSlot& c) {
                     if (c.producer >= cvs.size() || cvs[c.producer].size() != kCvBits) {
                       throw Error(ErrorCode::CyclicDependency,
                                   "chaining value of node " + std::to_string(c.producer) + " is not ready");
                     }
                     out.append(cvs[c.producer]);
                   },
                   [&](const AlignPad& p) {
                     out.push_back(true);
                     out.append_zeros(p.zeros);
                   },
                   [&](const SuffixPad& p) {
                     out.append_binary("111");
                     out.append_zeros(p.zeros);
                     out.push_back(true);
                   },
               },
               seg);
  }
  return out;
}

Digest evaluate_in_order(const NodeTree& tree, const BitString& message, std::uint64_t out_len,
                         std::span<const NodeId> order) {
  if (out_len == 0) throw Error(ErrorCode::ZeroOutputLength, "requested output length is zero");
  if (tree.nodes.empty()) throw Error(ErrorCode::GrammarViolation, "empty node tree");
  if (order.size() != tree.nodes.size()) throw Error(ErrorCode::InvalidParameter, "order has the wrong length");
  std::vector<char> seen(tree.nodes.size(), 0);
  for (NodeId id : order) {
    if (id >= seen.size() || seen[id]) throw Error(ErrorCode::InvalidParameter, "order is not a permutation");
    seen[id] = 1;
  }
  check_message(tree, message);
  Evaluation ev;
  ev.cvs.resize(tree.nodes.size());
  for (NodeId id : order) ev.digest.total_work += evaluate_node(tree, id, message, out_len, ev);
  return std::move(ev.digest);
}

Digest evaluate_sequential(const NodeTree& tree, const BitString& message, std::uint64_t out_len) {
  const auto order = topological_order(tree);
  return evaluate_in_order(tree, message, out_len, order);
}

std::vector<NodeId> random_topological_order(const NodeTree& tree, std::mt19937_64& rng) {
  const std::size_t n = tree.nodes.size();
  std::vector<std::vector<NodeId>> consumers(n);
  std::vector<std::size_t> pending(n, 0);
  for (NodeId id = 0; id < n; ++id) {
    for (const auto& cv : tree.nodes[id].cv_positions()) {
      consumers.at(cv.producer).push_back(id);
      ++pending[id];
    }
  }
  std::vector<NodeId> ready;
  for (NodeId id = 0; id < n; ++id) {
    if (pending[id] == 0) ready.push_back(id);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
    const std::size_t k = pick(rng);
    const NodeId id = ready[k];
    ready[k] = ready.back();
    ready.pop_back();
    order.push_back(id);
    for (NodeId c : consumers[id]) {
      if (--pending[c] == 0) ready.push_back(c);
    }
  }
  if (order.size() != n) throw Error(ErrorCode::CyclicDependency, "chaining values form a cycle");
  return order;
}

Digest evaluate_parallel(const NodeTree& tree, const BitString& message, std::uint64_t out_len,
                         unsigned threads) {
  if (out_len == 0) throw Error(ErrorCode::ZeroOutputLength, "requested output length is zero");
  const auto order = topological_order(tree);
  check_message(tree, message);

  // level = longest producer chain below the node
  std::vector<std::size_t> level(tree.nodes.size(), 0);
  std::size_t top = 0;
  for (NodeId id : order) {
    for (const auto& cv : tree.nodes[id].cv_positions()) level[id] = std::max(level[id], level[cv.producer] + 1);
    top = std::max(top, level[id]);
  }
  std::vector<std::vector<NodeId>> by_level(top + 1);
  for (NodeId id : order) by_level[level[id]].push_back(id);

  if (threads == 0) threads = std::max(2U, std::thread::hardware_concurrency());
  Evaluation ev;
  ev.cvs.resize(tree.nodes.size());
  std::atomic<std::uint64_t> work{0};
  for (const auto& batch : by_level) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t k = next++; k < batch.size(); k = next++) {
        try {
          // distinct nodes write distinct CV slots; the final node is alone on its level
          work += evaluate_node(tree, batch[k], message, out_len, ev);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(threads, batch.size()));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  ev.digest.total_work = work.load();
  return std::move(ev.digest);
}

bool differential_check(const NodeTree& tree, const BitString& message, std::uint64_t out_len) {
  const Digest a = evaluate_sequential(tree, message, out_len);
  const Digest b = evaluate_parallel(tree, message, out_len);
  return a.bits == b.bits && a.total_work == b.total_work;
}

}  // namespace parshake
