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

#include "parshake/sponge.hpp"

#include <array>
#include <string>

#include "parshake/error.hpp"
#include "parshake/keccak.hpp"

namespace parshake {

namespace {

using Lanes = std::array<std::uint64_t, 25>;

void xor_block(Lanes& state, std::span<const std::uint8_t> block) {
  // block.size() == rate / 8, always a whole number of lanes.
  for (std::size_t lane = 0; lane * 8 < block.size(); ++lane) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(block[lane * 8 + b]) << (8 * b);
    state[lane] ^= v;
  }
}

void extract(const Lanes& state, unsigned rate_bits, std::uint64_t want, BitString& out) {
  for (unsigned lane = 0; lane < rate_bits / 64 && out.size() < want; ++lane) {
    const std::uint64_t remaining = want - out.size();
    out.append_bits(state[lane], remaining < 64 ? static_cast<unsigned>(remaining) : 64U);
  }
}

std::uint64_t absorb_aligned(Lanes& state, const BitString& bits, unsigned rate_bits) {
  if (bits.empty() || bits.size() % rate_bits != 0) {
    throw Error(ErrorCode::NotBlockAligned,
                "node length " + std::to_string(bits.size()) + " is not a positive multiple of " +
                    std::to_string(rate_bits));
  }
  const auto bytes = bits.bytes();
  const std::size_t block_bytes = rate_bits / 8;
  const std::uint64_t blocks = bits.size() / rate_bits;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    xor_block(state, bytes.subspan(b * block_bytes, block_bytes));
    keccak_f_inplace(state);
  }
  return blocks;
}

SpongeResult squeeze(Lanes& state, std::uint64_t calls, std::uint64_t out_len, unsigned rate_bits) {
  SpongeResult result;
  result.bits.reserve(out_len);
  extract(state, rate_bits, out_len, result.bits);
  while (result.bits.size() < out_len) {
    keccak_f_inplace(state);
    ++calls;
    extract(state, rate_bits, out_len, result.bits);
  }
  result.permutation_calls = calls;
  return result;
}

}  // namespace

void SpongeParams::validate() const {
  if (rate_bits + capacity_bits != kStateBits) {
    throw Error(ErrorCode::InvalidParameter, "rate + capacity must equal 1600");
  }
  if (rate_bits == 0 || rate_bits % 64 != 0) {
    throw Error(ErrorCode::InvalidParameter, "rate must be a positive whole number of lanes");
  }
  if (cv_bits != capacity_bits) {
    throw Error(ErrorCode::InvalidParameter, "chaining value length must equal the capacity");
  }
}

SpongeResult inner_f(const BitString& node_bits, const SpongeParams& params) {
  params.validate();
  Lanes state{};
  const std::uint64_t calls = absorb_aligned(state, node_bits, params.rate_bits);
  return squeeze(state, calls, params.cv_bits, params.rate_bits);
}

SpongeResult xof_output(const BitString& final_node_bits, std::uint64_t out_len,
                        const SpongeParams& params) {
  params.validate();
  if (out_len == 0) throw Error(ErrorCode::ZeroOutputLength, "requested output length is zero");
  Lanes state{};
  const std::uint64_t calls = absorb_aligned(state, final_node_bits, params.rate_bits);
  return squeeze(state, calls, out_len, params.rate_bits);
}

BitString keccak_reference(const BitString& message, std::string_view suffix_bits,
                           std::uint64_t out_len, const SpongeParams& params) {
  params.validate();
  BitString padded;
  padded.reserve(message.size() + suffix_bits.size() + params.rate_bits);
  padded.append(message);
  padded.append_binary(suffix_bits);
  // pad10*1
  padded.push_back(true);
  while ((padded.size() + 1) % params.rate_bits != 0) padded.push_back(false);
  padded.push_back(true);
  Lanes state{};
  const std::uint64_t calls = absorb_aligned(state, padded, params.rate_bits);
  if (out_len == 0) return {};
  return squeeze(state, calls, out_len, params.rate_bits).bits;
}

BitString shake256_reference(const BitString& message, std::uint64_t out_len) {
  return keccak_reference(message, "1111", out_len, kShake256Params);
}

std::uint64_t rawshake_cost(std::uint64_t l, std::uint64_t d, const SpongeParams& params) {
  const std::uint64_t r = params.rate_bits;
  return (l + 4 + r - 1) / r + d / r;
}

}  // namespace parshake
