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
#include <string_view>

#include "parshake/bitstring.hpp"

namespace parshake {

/// Sponge geometry. Defaults are Keccak[512] as used by RawSHAKE256; the tree
/// chaining value length equals the capacity.
struct SpongeParams {
  unsigned rate_bits = 1088;
  unsigned capacity_bits = 512;
  unsigned cv_bits = 512;

  /// Throws InvalidParameter unless rate + capacity = 1600, cv = capacity and the
  /// rate is a whole number of lanes.
  void validate() const;
};

inline constexpr SpongeParams kShake256Params{};

/// Output bits plus the number of permutation calls spent producing them.
struct SpongeResult {
  BitString bits;
  std::uint64_t permutation_calls = 0;
};

/// The redefined inner function: absorbs an already fully framed and padded
/// node (a positive multiple of the rate) without adding any padding, and
/// returns the first cv_bits of the state. Costs length / rate calls.
SpongeResult inner_f(const BitString& node_bits, const SpongeParams& params = kShake256Params);

/// Same absorption as inner_f followed by `out_len` bits of squeezing. The
/// first rate-sized extraction is free; each further one costs a call.
SpongeResult xof_output(const BitString& final_node_bits, std::uint64_t out_len,
                        const SpongeParams& params = kShake256Params);

/// Plain FIPS 202 SHAKE256 (suffix 1111, pad10*1) over a bit-granular message.
BitString shake256_reference(const BitString& message, std::uint64_t out_len);

/// Keccak[capacity] over message || suffix with standard pad10*1. With suffix
/// "11" this is RawSHAKE, with "1111" SHAKE.
BitString keccak_reference(const BitString& message, std::string_view suffix_bits,
                           std::uint64_t out_len, const SpongeParams& params = kShake256Params);

/// Permutation calls of the original RawSHAKE on an l-bit input with a d-bit
/// output: ceil((l + 4) / r) + floor(d / r).
std::uint64_t rawshake_cost(std::uint64_t l, std::uint64_t d,
                            const SpongeParams& params = kShake256Params);

}  // namespace parshake
