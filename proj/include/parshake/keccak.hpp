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

#include <array>
#include <cstdint>

#include "parshake/bitstring.hpp"

namespace parshake {

inline constexpr unsigned kStateBits = 1600;
inline constexpr unsigned kKeccakRounds = 24;

/// The 5x5 grid of 64-bit lanes; lane (x, y) lives at index x + 5y, which is
/// also its position in the FIPS 202 state-to-bit-string mapping.
struct State1600 {
  std::array<std::uint64_t, 25> lanes{};

  static State1600 from_bits(const BitString& bits);
  BitString to_bits() const;

  friend bool operator==(const State1600&, const State1600&) = default;
};

/// Keccak-f[1600], 24 rounds.
State1600 keccak_f(State1600 s) noexcept;
void keccak_f_inplace(std::array<std::uint64_t, 25>& lanes) noexcept;

}  // namespace parshake
