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

#include "parshake/keccak.hpp"

#include <bit>

#include "parshake/error.hpp"

namespace parshake {

namespace {

constexpr std::array<std::uint64_t, kKeccakRounds> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808AULL, 0x8000000080008000ULL,
    0x000000000000808BULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008AULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000AULL,
    0x000000008000808BULL, 0x800000000000008BULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800AULL, 0x800000008000000AULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// rho offsets and pi destinations, walked along the (x, y) -> (y, 2x + 3y) orbit
// starting at lane (1, 0).
constexpr std::array<int, 24> kRho = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                      27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};
constexpr std::array<int, 24> kPiLane = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                                         15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

}  // namespace

void keccak_f_inplace(std::array<std::uint64_t, 25>& a) noexcept {
  for (unsigned round = 0; round < kKeccakRounds; ++round) {
    // theta
    std::array<std::uint64_t, 5> c{};
    for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    for (int x = 0; x < 5; ++x) {
      const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
      for (int y = 0; y < 25; y += 5) a[y + x] ^= d;
    }
    // rho + pi
    std::uint64_t carry = a[1];
    for (int i = 0; i < 24; ++i) {
      const int dst = kPiLane[i];
      const std::uint64_t tmp = a[dst];
      a[dst] = std::rotl(carry, kRho[i]);
      carry = tmp;
    }
    // chi
    for (int y = 0; y < 25; y += 5) {
      const std::array<std::uint64_t, 5> row = {a[y], a[y + 1], a[y + 2], a[y + 3], a[y + 4]};
      for (int x = 0; x < 5; ++x) a[y + x] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5]);
    }
    // iota
    a[0] ^= kRoundConstants[round];
  }
}

State1600 keccak_f(State1600 s) noexcept {
  keccak_f_inplace(s.lanes);
  return s;
}

State1600 State1600::from_bits(const BitString& bits) {
  if (bits.size() != kStateBits) {
    throw Error(ErrorCode::InvalidParameter, "state bit string must be exactly 1600 bits");
  }
  State1600 s;
  const auto bytes = bits.bytes();
  for (int lane = 0; lane < 25; ++lane) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[lane * 8 + b]) << (8 * b);
    s.lanes[lane] = v;
  }
  return s;
}

BitString State1600::to_bits() const {
  BitString out;
  out.reserve(kStateBits);
  for (std::uint64_t lane : lanes) out.append_bits(lane, 64);
  return out;
}

}  // namespace parshake
