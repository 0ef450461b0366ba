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

#include <random>
#include <set>

#include "known_answers.hpp"
#include "parshake/keccak.hpp"

using namespace parshake;

namespace {

State1600 random_state(std::mt19937_64& rng) {
  State1600 s;
  for (auto& lane : s.lanes) lane = rng();
  return s;
}

}  // namespace

TEST_CASE("keccak-f of the zero state matches the reference") {
  const State1600 once = keccak_f(State1600{});
  CHECK(once.lanes == kat::kKeccakZero);
  CHECK(keccak_f(once).lanes == kat::kKeccakZeroTwice);
}

TEST_CASE("in-place and value forms agree") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const State1600 s = random_state(rng);
    auto lanes = s.lanes;
    keccak_f_inplace(lanes);
    CHECK(lanes == keccak_f(s).lanes);
  }
}

TEST_CASE("state bits round trip") {
  std::mt19937_64 rng(11);
  const State1600 s = random_state(rng);
  const BitString bits = s.to_bits();
  REQUIRE(bits.size() == kStateBits);
  CHECK(State1600::from_bits(bits) == s);
  // lane 0 bit 0 is string bit 0; lane 1 bit 0 is string bit 64
  CHECK(bits.get(0) == static_cast<bool>(s.lanes[0] & 1));
  CHECK(bits.get(64) == static_cast<bool>(s.lanes[1] & 1));
  CHECK(bits.get(64 * 24 + 63) == static_cast<bool>(s.lanes[24] >> 63));
  CHECK(State1600::from_bits(keccak_f(s).to_bits()) == keccak_f(State1600::from_bits(bits)));
}

TEST_CASE("sampled distinct states stay distinct") {
  std::mt19937_64 rng(2026);
  std::set<std::array<std::uint64_t, 25>> outputs;
  for (int i = 0; i < 1000; ++i) {
    State1600 a = random_state(rng);
    State1600 b = a;
    b.lanes[rng() % 25] ^= 1ULL << (rng() % 64);  // neighbours are the hard case
    CHECK(keccak_f(a) != keccak_f(b));
    outputs.insert(keccak_f(a).lanes);
  }
  CHECK(outputs.size() == 1000);
  const State1600 s = random_state(rng);
  CHECK(keccak_f(s) == keccak_f(s));
}
