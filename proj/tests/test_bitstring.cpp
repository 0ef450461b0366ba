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

#include "parshake/bitstring.hpp"
#include "parshake/error.hpp"

using namespace parshake;

TEST_CASE("bits are least significant first within a byte") {
  const BitString b = BitString::from_hex("13");  // 0001 0011
  CHECK(b.to_binary() == "11001000");
  CHECK(BitString::from_binary("11001").to_hex() == "13");
  CHECK(BitString::from_hex("ff", 3).to_hex() == "07");
}

TEST_CASE("appending at arbitrary offsets") {
  std::mt19937_64 rng(3);
  BitString src;
  for (int i = 0; i < 700; ++i) src.push_back(rng() & 1);
  for (std::size_t head : {0UL, 1UL, 5UL, 8UL, 13UL}) {
    for (std::size_t off : {0UL, 3UL, 8UL, 61UL}) {
      BitString a(head, true);
      a.append(src, off, 300);
      REQUIRE(a.size() == head + 300);
      for (std::size_t i = 0; i < 300; ++i) {
        if (a.get(head + i) != src.get(off + i)) FAIL("mismatch at " << i);
      }
    }
  }
}

TEST_CASE("slices and value appends") {
  BitString b;
  b.append_bits(0b1011, 4);
  b.append_zeros(3);
  b.append_binary("1");
  CHECK(b.to_binary() == "11010001");
  CHECK(b.slice(1, 3).to_binary() == "101");
  BitString c = b;
  c.flip(0);
  CHECK(c != b);
  c.resize(2);
  CHECK(c.to_binary() == "01");
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(BitString::from_hex("abc"), Error);
  CHECK_THROWS_AS(BitString::from_hex("zz"), Error);
  CHECK_THROWS_AS(BitString::from_hex("ab", 9), Error);
}
