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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parshake {

/// Arbitrary-length bit sequence using the FIPS 202 convention: bit i of the
/// string is bit (i mod 8) of byte i/8, least significant first. Bits past
/// size() in the last byte are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t nbits, bool value = false);

  static BitString from_bytes(std::span<const std::uint8_t> bytes);
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);
  /// Lowercase/uppercase hex, two digits per byte; `nbits` truncates.
  static BitString from_hex(std::string_view hex);
  static BitString from_hex(std::string_view hex, std::size_t nbits);
  /// "0110..." in string order, first character is bit 0.
  static BitString from_binary(std::string_view zeros_and_ones);

  std::size_t size() const noexcept { return nbits_; }
  bool empty() const noexcept { return nbits_ == 0; }

  bool get(std::size_t i) const noexcept { return (bytes_[i >> 3] >> (i & 7)) & 1U; }
  void set(std::size_t i, bool v) noexcept;
  void flip(std::size_t i) noexcept { bytes_[i >> 3] ^= static_cast<std::uint8_t>(1U << (i & 7)); }

  void push_back(bool bit);
  /// Appends the low `count` bits of `value`, least significant first.
  void append_bits(std::uint64_t value, unsigned count);
  void append_zeros(std::size_t count);
  void append(const BitString& other);
  void append(const BitString& other, std::size_t offset, std::size_t length);
  /// Appends '0'/'1' characters.
  void append_binary(std::string_view zeros_and_ones);

  BitString slice(std::size_t offset, std::size_t length) const;
  void resize(std::size_t nbits);
  void reserve(std::size_t nbits) { bytes_.reserve((nbits + 7) / 8); }

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  /// Lowercase hex of the bytes; a partial last byte keeps its trailing zero bits.
  std::string to_hex() const;
  std::string to_binary() const;

  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.nbits_ == b.nbits_ && a.bytes_ == b.bytes_;
  }

 private:
  std::uint8_t byte_at_bit(std::size_t offset) const noexcept;

  std::vector<std::uint8_t> bytes_;
  std::size_t nbits_ = 0;
};

}  // namespace parshake
