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

#include "parshake/bitstring.hpp"

#include <algorithm>

#include "parshake/error.hpp"

namespace parshake {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::size_t nbits, bool value)
    : bytes_((nbits + 7) / 8, value ? 0xFF : 0x00), nbits_(nbits) {
  if (value && (nbits & 7)) bytes_.back() &= static_cast<std::uint8_t>((1U << (nbits & 7)) - 1);
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  return from_bytes(bytes, bytes.size() * 8);
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (nbits > bytes.size() * 8) {
    throw Error(ErrorCode::InvalidParameter, "bit length exceeds the supplied bytes");
  }
  BitString out;
  out.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>((nbits + 7) / 8));
  out.nbits_ = nbits;
  if (nbits & 7) out.bytes_.back() &= static_cast<std::uint8_t>((1U << (nbits & 7)) - 1);
  return out;
}

BitString BitString::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorCode::ParseError, "hex string has odd length");
  std::vector<std::uint8_t> bytes(hex.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::ParseError, "invalid hex digit");
    bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return from_bytes(bytes);
}

BitString BitString::from_hex(std::string_view hex, std::size_t nbits) {
  BitString full = from_hex(hex);
  if (nbits > full.size()) throw Error(ErrorCode::InvalidParameter, "bit length exceeds hex input");
  full.resize(nbits);
  return full;
}

BitString BitString::from_binary(std::string_view zeros_and_ones) {
  BitString out;
  out.append_binary(zeros_and_ones);
  return out;
}

void BitString::set(std::size_t i, bool v) noexcept {
  const auto mask = static_cast<std::uint8_t>(1U << (i & 7));
  if (v) {
    bytes_[i >> 3] |= mask;
  } else {
    bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
  }
}

void BitString::push_back(bool bit) {
  if ((nbits_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_[nbits_ >> 3] |= static_cast<std::uint8_t>(1U << (nbits_ & 7));
  ++nbits_;
}

void BitString::append_bits(std::uint64_t value, unsigned count) {
  for (unsigned i = 0; i < count; ++i) push_back((value >> i) & 1U);
}

void BitString::append_zeros(std::size_t count) {
  nbits_ += count;
  bytes_.resize((nbits_ + 7) / 8, 0);
}

void BitString::append_binary(std::string_view zeros_and_ones) {
  for (char c : zeros_and_ones) {
    if (c != '0' && c != '1') throw Error(ErrorCode::ParseError, "binary literal must be 0/1");
    push_back(c == '1');
  }
}

std::uint8_t BitString::byte_at_bit(std::size_t offset) const noexcept {
  const std::size_t idx = offset >> 3;
  const unsigned shift = offset & 7;
  unsigned v = bytes_[idx] >> shift;
  if (shift != 0 && idx + 1 < bytes_.size()) v |= static_cast<unsigned>(bytes_[idx + 1]) << (8 - shift);
  return static_cast<std::uint8_t>(v);
}

void BitString::append(const BitString& other) { append(other, 0, other.size()); }

void BitString::append(const BitString& other, std::size_t offset, std::size_t length) {
  if (offset + length > other.size()) {
    throw Error(ErrorCode::SliceOutOfRange, "append range exceeds source bit string");
  }
  if (length == 0) return;
  if ((nbits_ & 7) == 0) {
    // Destination byte-aligned: copy whole bytes from the (possibly shifted) source.
    const std::size_t whole = length / 8;
    bytes_.reserve(bytes_.size() + whole + 1);
    for (std::size_t i = 0; i < whole; ++i) bytes_.push_back(other.byte_at_bit(offset + 8 * i));
    nbits_ += whole * 8;
    for (std::size_t i = whole * 8; i < length; ++i) push_back(other.get(offset + i));
    return;
  }
  // Fill up to the next byte boundary bit by bit, then take the aligned path.
  std::size_t done = 0;
  while (done < length && (nbits_ & 7) != 0) {
    push_back(other.get(offset + done));
    ++done;
  }
  if (done < length) append(other, offset + done, length - done);
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  BitString out;
  out.reserve(length);
  out.append(*this, offset, length);
  return out;
}

void BitString::resize(std::size_t nbits) {
  bytes_.resize((nbits + 7) / 8, 0);
  nbits_ = nbits;
  if (nbits & 7) bytes_.back() &= static_cast<std::uint8_t>((1U << (nbits & 7)) - 1);
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (std::uint8_t b : bytes_) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

std::string BitString::to_binary() const {
  std::string out(nbits_, '0');
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

}  // namespace parshake
