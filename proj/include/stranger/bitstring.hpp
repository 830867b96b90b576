// Copyright 2026 The Stranger Authentication Simulator Authors
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

#ifndef STRANGER_BITSTRING_HPP
#define STRANGER_BITSTRING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stranger {

/// Fixed-length bit string, packed most-significant bit first. Bits past
/// `size()` in the final byte are always zero, so byte-wise equality and
/// hashing are well defined.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t bits) : bits_(bits), bytes_((bits + 7) / 8, 0) {}

  static Bitstring zeros(std::size_t bits) { return Bitstring(bits); }

  /// The low `bits` bits of `value`, most significant first. bits <= 64.
  static Bitstring from_uint(std::uint64_t value, std::size_t bits) {
    if (bits > 64) throw std::invalid_argument("Bitstring::from_uint: at most 64 bits");
    Bitstring out(bits);
    for (std::size_t i = 0; i < bits; ++i) out.set(i, (value >> (bits - 1 - i)) & 1U);
    return out;
  }

  /// Parses a hex string; `bits` defaults to 4 per digit.
  static Bitstring from_hex(std::string_view hex, std::size_t bits = static_cast<std::size_t>(-1)) {
    if (bits == static_cast<std::size_t>(-1)) bits = hex.size() * 4;
    if (bits > hex.size() * 4) throw std::invalid_argument("Bitstring::from_hex: too few digits");
    Bitstring out(bits);
    for (std::size_t i = 0; i < bits; ++i) {
      int digit = hex_value(hex[i / 4]);
      out.set(i, (digit >> (3 - i % 4)) & 1);
    }
    return out;
  }

  /// Parses a string of '0'/'1' characters.
  static Bitstring from_binary(std::string_view text) {
    Bitstring out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1') throw std::invalid_argument("Bitstring::from_binary: bad digit");
      out.set(i, text[i] == '1');
    }
    return out;
  }

  template <class Generator>
  static Bitstring random(std::size_t bits, Generator& gen) {
    Bitstring out(bits);
    std::uniform_int_distribution<unsigned> byte(0, 255);
    for (auto& b : out.bytes_) b = static_cast<std::uint8_t>(byte(gen));
    out.clear_padding();
    return out;
  }

  std::size_t size() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  bool get(std::size_t i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1U; }
  void set(std::size_t i, bool value) {
    auto mask = static_cast<std::uint8_t>(1U << (7 - i % 8));
    if (value) {
      bytes_[i / 8] |= mask;
    } else {
      bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
    }
  }
  void flip(std::size_t i) { set(i, !get(i)); }

  bool is_zero() const {
    return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b == 0; });
  }

  /// Bits [pos, pos + len).
  Bitstring slice(std::size_t pos, std::size_t len) const {
    if (pos + len > bits_) throw std::out_of_range("Bitstring::slice: range past end");
    Bitstring out(len);
    for (std::size_t i = 0; i < len; ++i) out.set(i, get(pos + i));
    return out;
  }

  Bitstring concat(const Bitstring& tail) const {
    Bitstring out(bits_ + tail.bits_);
    if (bits_ % 8 == 0) {
      std::copy(bytes_.begin(), bytes_.end(), out.bytes_.begin());
      for (std::size_t i = 0; i < tail.bits_; ++i) out.set(bits_ + i, tail.get(i));
      return out;
    }
    for (std::size_t i = 0; i < bits_; ++i) out.set(i, get(i));
    for (std::size_t i = 0; i < tail.bits_; ++i) out.set(bits_ + i, tail.get(i));
    return out;
  }

  Bitstring& operator^=(const Bitstring& other) {
    if (other.bits_ != bits_) {
      throw std::invalid_argument("Bitstring: XOR of lengths " + std::to_string(bits_) + " and " +
                                  std::to_string(other.bits_));
    }
    for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= other.bytes_[i];
    return *this;
  }
  friend Bitstring operator^(Bitstring a, const Bitstring& b) { return a ^= b; }

  /// Hex digits, zero-padded on the right to a whole digit.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    const std::size_t digits = (bits_ + 3) / 4;
    out.reserve(digits);
    for (std::size_t d = 0; d < digits; ++d) {
      std::uint8_t byte = bytes_[d / 2];
      out.push_back(kDigits[d % 2 == 0 ? byte >> 4 : byte & 0xF]);
    }
    return out;
  }

  std::string to_binary() const {
    std::string out(bits_, '0');
    for (std::size_t i = 0; i < bits_; ++i) out[i] = get(i) ? '1' : '0';
    return out;
  }

  /// First min(size, 64) bits as an unsigned integer.
  std::uint64_t to_uint() const {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(bits_, 64); ++i) v = (v << 1) | (get(i) ? 1U : 0U);
    return v;
  }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend auto operator<=>(const Bitstring&, const Bitstring&) = default;

 private:
  static int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("Bitstring: bad hex digit '") + c + "'");
  }

  void clear_padding() {
    if (bits_ % 8 != 0) bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - bits_ % 8));
  }

  std::size_t bits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

}  // namespace stranger

#endif  // STRANGER_BITSTRING_HPP
