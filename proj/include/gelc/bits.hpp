/*
Copyright 2026 The gelc Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef GELC_BITS_HPP
#define GELC_BITS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gelc/rational.hpp"

namespace gelc {

/// A finite bit sequence, one bit (0 or 1) per element, first bit first.
using BitString = std::vector<std::uint8_t>;

/// Parses a string of '0'/'1' characters; whitespace is skipped.
BitString bits_from_string(std::string_view text);
std::string bits_to_string(std::span<const std::uint8_t> bits);

/// Packs bits most-significant-bit first, zero-padding the final byte.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
BitString unpack_bits(std::span<const std::uint8_t> bytes);

/// l-bit big-endian expansion of a dyadic d = k / 2^l with 0 <= k < 2^l.
BitString dyadic_to_bits(const Rational& d, unsigned l);

/// Value 0.b1 b2 ... bl of a finite bit string.
Rational bits_to_rational(std::span<const std::uint8_t> bits);

/// Sequential reader over a finite bit string with an implicit all-zero
/// tail. Reads past the end return 0 and are counted in padded_reads().
class BitCursor {
 public:
  BitCursor() = default;
  explicit BitCursor(std::span<const std::uint8_t> bits) : bits_(bits) {}

  std::uint8_t read();
  void skip(std::size_t count);

  /// Bit at offset k from the current position, without consuming it.
  std::uint8_t peek(std::size_t k) const {
    const std::size_t i = position_ + k;
    return i < bits_.size() ? bits_[i] : 0;
  }

  /// The next 64 bits as an integer, first bit most significant.
  std::uint64_t peek_word() const;

  std::size_t position() const { return position_; }
  std::size_t padded_reads() const { return padded_reads_; }
  /// Total bits consumed, including the zero padding.
  std::size_t consumed() const { return position_ + padded_reads_; }
  std::size_t size() const { return bits_.size(); }
  bool exhausted() const { return position_ >= bits_.size(); }

  /// Orders r = 0.u_j u_{j+1} ... (zero padded) against t in [0, 1].
  /// Looks ahead only as far as the first differing bit or the end of the
  /// stored bits, whichever comes first.
  std::strong_ordering compare(const Rational& t) const;
  /// Same, for t = num / den given unreduced; requires 0 <= num and den > 0.
  std::strong_ordering compare(const mpz_class& num, const mpz_class& den) const;
  /// r < k / 2^l.
  bool less_than_dyadic(const mpz_class& k, unsigned long l) const;

 private:
  std::span<const std::uint8_t> bits_;
  std::size_t position_ = 0;
  std::size_t padded_reads_ = 0;
};

inline std::strong_ordering cursor_compare(const BitCursor& c,
                                           const Rational& t) {
  return c.compare(t);
}

}  // namespace gelc

#endif  // GELC_BITS_HPP
