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

#include "gelc/bits.hpp"

#include <algorithm>
#include <cctype>

namespace gelc {

BitString bits_from_string(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw DomainError(std::string("invalid bit character '") + c + "'");
    }
  }
  return out;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return bytes;
}

BitString unpack_bits(std::span<const std::uint8_t> bytes) {
  BitString bits(bytes.size() * 8);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  }
  return bits;
}

BitString dyadic_to_bits(const Rational& d, unsigned l) {
  // d * 2^l must be an integer below 2^l.
  mpz_class k = d.get().get_num();
  const mpz_class& den = d.get().get_den();
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), l);
  mpz_class rem;
  mpz_mul(k.get_mpz_t(), k.get_mpz_t(), scale.get_mpz_t());
  mpz_fdiv_qr(k.get_mpz_t(), rem.get_mpz_t(), k.get_mpz_t(), den.get_mpz_t());
  if (sgn(rem) != 0) {
    throw DomainError("not a dyadic with " + std::to_string(l) +
                      " fractional bits: " + d.str());
  }
  if (k >= scale) {
    throw DomainError("dyadic out of range for " + std::to_string(l) +
                      " bits: " + d.str());
  }
  BitString out(l);
  for (unsigned i = 0; i < l; ++i) {
    out[i] = static_cast<std::uint8_t>(mpz_tstbit(k.get_mpz_t(), l - 1 - i));
  }
  return out;
}

Rational bits_to_rational(std::span<const std::uint8_t> bits) {
  mpz_class k = 0;
  for (auto b : bits) {
    k <<= 1;
    if (b) k += 1;
  }
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits.size());
  return Rational(k, den);
}

std::uint8_t BitCursor::read() {
  if (position_ < bits_.size()) return bits_[position_++];
  ++padded_reads_;
  return 0;
}

void BitCursor::skip(std::size_t count) {
  const std::size_t avail = bits_.size() - std::min(position_, bits_.size());
  const std::size_t real = std::min(count, avail);
  position_ += real;
  padded_reads_ += count - real;
}

std::uint64_t BitCursor::peek_word() const {
  std::uint64_t w = 0;
  const std::size_t end = std::min(bits_.size(), position_ + 64);
  std::size_t i = position_;
  for (; i < end; ++i) w = (w << 1) | bits_[i];
  const std::size_t got = i - std::min(i, position_);
  return got == 0 ? 0 : (got == 64 ? w : w << (64 - got));
}

std::strong_ordering BitCursor::compare(const Rational& t) const {
  return compare(t.get().get_num(), t.get().get_den());
}

std::strong_ordering BitCursor::compare(const mpz_class& num,
                                        const mpz_class& den) const {
  if (num >= den) {
    // t >= 1 while r < 1 always (the zero tail keeps r strictly below 1).
    return std::strong_ordering::less;
  }
  // Generate the binary expansion of t by long division and compare it bit
  // by bit against the stream.
  mpz_class rem = num;
  for (std::size_t i = position_; i < bits_.size(); ++i) {
    rem <<= 1;
    std::uint8_t tbit = 0;
    if (rem >= den) {
      rem -= den;
      tbit = 1;
    }
    if (bits_[i] != tbit) {
      return bits_[i] < tbit ? std::strong_ordering::less
                             : std::strong_ordering::greater;
    }
  }
  // Remaining r bits are all zero; t's remainder decides.
  return sgn(rem) == 0 ? std::strong_ordering::equal
                       : std::strong_ordering::less;
}

bool BitCursor::less_than_dyadic(const mpz_class& k, unsigned long l) const {
  if (mpz_sizeinbase(k.get_mpz_t(), 2) > l && sgn(k) != 0) {
    return true;  // k / 2^l >= 1
  }
  for (unsigned long i = 0; i < l; ++i) {
    const unsigned kb = mpz_tstbit(k.get_mpz_t(), l - 1 - i);
    const unsigned rb = peek(i);
    if (kb != rb) return rb < kb;
  }
  return false;
}

}  // namespace gelc
