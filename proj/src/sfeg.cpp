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

#include "gelc/sfeg.hpp"

#include <bit>

#include "gelc/gray_order.hpp"

namespace gelc {

namespace {

Rational truncated_midpoint(const SourceModel& m, const Rational& low,
                            const Block& x, unsigned l) {
  return floor_bits(low + prob(m, x) / Rational(2), l);
}

// First l bits of the stream as an integer, zero padded; l <= 64.
std::uint64_t prefix(const BitCursor& c, unsigned l) {
  return l == 0 ? 0 : c.peek_word() >> (64 - l);
}

std::uint64_t max_codeword_length(const SourceModel& m) {
  // The rarest block has the longest codeword.
  const bool zero_rarer = m.p0() < m.p1();
  const std::uint64_t rare = zero_rarer ? 0 : (std::uint64_t{1} << m.n()) - 1;
  return static_cast<std::uint64_t>(len_sfeg(m, Block{rare, m.n()}));
}

}  // namespace

BitString sfeg_encode_block(const SourceModel& m, const Block& x) {
  const auto l = static_cast<unsigned>(len_sfeg(m, x));
  return dyadic_to_bits(
      truncated_midpoint(m, cdf_low(m, x, Order::gray), x, l), l);
}

BitString sfeg_encode_stream(const SourceModel& m,
                             std::span<const Block> blocks) {
  BitString out;
  for (const auto& x : blocks) {
    const BitString cw = sfeg_encode_block(m, x);
    out.insert(out.end(), cw.begin(), cw.end());
  }
  return out;
}

BlockDecode sfeg_decode_stream(const SourceModel& m,
                               std::span<const std::uint8_t> bits,
                               std::size_t block_count) {
  BlockDecode result;
  result.blocks.reserve(block_count);
  BitCursor cursor(bits);
  const auto r_less = [&cursor](const Rational& t) {
    return cursor.compare(t) < 0;
  };
  for (std::size_t i = 0; i < block_count; ++i) {
    const Located hit =
        locate(m, Order::gray, Rational(0), Rational(1), r_less);
    const auto l = static_cast<unsigned>(len_sfeg(m, hit.block));
    const Rational cell = truncated_midpoint(m, hit.low, hit.block, l);
    Block decoded = hit.block;
    if (!r_less(cell + pow2(-static_cast<long>(l)))) {
      if (is_max(decoded, Order::gray)) {
        throw DecodeError("SFEG stream steps past the maximum block at bit " +
                          std::to_string(cursor.consumed()));
      }
      decoded = succ(decoded, Order::gray);
    } else if (r_less(cell)) {
      if (is_min(decoded, Order::gray)) {
        throw DecodeError("SFEG stream steps below the minimum block at bit " +
                          std::to_string(cursor.consumed()));
      }
      decoded = pred(decoded, Order::gray);
    }
    cursor.skip(static_cast<std::size_t>(len_sfeg(m, decoded)));
    result.blocks.push_back(decoded);
  }
  result.consumed_bits = cursor.consumed();
  return result;
}

bool SfegCodec::supports(const SourceModel& m) {
  return m.n() <= kMaxTableBlockLength && max_codeword_length(m) <= 63;
}

SfegCodec::SfegCodec(const SourceModel& m) : model_(m) {
  if (!supports(m)) {
    throw ModelError("SFEG tables need n <= " +
                     std::to_string(kMaxTableBlockLength) +
                     " and codewords of at most 63 bits");
  }
  const unsigned n = m.n();
  const std::uint64_t count = std::uint64_t{1} << n;
  const mpz_class q = m.p0().denominator();
  const mpz_class num0 = m.p0().numerator();
  const mpz_class num1 = q - num0;
  mpz_pow_ui(den_.get_mpz_t(), q.get_mpz_t(), n);
  // Probability numerators and lengths depend only on the number of ones.
  std::vector<mpz_class> pnum(n + 1);
  std::vector<std::uint8_t> len(n + 1);
  for (unsigned c = 0; c <= n; ++c) {
    mpz_class a;
    mpz_class b;
    mpz_pow_ui(a.get_mpz_t(), num1.get_mpz_t(), c);
    mpz_pow_ui(b.get_mpz_t(), num0.get_mpz_t(), n - c);
    pnum[c] = a * b;
    const std::uint64_t v = c == 0 ? 0 : (std::uint64_t{1} << c) - 1;
    len[c] = static_cast<std::uint8_t>(len_sfeg(m, Block{v, n}));
  }
  word_.resize(count);
  length_.resize(count);
  cum_.resize(count + 1);
  cum_[0] = 0;
  const mpz_class twice_den = den_ * 2;
  mpz_class mid;
  for (std::uint64_t k = 0; k < count; ++k) {
    const Block x = unrank(k, n, Order::gray);
    const auto c = static_cast<unsigned>(std::popcount(x.value));
    // floor((F(x-1) + p/2) 2^l) = floor((2 cum + pnum) 2^l / (2 Q^n))
    mid = cum_[k] * 2 + pnum[c];
    mpz_mul_2exp(mid.get_mpz_t(), mid.get_mpz_t(), len[c]);
    mpz_fdiv_q(mid.get_mpz_t(), mid.get_mpz_t(), twice_den.get_mpz_t());
    word_[x.value] = mpz_get_ui(mid.get_mpz_t());
    length_[x.value] = len[c];
    cum_[k + 1] = cum_[k] + pnum[c];
  }
  narrow_ = mpz_sizeinbase(den_.get_mpz_t(), 2) <= 63;
  if (narrow_) {
    cum64_.resize(count + 1);
    for (std::uint64_t k = 0; k <= count; ++k) {
      cum64_[k] = mpz_get_ui(cum_[k].get_mpz_t());
    }
  }
}

void SfegCodec::append(const Block& x, BitString& out) const {
  const unsigned l = length_[x.value];
  const std::uint64_t w = word_[x.value];
  for (unsigned i = l; i-- > 0;) {
    out.push_back(static_cast<std::uint8_t>((w >> i) & 1u));
  }
}

BitString SfegCodec::encode_stream(std::span<const Block> blocks) const {
  BitString out;
  for (const auto& x : blocks) append(x, out);
  return out;
}

bool SfegCodec::below_cum(const BitCursor& cursor, std::size_t k) const {
  if (narrow_) {
    // R / 2^64 <= r < (R + 1) / 2^64 with R the next 64 stream bits.
    using u128 = unsigned __int128;
    const u128 lhs = static_cast<u128>(cursor.peek_word()) * cum64_.back();
    const u128 rhs = static_cast<u128>(cum64_[k]) << 64;
    if (lhs > rhs) return false;
    if (lhs + cum64_.back() <= rhs) return true;
  }
  return cursor.compare(cum_[k], den_) < 0;
}

BlockDecode SfegCodec::decode_stream(std::span<const std::uint8_t> bits,
                                     std::size_t block_count) const {
  const unsigned n = model_.n();
  const std::uint64_t count = std::uint64_t{1} << n;
  BlockDecode result;
  result.blocks.reserve(block_count);
  BitCursor cursor(bits);
  for (std::size_t i = 0; i < block_count; ++i) {
    // F^-1(r): the smallest rank k with r < F(x_k).
    std::uint64_t lo = 0;
    std::uint64_t hi = count - 1;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (below_cum(cursor, mid + 1)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    std::uint64_t k = lo;
    const Block hit = unrank(k, n, Order::gray);
    const unsigned l = length_[hit.value];
    const std::uint64_t cell = word_[hit.value];
    const std::uint64_t head = prefix(cursor, l);
    if (head >= cell + 1) {
      if (k + 1 == count) {
        throw DecodeError("SFEG stream steps past the maximum block at bit " +
                          std::to_string(cursor.consumed()));
      }
      ++k;
    } else if (head < cell) {
      if (k == 0) {
        throw DecodeError("SFEG stream steps below the minimum block at bit " +
                          std::to_string(cursor.consumed()));
      }
      --k;
    }
    const Block decoded = unrank(k, n, Order::gray);
    cursor.skip(length_[decoded.value]);
    result.blocks.push_back(decoded);
  }
  result.consumed_bits = cursor.consumed();
  return result;
}

}  // namespace gelc
