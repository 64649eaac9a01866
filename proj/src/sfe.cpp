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

#include "gelc/sfe.hpp"

#include "gelc/gray_order.hpp"

namespace gelc {

BitString sfe_encode_block(const SourceModel& m, const Block& x) {
  const auto l = static_cast<unsigned>(len_sfe(m, x));
  const Rational mid = cdf_low(m, x, Order::lex) + prob(m, x) / Rational(2);
  return dyadic_to_bits(floor_bits(mid, l), l);
}

BitString sfe_encode_stream(const SourceModel& m,
                            std::span<const Block> blocks) {
  BitString out;
  for (const auto& x : blocks) {
    const BitString cw = sfe_encode_block(m, x);
    out.insert(out.end(), cw.begin(), cw.end());
  }
  return out;
}

BlockDecode sfe_decode_stream(const SourceModel& m,
                              std::span<const std::uint8_t> bits,
                              std::size_t block_count) {
  BlockDecode result;
  result.blocks.reserve(block_count);
  BitCursor cursor(bits);
  for (std::size_t i = 0; i < block_count; ++i) {
    // Every codeword cell [c, c + 2^-l) lies inside [F(x-1), F(x)), so the
    // remaining stream value locates the candidate block directly.
    const Located hit =
        locate(m, Order::lex, Rational(0), Rational(1),
               [&cursor](const Rational& t) { return cursor.compare(t) < 0; });
    const BitString cw = sfe_encode_block(m, hit.block);
    for (std::size_t k = 0; k < cw.size(); ++k) {
      if (cursor.peek(k) != cw[k]) {
        throw DecodeError("malformed SFE stream at bit " +
                          std::to_string(cursor.consumed() + k));
      }
    }
    cursor.skip(cw.size());
    result.blocks.push_back(hit.block);
  }
  result.consumed_bits = cursor.consumed();
  return result;
}

Rational kraft_sum(const SourceModel& m, const LengthFunction& len) {
  Rational sum(0);
  const std::uint64_t count = std::uint64_t{1} << m.n();
  for (std::uint64_t v = 0; v < count; ++v) {
    sum += pow2(-len(m, Block{v, m.n()}));
  }
  return sum;
}

}  // namespace gelc
