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

#include <random>

#include <gtest/gtest.h>

#include "gelc/sfe.hpp"
#include "gelc/sfeg.hpp"
#include "gelc/stream.hpp"
#include "test_util.hpp"

namespace gelc {
namespace {

using testing::B;
using testing::R;

std::string word(const BitString& b) { return bits_to_string(b); }

TEST(Sfe, CodewordExamples) {
  const SourceModel m(R("1/3"), 2);
  EXPECT_EQ(word(sfe_encode_block(m, B("00"))), "00001");
  EXPECT_EQ(word(sfe_encode_block(m, B("01"))), "0011");
  // F(10) - p/2 = 5/9 + 2/9 = 7/9 = 0.110001...
  EXPECT_EQ(word(sfe_encode_block(m, B("11"))), "110");
  EXPECT_EQ(word(sfe_encode_block(m, B("10"))), "0111");
}

TEST(Sfe, MatchesReference) {
  for (const char* p0 : {"1/3", "1/5", "7/10"}) {
    for (unsigned n = 1; n <= 6; ++n) {
      const SourceModel m(R(p0), n);
      const ref::Source s{testing::to_q(R(p0)), n};
      for (const auto& x : ref::lex_order(n)) {
        ASSERT_EQ(word(sfe_encode_block(m, Block::parse(x))),
                  ref::sfe_codeword(s, x));
      }
    }
  }
}

TEST(Sfe, StreamRoundTrip) {
  const SourceModel m(R("1/3"), 2);
  EXPECT_TRUE(sfe_encode_stream(m, {}).empty());
  const BlockDecode none = sfe_decode_stream(m, BitString{}, 0);
  EXPECT_TRUE(none.blocks.empty());
  const std::vector<Block> two{B("11"), B("00")};
  const BitString s = sfe_encode_stream(m, two);
  EXPECT_EQ(word(s), "11000001");
  const BlockDecode d = sfe_decode_stream(m, s, 2);
  EXPECT_EQ(d.blocks, two);
  EXPECT_EQ(d.consumed_bits, s.size());
}

TEST(Sfe, RandomStreamsAgainstPrefixDecoder) {
  std::mt19937_64 rng(9);
  for (const char* p0 : {"1/3", "1/5", "7/10"}) {
    for (unsigned n : {1u, 3u, 5u}) {
      const SourceModel m(R(p0), n);
      const ref::Source s{testing::to_q(R(p0)), n};
      const auto blocks = ref::lex_order(n);
      std::vector<std::string> words;
      for (const auto& x : blocks) words.push_back(ref::sfe_codeword(s, x));
      for (int t = 0; t < 50; ++t) {
        std::vector<std::string> xs;
        for (int i = 0; i < 20; ++i) xs.push_back(blocks[rng() % blocks.size()]);
        const BitString enc = sfe_encode_stream(m, testing::blocks_of(xs));
        std::vector<std::string> back;
        ASSERT_TRUE(ref::prefix_decode(blocks, words, word(enc), xs.size(), back));
        EXPECT_EQ(back, xs);
        EXPECT_EQ(testing::strings_of(sfe_decode_stream(m, enc, xs.size()).blocks),
                  xs);
      }
    }
  }
}

TEST(Sfe, MalformedStreamThrows) {
  // At p0 = 1/3, n = 1 the codewords are 001 and 10; prefix 11 and 000 are
  // not in the code tree.
  const SourceModel m(R("1/3"), 1);
  EXPECT_EQ(word(sfe_encode_block(m, B("0"))), "001");
  EXPECT_EQ(word(sfe_encode_block(m, B("1"))), "10");
  EXPECT_THROW(sfe_decode_stream(m, bits_from_string("11"), 1), DecodeError);
  EXPECT_THROW(sfe_decode_stream(m, bits_from_string("000"), 1), DecodeError);
}

TEST(Kraft, SfeIsIncomplete) {
  const SourceModel m(R("1/3"), 4);
  EXPECT_EQ(kraft_sum(m, len_sfe), R("81/256"));
  EXPECT_EQ(kraft_sum(m, len_sfeg), R("81/128"));
  EXPECT_LE(kraft_sum(m, len_sfeg), Rational(1));
  // A complete code: every block gets n bits.
  EXPECT_EQ(kraft_sum(m, [](const SourceModel& s, const Block&) {
              return static_cast<long>(s.n());
            }),
            Rational(1));
}

TEST(Kraft, MatchesReference) {
  for (const char* p0 : {"1/3", "1/5", "7/10"}) {
    for (unsigned n = 1; n <= 8; ++n) {
      const SourceModel m(R(p0), n);
      const ref::Source s{testing::to_q(R(p0)), n};
      ref::Q k_sfe = 0, k_sfeg = 0;
      for (const auto& x : ref::lex_order(n)) {
        k_sfe += ref::two_pow(-(ref::ceil_neg_log2(s.prob(x)) + 1));
        k_sfeg += ref::two_pow(-(ref::ceil_neg_log2(s.alpha_s() * s.prob(x)) + 1));
      }
      EXPECT_EQ(testing::to_q(kraft_sum(m, len_sfe)), k_sfe);
      EXPECT_EQ(testing::to_q(kraft_sum(m, len_sfeg)), k_sfeg);
      EXPECT_LT(k_sfe, 1);
      EXPECT_LE(k_sfeg, 1);
    }
  }
}

}  // namespace
}  // namespace gelc
