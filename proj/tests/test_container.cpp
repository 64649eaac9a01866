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

#include <gtest/gtest.h>

#include "gelc/container.hpp"
#include "test_util.hpp"

namespace gelc {
namespace {

using testing::R;

TEST(Container, SfegHeaderLayout) {
  const SourceModel m(R("1/3"), 2);
  ContainerHeader h = ContainerHeader::for_model(Codec::sfeg, m);
  h.block_count = 1;
  const auto bytes = write_container(h, bits_from_string("10"));
  const std::vector<std::uint8_t> want{
      'G', 'E', 'L', 'C', 1, 1, 0, 2,  // magic, version, codec, n
      0, 0, 0, 1, 0, 0, 0, 3,          // p0
      0, 0, 0, 0, 0, 0, 0, 0,          // alpha_hat unused
      0, 0, 0, 0, 0, 0, 0, 1,          // block_count
      0x80};
  EXPECT_EQ(bytes, want);
  EXPECT_EQ(h.size(), 32u);
}

TEST(Container, DualHeaderLayout) {
  const SourceModel m(R("1/3"), 2, Rational(2));
  ContainerHeader h = ContainerHeader::for_model(Codec::dual, m);
  h.msg_len = 4;
  h.block_count = 2;
  const auto bytes = write_container(h, bits_from_string("1110"));
  const std::vector<std::uint8_t> want{
      'G', 'E', 'L', 'C', 1, 2, 0, 2, 0, 0, 0, 1, 0, 0, 0, 3,
      0,   0,   0,   2,   0, 0, 0, 1,  // alpha_hat 2/1
      0,   0,   0,   0,   0, 0, 0, 4,  // msg_len
      0,   0,   0,   0,   0, 0, 0, 2,  // block_count
      0xE0};
  EXPECT_EQ(bytes, want);
  EXPECT_EQ(h.size(), 40u);
  const Container c = read_container(bytes);
  EXPECT_EQ(c.header.codec, Codec::dual);
  EXPECT_EQ(c.header.msg_len, 4u);
  EXPECT_EQ(c.header.block_count, 2u);
  EXPECT_EQ(c.header.model().alpha_hat(), Rational(2));
  EXPECT_EQ(bits_to_string(c.payload), "11100000");
}

TEST(Container, RoundTripIsByteExact) {
  const SourceModel m(R("7/10"), 5);
  for (Codec codec : {Codec::sfe, Codec::sfeg, Codec::dual}) {
    ContainerHeader h = ContainerHeader::for_model(codec, m);
    h.block_count = 3;
    h.msg_len = codec == Codec::dual ? 11 : 0;
    const BitString payload = bits_from_string("110100111010110");
    const auto bytes = write_container(h, payload);
    const Container c = read_container(bytes);
    EXPECT_EQ(write_container(c.header, c.payload), bytes);
  }
}

TEST(Container, RejectsCorruption) {
  const SourceModel m(R("1/3"), 2, Rational(2));
  ContainerHeader h = ContainerHeader::for_model(Codec::dual, m);
  h.msg_len = 4;
  h.block_count = 2;
  const auto good = write_container(h, bits_from_string("1110"));

  auto bad = good;
  bad[0] = 'X';
  EXPECT_THROW(read_container(bad), ContainerError);
  bad = good;
  bad[4] = 2;
  EXPECT_THROW(read_container(bad), ContainerError);
  bad = good;
  bad[5] = 9;
  EXPECT_THROW(read_container(bad), ContainerError);
  for (std::size_t cut = 0; cut < good.size(); ++cut) {
    EXPECT_THROW(read_container(std::span(good).first(cut)), ContainerError)
        << cut;
  }
  bad = good;
  bad.push_back(0);
  EXPECT_THROW(read_container(bad), ContainerError);
  bad = good;
  bad[15] = 0;  // p0 denominator zero
  EXPECT_THROW(read_container(bad).header.model(), ContainerError);
  bad = good;
  bad[15] = 2;  // p0 = 1/2 is not a valid source
  EXPECT_THROW(read_container(bad).header.model(), ModelError);
}

TEST(Container, CodecNames) {
  EXPECT_EQ(parse_codec("sfe"), Codec::sfe);
  EXPECT_EQ(parse_codec("dual"), Codec::dual);
  EXPECT_STREQ(to_string(Codec::sfeg), "sfeg");
  EXPECT_THROW(parse_codec("lzw"), std::invalid_argument);
}

}  // namespace
}  // namespace gelc
