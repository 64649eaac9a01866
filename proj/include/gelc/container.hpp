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

#ifndef GELC_CONTAINER_HPP
#define GELC_CONTAINER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "gelc/bits.hpp"
#include "gelc/rational.hpp"
#include "gelc/source_model.hpp"

namespace gelc {

class ContainerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Codec : std::uint8_t { sfe = 0, sfeg = 1, dual = 2 };

const char* to_string(Codec c);
Codec parse_codec(std::string_view name);

inline constexpr std::uint8_t kContainerVersion = 1;

/// Fixed header, all integers big-endian:
///   "GELC" | version u8 | codec u8 | n u16 | p0 num u32 | p0 den u32 |
///   alpha_hat num u32 | alpha_hat den u32 | [msg_len u64] | block_count u64
/// msg_len is present for the dual codec only; alpha_hat is 0/0 otherwise.
/// The payload follows, packed first bit most significant and zero padded
/// to a byte boundary.
struct ContainerHeader {
  Codec codec = Codec::sfeg;
  std::uint16_t n = 0;
  std::uint32_t p0_num = 0;
  std::uint32_t p0_den = 0;
  std::uint32_t alpha_num = 0;
  std::uint32_t alpha_den = 0;
  std::uint64_t msg_len = 0;
  std::uint64_t block_count = 0;

  std::size_t size() const { return codec == Codec::dual ? 40 : 32; }

  /// Builds the header fields from a model; throws ContainerError if a
  /// numerator or denominator does not fit in 32 bits.
  static ContainerHeader for_model(Codec codec, const SourceModel& m);
  /// The model the header describes; validates it.
  SourceModel model() const;
};

std::vector<std::uint8_t> write_container(const ContainerHeader& h,
                                          std::span<const std::uint8_t> bits);

struct Container {
  ContainerHeader header;
  /// The payload as bits, including the final byte's zero padding.
  BitString payload;
};

/// Parses a container. Throws ContainerError on a bad magic or version, an
/// unknown codec, or a payload shorter than the header requires (the dual
/// payload is exactly block_count * n bits; the codeword payloads are
/// checked when decoded).
Container read_container(std::span<const std::uint8_t> bytes);

}  // namespace gelc

#endif  // GELC_CONTAINER_HPP
