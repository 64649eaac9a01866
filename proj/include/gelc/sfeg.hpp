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

#ifndef GELC_SFEG_HPP
#define GELC_SFEG_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "gelc/bits.hpp"
#include "gelc/source_model.hpp"
#include "gelc/stream.hpp"

namespace gelc {

/// Shannon-Fano-Elias-Gray codeword: the first len_sfeg(x) bits of
/// F(x-1) + p(x)/2 with F taken in Gray order.
///
/// The codeword set is not prefix free in general; the decoder below still
/// recovers every stream because neighbouring Gray-order blocks have
/// probabilities within a factor rho of each other.
BitString sfeg_encode_block(const SourceModel& m, const Block& x);
BitString sfeg_encode_stream(const SourceModel& m,
                             std::span<const Block> blocks);

/// Decodes block_count codewords. The tentative block F^-1(r) is corrected
/// by at most one step in Gray order by comparing r with its own codeword
/// cell. Throws DecodeError if a correction would leave the order, which
/// only happens on corrupted input.
BlockDecode sfeg_decode_stream(const SourceModel& m,
                               std::span<const std::uint8_t> bits,
                               std::size_t block_count);

/// Largest block length SfegCodec builds tables for.
inline constexpr unsigned kMaxTableBlockLength = 20;

/// The same code with every codeword and Gray-order CDF value computed once
/// up front, for long streams. Decoding runs the rule above against the
/// tables; output is identical to sfeg_encode_stream / sfeg_decode_stream.
class SfegCodec {
 public:
  /// Throws ModelError unless n <= kMaxTableBlockLength and every codeword
  /// fits in 63 bits; see supports().
  explicit SfegCodec(const SourceModel& m);
  static bool supports(const SourceModel& m);

  const SourceModel& model() const { return model_; }
  unsigned length(const Block& x) const { return length_[x.value]; }

  void append(const Block& x, BitString& out) const;
  BitString encode_stream(std::span<const Block> blocks) const;
  BlockDecode decode_stream(std::span<const std::uint8_t> bits,
                            std::size_t block_count) const;

 private:
  // r < cum_[k] / Q^n for the stream value r at the cursor.
  bool below_cum(const BitCursor& cursor, std::size_t k) const;

  SourceModel model_;
  std::vector<std::uint64_t> word_;   // codeword value, by block value
  std::vector<std::uint8_t> length_;  // codeword length, by block value
  std::vector<mpz_class> cum_;        // Q^n F(x - 1) by Gray rank, 2^n + 1
  std::vector<std::uint64_t> cum64_;  // the same when Q^n < 2^64
  mpz_class den_;                     // Q^n
  bool narrow_ = false;
};

}  // namespace gelc

#endif  // GELC_SFEG_HPP
