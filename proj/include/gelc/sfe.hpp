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

#ifndef GELC_SFE_HPP
#define GELC_SFE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "gelc/bits.hpp"
#include "gelc/source_model.hpp"
#include "gelc/stream.hpp"

namespace gelc {

// Shannon-Fano-Elias code over the lexicographic order. Codeword of x is the
// first len_sfe(x) bits of F(x-1) + p(x)/2.

BitString sfe_encode_block(const SourceModel& m, const Block& x);
BitString sfe_encode_stream(const SourceModel& m, std::span<const Block> blocks);

/// Prefix-matching decoder. Throws DecodeError when the stream does not
/// continue with a valid codeword.
BlockDecode sfe_decode_stream(const SourceModel& m,
                              std::span<const std::uint8_t> bits,
                              std::size_t block_count);

using LengthFunction = std::function<long(const SourceModel&, const Block&)>;

/// sum over all 2^n blocks of 2^-len(x).
Rational kraft_sum(const SourceModel& m, const LengthFunction& len);

}  // namespace gelc

#endif  // GELC_SFE_HPP
