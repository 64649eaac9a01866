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

#ifndef GELC_SOURCE_MODEL_HPP
#define GELC_SOURCE_MODEL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gelc/rational.hpp"

namespace gelc {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Longest block the codecs support; blocks are packed into 64-bit words.
inline constexpr unsigned kMaxBlockLength = 63;

/// An n-bit block x_1 ... x_n. x_1 is stored in the most significant of the
/// `length` low bits of `value`, so lexicographic order equals numeric order.
struct Block {
  std::uint64_t value = 0;
  unsigned length = 0;

  /// Bit x_i for 1 <= i <= length.
  unsigned bit(unsigned i) const {
    return static_cast<unsigned>((value >> (length - i)) & 1u);
  }
  std::string str() const;
  static Block parse(std::string_view text);

  friend bool operator==(const Block&, const Block&) = default;
};

/// Binary i.i.d. source with block length n.
///
/// rho = max(p0/p1, p1/p0) and alpha_s = (1 + rho)/rho are derived.
/// alpha_hat, the dual-code length parameter, defaults to rho and may only
/// be raised above it.
class SourceModel {
 public:
  SourceModel(Rational p0, unsigned n,
              std::optional<Rational> alpha_hat = std::nullopt);

  const Rational& p0() const { return p0_; }
  const Rational& p1() const { return p1_; }
  const Rational& prob_of(unsigned bit) const { return bit ? p1_ : p0_; }
  unsigned n() const { return n_; }
  const Rational& rho() const { return rho_; }
  const Rational& alpha_s() const { return alpha_s_; }
  const Rational& alpha_hat() const { return alpha_hat_; }

  /// max over blocks of p(x^n) = max(p0, p1)^n.
  Rational p_max() const;

  /// True iff alpha_hat * p_max <= 1, i.e. every dual length is >= 0 at
  /// interval width 1.
  bool dual_lengths_nonnegative() const;

  /// Smallest block length for which dual_lengths_nonnegative() holds with
  /// the same p0 and alpha_hat.
  unsigned min_dual_block_length() const;

 private:
  Rational p0_;
  Rational p1_;
  unsigned n_;
  Rational rho_;
  Rational alpha_s_;
  Rational alpha_hat_;
};

/// p(x^n) = prod p(x_i).
Rational prob(const SourceModel& m, const Block& x);

/// ceil(-log2 p(x)) + 1.
long len_sfe(const SourceModel& m, const Block& x);

/// ceil(-log2 (alpha_s p(x))) + 1.
long len_sfeg(const SourceModel& m, const Block& x);

/// floor(-log2 (alpha_hat * width * p(x))). Throws ModelError when the
/// argument exceeds 1, which would make the length negative.
long len_dual(const SourceModel& m, const Rational& width, const Block& x);

}  // namespace gelc

#endif  // GELC_SOURCE_MODEL_HPP
