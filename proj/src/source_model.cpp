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

#include "gelc/source_model.hpp"

#include <bit>

namespace gelc {

std::string Block::str() const {
  std::string s(length, '0');
  for (unsigned i = 1; i <= length; ++i) {
    if (bit(i)) s[i - 1] = '1';
  }
  return s;
}

Block Block::parse(std::string_view text) {
  if (text.size() > kMaxBlockLength) throw ModelError("block too long");
  Block b{0, static_cast<unsigned>(text.size())};
  for (char c : text) {
    if (c != '0' && c != '1') throw ModelError("invalid block character");
    b.value = (b.value << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return b;
}

SourceModel::SourceModel(Rational p0, unsigned n,
                         std::optional<Rational> alpha_hat)
    : p0_(std::move(p0)), n_(n) {
  if (p0_.is_zero() || p0_ >= Rational(1)) {
    throw ModelError("p0 must lie in (0,1), got " + p0_.str());
  }
  if (p0_ == Rational(1, 2)) {
    throw ModelError("p0 = 1/2 is excluded (p(0) must differ from p(1))");
  }
  if (n_ < 1 || n_ > kMaxBlockLength) {
    throw ModelError("block length must lie in [1, " +
                     std::to_string(kMaxBlockLength) + "], got " +
                     std::to_string(n_));
  }
  p1_ = Rational(1) - p0_;
  rho_ = p0_ > p1_ ? p0_ / p1_ : p1_ / p0_;
  alpha_s_ = (Rational(1) + rho_) / rho_;
  alpha_hat_ = alpha_hat.value_or(rho_);
  if (alpha_hat_ < rho_) {
    throw ModelError("alpha_hat must be >= rho = " + rho_.str() + ", got " +
                     alpha_hat_.str());
  }
}

Rational SourceModel::p_max() const {
  const Rational& top = p0_ > p1_ ? p0_ : p1_;
  Rational r(1);
  for (unsigned i = 0; i < n_; ++i) r *= top;
  return r;
}

bool SourceModel::dual_lengths_nonnegative() const {
  return alpha_hat_ * p_max() <= Rational(1);
}

unsigned SourceModel::min_dual_block_length() const {
  const Rational& top = p0_ > p1_ ? p0_ : p1_;
  Rational v = alpha_hat_;
  for (unsigned k = 1; k <= kMaxBlockLength; ++k) {
    v *= top;
    if (v <= Rational(1)) return k;
  }
  return kMaxBlockLength + 1;
}

Rational prob(const SourceModel& m, const Block& x) {
  if (x.length != m.n()) {
    throw ModelError("block length " + std::to_string(x.length) +
                     " does not match n = " + std::to_string(m.n()));
  }
  const unsigned ones = static_cast<unsigned>(std::popcount(x.value));
  Rational p(1);
  for (unsigned i = 0; i < ones; ++i) p *= m.p1();
  for (unsigned i = ones; i < x.length; ++i) p *= m.p0();
  return p;
}

long len_sfe(const SourceModel& m, const Block& x) {
  return ceil_neg_log2(prob(m, x)) + 1;
}

long len_sfeg(const SourceModel& m, const Block& x) {
  return ceil_neg_log2(m.alpha_s() * prob(m, x)) + 1;
}

long len_dual(const SourceModel& m, const Rational& width, const Block& x) {
  const Rational arg = m.alpha_hat() * width * prob(m, x);
  if (arg > Rational(1)) {
    throw ModelError("alpha_hat * width * p(x) = " + arg.str() +
                     " exceeds 1; dual length would be negative");
  }
  return floor_neg_log2(arg);
}

}  // namespace gelc
