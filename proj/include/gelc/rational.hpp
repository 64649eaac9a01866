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

#ifndef GELC_RATIONAL_HPP
#define GELC_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gelc {

/// Raised when an argument falls outside the domain of an exact operator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact nonnegative rational number, always in lowest terms.
///
/// All arithmetic is exact. Subtraction that would produce a negative value
/// throws DomainError, so every Rational in the library is >= 0.
class Rational {
 public:
  Rational() = default;
  Rational(std::uint64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::uint64_t num, std::uint64_t den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q);

  /// Parses "num/den" or a bare integer.
  static Rational parse(std::string_view text);

  const mpq_class& get() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// "num/den" in lowest terms; integers are written "k/1".
  std::string str() const;
  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  void check_nonnegative() const;

  mpq_class q_{0};
};

/// 2^k for any integer k (negative k gives 1/2^|k|).
Rational pow2(long k);

/// Dyadic truncation floor(2^l * r) / 2^l, defined for 0 <= r < 2.
Rational floor_bits(const Rational& r, unsigned l);

/// 2^l * r - floor(2^l * r) for 0 <= r < 1.
Rational residue_bits(const Rational& r, unsigned l);

/// floor(log2(1/q)) for q > 0; negative when q > 1.
long floor_neg_log2(const Rational& q);

/// ceil(log2(1/q)) for q > 0.
long ceil_neg_log2(const Rational& q);

}  // namespace gelc

#endif  // GELC_RATIONAL_HPP
