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

#ifndef GELC_INTERVAL_HPP
#define GELC_INTERVAL_HPP

#include <string>

#include <mpfr.h>

#include "gelc/rational.hpp"

namespace gelc {

/// Working precision of every Real, in bits.
inline constexpr mpfr_prec_t kRealPrecision = 256;

/// A closed interval [lo, hi] known to contain a real number. Every
/// operation rounds lo down and hi up, so containment is preserved.
class Real {
 public:
  Real();
  explicit Real(const Rational& exact);
  static Real from_int(long v);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(Real o) noexcept;
  ~Real();

  /// log2(q) for q > 0.
  static Real log2(const Rational& q);

  double lower() const;
  double upper() const;
  /// Interval endpoints as decimal strings with `digits` significant digits.
  std::string lower_str(int digits = 40) const;
  std::string upper_str(int digits = 40) const;
  /// Upper bound on hi - lo.
  double radius() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  /// b must not contain zero.
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;

  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

 private:
  void swap(Real& o) noexcept;

  mpfr_t lo_;
  mpfr_t hi_;
};

/// Outcome of deciding an inequality from enclosures.
enum class Verdict { holds, fails, undecided };

const char* to_string(Verdict v);

/// a < b.
Verdict less(const Real& a, const Real& b);
/// a <= b; exact equality can only be proven when both are points.
Verdict less_equal(const Real& a, const Real& b);

/// Binary entropy in bits, -p log2 p - (1-p) log2 (1-p), for 0 < p < 1.
Real binary_entropy(const Rational& p);

}  // namespace gelc

#endif  // GELC_INTERVAL_HPP
