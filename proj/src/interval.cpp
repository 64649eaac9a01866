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

#include "gelc/interval.hpp"

namespace gelc {

namespace {

std::string to_decimal(const mpfr_t v, int digits, mpfr_rnd_t rnd) {
  char* raw = nullptr;
  const std::string fmt = "%." + std::to_string(digits) + "R*g";
  mpfr_asprintf(&raw, fmt.c_str(), rnd, v);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace

Real::Real() {
  mpfr_init2(lo_, kRealPrecision);
  mpfr_init2(hi_, kRealPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Real::Real(const Rational& exact) : Real() {
  mpfr_set_q(lo_, exact.get().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, exact.get().get_mpq_t(), MPFR_RNDU);
}

Real Real::from_int(long v) {
  Real r;
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Real::Real(const Real& o) : Real() {
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Real::Real(Real&& o) noexcept : Real() { swap(o); }

Real& Real::operator=(Real o) noexcept {
  swap(o);
  return *this;
}

Real::~Real() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Real::swap(Real& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Real Real::log2(const Rational& q) {
  if (q.is_zero()) throw DomainError("log2 of zero");
  Real r(q);
  mpfr_log2(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_log2(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

double Real::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Real::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string Real::lower_str(int digits) const {
  return to_decimal(lo_, digits, MPFR_RNDD);
}

std::string Real::upper_str(int digits) const {
  return to_decimal(hi_, digits, MPFR_RNDU);
}

double Real::radius() const {
  mpfr_t d;
  mpfr_init2(d, kRealPrecision);
  mpfr_sub(d, hi_, lo_, MPFR_RNDU);
  const double out = mpfr_get_d(d, MPFR_RNDU);
  mpfr_clear(d);
  return out;
}

Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Real Real::operator-() const {
  Real r;
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  // Endpoint products, each rounded both ways; take the extremes.
  Real r;
  mpfr_t t;
  mpfr_init2(t, kRealPrecision);
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_}) {
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) {
    throw DomainError("interval division by an interval containing zero");
  }
  Real r;
  mpfr_t t;
  mpfr_init2(t, kRealPrecision);
  bool first = true;
  for (const auto* x : {&a.lo_, &a.hi_}) {
    for (const auto* y : {&b.lo_, &b.hi_}) {
      mpfr_div(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::undecided:
      return "undecided";
  }
  return "undecided";
}

Verdict less(const Real& a, const Real& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Verdict::holds;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return Verdict::fails;
  return Verdict::undecided;
}

Verdict less_equal(const Real& a, const Real& b) {
  if (mpfr_lessequal_p(a.hi(), b.lo())) return Verdict::holds;
  if (mpfr_greater_p(a.lo(), b.hi())) return Verdict::fails;
  return Verdict::undecided;
}

Real binary_entropy(const Rational& p) {
  if (p.is_zero() || p >= Rational(1)) {
    throw DomainError("binary entropy needs 0 < p < 1");
  }
  const Rational q = Rational(1) - p;
  // p log2(1/p) + q log2(1/q), both terms positive.
  return Real(p) * Real::log2(Rational(1) / p) +
         Real(q) * Real::log2(Rational(1) / q);
}

}  // namespace gelc
