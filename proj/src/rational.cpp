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

#include "gelc/rational.hpp"

namespace gelc {

namespace {

mpz_class parse_integer(std::string_view text) {
  if (text.empty()) throw DomainError("empty integer");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw DomainError("invalid digit in rational: '" + std::string(text) +
                        "'");
    }
  }
  return mpz_class(std::string(text), 10);
}

// D >= N * 2^k, for positive N and D.
bool at_least_pow2_multiple(const mpz_class& d, const mpz_class& n, long k) {
  mpz_class lhs = d;
  mpz_class rhs = n;
  if (k >= 0) {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  } else {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(-k));
  }
  return lhs >= rhs;
}

long bit_length(const mpz_class& v) {
  return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

}  // namespace

Rational::Rational(std::uint64_t value) : q_(static_cast<unsigned long>(value)) {}

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  q_ = mpq_class(mpz_class(static_cast<unsigned long>(num)),
                 mpz_class(static_cast<unsigned long>(den)));
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw DomainError("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
  check_nonnegative();
}

Rational::Rational(const mpq_class& q) : q_(q) {
  q_.canonicalize();
  check_nonnegative();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text), mpz_class(1));
  }
  return Rational(parse_integer(text.substr(0, slash)),
                  parse_integer(text.substr(slash + 1)));
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

void Rational::check_nonnegative() const {
  if (sgn(q_) < 0) throw DomainError("negative rational: " + q_.get_str());
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (q_ < o.q_) {
    throw DomainError("subtraction would go negative: " + str() + " - " +
                      o.str());
  }
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational pow2(long k) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(),
               static_cast<mp_bitcnt_t>(k >= 0 ? k : -k));
  return k >= 0 ? Rational(p, mpz_class(1)) : Rational(mpz_class(1), p);
}

Rational floor_bits(const Rational& r, unsigned l) {
  if (r >= Rational(2)) {
    throw DomainError("floor_bits requires r < 2, got " + r.str());
  }
  // floor(num * 2^l / den) / 2^l
  mpz_class scaled = r.get().get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), l);
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), scaled.get_mpz_t(), r.get().get_den_mpz_t());
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), l);
  return Rational(k, den);
}

Rational residue_bits(const Rational& r, unsigned l) {
  if (r >= Rational(1)) {
    throw DomainError("residue_bits requires r < 1, got " + r.str());
  }
  mpz_class scaled = r.get().get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), l);
  mpz_class rem;
  mpz_fdiv_r(rem.get_mpz_t(), scaled.get_mpz_t(), r.get().get_den_mpz_t());
  return Rational(rem, r.get().get_den());
}

long floor_neg_log2(const Rational& q) {
  if (q.is_zero()) throw DomainError("log of zero");
  const mpz_class& n = q.get().get_num();
  const mpz_class& d = q.get().get_den();
  // log2(d/n) lies in (e - 1, e + 1) with e the bit-length difference.
  const long e = bit_length(d) - bit_length(n);
  return at_least_pow2_multiple(d, n, e) ? e : e - 1;
}

long ceil_neg_log2(const Rational& q) {
  const long f = floor_neg_log2(q);
  const mpz_class& n = q.get().get_num();
  const mpz_class& d = q.get().get_den();
  // Exact when d/n == 2^f.
  return at_least_pow2_multiple(n, d, -f) ? f : f + 1;
}

}  // namespace gelc
