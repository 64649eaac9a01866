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

#include "dual_engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "gelc/gray_order.hpp"

namespace gelc::detail {

namespace {

long bit_length(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

void shift_into(mpz_class& out, const mpz_class& v, unsigned long l) {
  mpz_mul_2exp(out.get_mpz_t(), v.get_mpz_t(), l);
}

// Largest k with num >= den * 2^k, for positive num and den.
long floor_log2_ratio(const mpz_class& num, const mpz_class& den,
                      mpz_class& tmp) {
  const long e = bit_length(num) - bit_length(den);
  bool fits;
  if (e >= 0) {
    shift_into(tmp, den, static_cast<unsigned long>(e));
    fits = num >= tmp;
  } else {
    shift_into(tmp, num, static_cast<unsigned long>(-e));
    fits = tmp >= den;
  }
  return fits ? e : e - 1;
}

unsigned ones(const Block& x) {
  return static_cast<unsigned>(std::popcount(x.value));
}

}  // namespace

DualEngine::DualEngine(const SourceModel& m, const DualOptions& options)
    : n_(m.n()), options_(options) {
  q_ = m.p0().denominator();
  num_[0] = m.p0().numerator();
  num_[1] = q_ - num_[0];
  qpow_.resize(n_ + 1);
  qpow_[0] = 1;
  for (unsigned k = 1; k <= n_; ++k) qpow_[k] = qpow_[k - 1] * q_;
  const mpz_class alpha_num = m.alpha_hat().numerator();
  alpha_den_ = m.alpha_hat().denominator();
  pnum_.resize(n_ + 1);
  apnum_.resize(n_ + 1);
  for (unsigned c = 0; c <= n_; ++c) {
    mpz_class p = 1;
    for (unsigned i = 0; i < c; ++i) p *= num_[1];
    for (unsigned i = c; i < n_; ++i) p *= num_[0];
    pnum_[c] = p;
    apnum_[c] = alpha_num * p;
  }
}

void DualEngine::load(const ScaledState& s, Workspace& w) const {
  w.state = &s;
  mpz_class& odd = w.f0;
  odd = s.qpow * qpow_[n_];
  shift_into(w.E, odd, s.twos);
  w.W = s.B - s.A;
  w.AQ = s.A * qpow_[n_];
  w.BQ = s.B * qpow_[n_];
  w.Eodd = alpha_den_ * odd;
}

IntervalState DualEngine::to_rational(const ScaledState& s) const {
  mpz_class den;
  shift_into(den, s.qpow, s.twos);
  return IntervalState{Rational(s.A, den), Rational(s.B, den)};
}

ScaledState DualEngine::from_rational(const IntervalState& s) const {
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), s.a.get().get_den_mpz_t(),
          s.b.get().get_den_mpz_t());
  ScaledState out;
  out.twos = mpz_scan1(den.get_mpz_t(), 0);
  mpz_class rest = den >> out.twos;
  out.qs = 0;
  while (rest != 1) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), q_.get_mpz_t());
    if (g == 1) {
      throw DomainError("interval endpoints are not of the form k / 2^t Q^q");
    }
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), g.get_mpz_t());
    ++out.qs;
  }
  mpz_pow_ui(out.qpow.get_mpz_t(), q_.get_mpz_t(), out.qs);
  mpz_class unit;
  shift_into(unit, out.qpow, out.twos);
  out.A = s.a.numerator() * (unit / s.a.denominator());
  out.B = s.b.numerator() * (unit / s.b.denominator());
  return out;
}

void DualEngine::low_of(Workspace& w, const Block& x, mpz_class& out) const {
  // Gray-order CDF numerator over Q^n, suffix by suffix: le and ge hold
  // Pr[suffix <= x's suffix] and Pr[suffix >= x's suffix].
  mpz_class& le = w.c0;
  mpz_class& ge = w.c1;
  mpz_class& nle = w.a0;
  mpz_class& nge = w.a1;
  mpz_class& t = w.a2;
  le = 1;
  ge = 1;
  for (unsigned i = n_, len = 0; i >= 1; --i, ++len) {
    if (x.bit(i) == 0) {
      nle = num_[0] * le;
      nge = num_[1] * qpow_[len];
      t = num_[0] * ge;
      nge += t;
    } else {
      nle = num_[0] * qpow_[len];
      t = num_[1] * ge;
      nle += t;
      nge = num_[1] * le;
    }
    le.swap(nle);
    ge.swap(nge);
  }
  le -= pnum_[ones(x)];
  out = w.W * le;
  out += w.AQ;
}

long DualEngine::formula_length(Workspace& w, unsigned c) const {
  // floor(log2(alpha_den E / (alpha_num W p(x) Q^n)))
  w.f0 = w.W * apnum_[c];
  const long l = static_cast<long>(w.state->twos) +
                 floor_log2_ratio(w.Eodd, w.f0, w.f1);
  if (l < 0) {
    if (options_.lengths == LengthRule::strict) {
      throw ModelError("alpha_hat * width * p(x) exceeds 1");
    }
    return 0;
  }
  return l;
}

void DualEngine::floor_scaled(const Workspace& w, const mpz_class& v,
                              unsigned long l, mpz_class& out) const {
  shift_into(out, v, l);
  mpz_fdiv_q(out.get_mpz_t(), out.get_mpz_t(), w.E.get_mpz_t());
}

long DualEngine::length_of(Workspace& w, const Block& x,
                           const mpz_class& low) const {
  long l = formula_length(w, ones(x));
  if (options_.top == TopRule::fit_cell && is_max(x, Order::gray)) {
    // Shrink until the top cell [floor(low), fence) reaches b.
    while (l > 0) {
      const auto ul = static_cast<unsigned long>(l);
      floor_scaled(w, low, ul, w.f2);
      w.f2 += 1;
      w.f2 *= w.E;
      shift_into(w.f3, w.BQ, ul);
      if (w.f2 >= w.f3) break;
      --l;
    }
  }
  return l;
}

void DualEngine::rescale(Workspace& w, const Endpoint& e, unsigned long l,
                         const mpz_class& carried, mpz_class& out) const {
  // value' = 2^l * value - carried, in the endpoint's own units.
  shift_into(out, e.value, l);
  if (e.dyadic) {
    shift_into(w.f0, carried, e.shift);
  } else {
    w.f0 = carried * w.E;
  }
  out -= w.f0;
}

void DualEngine::advance(Workspace& w, const Block& x, const mpz_class& low,
                         Advance& out) const {
  const ScaledState& s = *w.state;
  out.length = length_of(w, x, low);
  const auto l = static_cast<unsigned long>(out.length);
  floor_scaled(w, low, l, out.carried);

  // hi = min(fence(x), F_I(x))
  w.a0 = out.carried + 1;
  w.a1 = w.W * pnum_[ones(x)];
  w.a1 += low;
  w.a2 = w.a0 * w.E;
  shift_into(w.a3, w.a1, l);
  if (w.a2 <= w.a3) {
    w.ehi.dyadic = true;
    w.ehi.value.swap(w.a0);
    w.ehi.shift = l;
  } else {
    w.ehi.dyadic = false;
    w.ehi.value.swap(w.a1);
    w.ehi.shift = 0;
  }
  // lo = a for the minimum, else min(fence(x - 1), F_I(x - 1))
  if (is_min(x, Order::gray)) {
    w.elo.dyadic = false;
    w.elo.value = w.AQ;
    w.elo.shift = 0;
  } else {
    const Block prev = pred(x, Order::gray);
    w.a4 = w.W * pnum_[ones(prev)];
    w.a4 = low - w.a4;
    const auto lp = static_cast<unsigned long>(length_of(w, prev, w.a4));
    floor_scaled(w, w.a4, lp, w.a5);
    w.a5 += 1;
    w.a2 = w.a5 * w.E;
    shift_into(w.a3, low, lp);
    if (w.a2 <= w.a3) {
      w.elo.dyadic = true;
      w.elo.value.swap(w.a5);
      w.elo.shift = lp;
    } else {
      w.elo.dyadic = false;
      w.elo.value = low;
      w.elo.shift = 0;
    }
  }

  ScaledState& next = out.next;
  rescale(w, w.elo, l, out.carried, next.A);
  rescale(w, w.ehi, l, out.carried, next.B);
  const auto units = [&](const Endpoint& e) {
    return e.dyadic ? std::pair{e.shift, 0ul} : std::pair{s.twos, s.qs + n_};
  };
  const auto [ta, qa] = units(w.elo);
  const auto [tb, qb] = units(w.ehi);
  next.twos = std::max(ta, tb);
  next.qs = std::max(qa, qb);
  const auto align = [&](mpz_class& v, unsigned long t, unsigned long q) {
    if (q < next.qs) {
      mpz_pow_ui(w.f0.get_mpz_t(), q_.get_mpz_t(), next.qs - q);
      v *= w.f0;
    }
    if (t < next.twos) shift_into(v, v, next.twos - t);
  };
  align(next.A, ta, qa);
  align(next.B, tb, qb);

  // Strip common factors of 2 and of Q from the shared denominator.
  const unsigned long za = mpz_scan1(next.A.get_mpz_t(), 0);
  const unsigned long zb = mpz_scan1(next.B.get_mpz_t(), 0);
  const unsigned long drop = std::min({za, zb, next.twos});
  if (drop > 0) {
    mpz_fdiv_q_2exp(next.A.get_mpz_t(), next.A.get_mpz_t(), drop);
    mpz_fdiv_q_2exp(next.B.get_mpz_t(), next.B.get_mpz_t(), drop);
    next.twos -= drop;
  }
  while (next.qs > 0 &&
         mpz_divisible_p(next.A.get_mpz_t(), q_.get_mpz_t()) &&
         mpz_divisible_p(next.B.get_mpz_t(), q_.get_mpz_t())) {
    mpz_divexact(next.A.get_mpz_t(), next.A.get_mpz_t(), q_.get_mpz_t());
    mpz_divexact(next.B.get_mpz_t(), next.B.get_mpz_t(), q_.get_mpz_t());
    --next.qs;
  }
  mpz_pow_ui(next.qpow.get_mpz_t(), q_.get_mpz_t(), next.qs);

  shift_into(w.f0, next.qpow, next.twos);
  if (sgn(next.A) < 0 || next.A >= next.B || next.B > w.f0) {
    throw std::logic_error("interval update escaped [0,1]");
  }
}

bool DualEngine::stream_less(Workspace& w, const BitCursor& cursor,
                             const mpz_class& num) const {
  if (num >= w.E) return true;  // r < 1
  // With R the next 64 stream bits, R / 2^64 <= r < (R + 1) / 2^64.
  const std::uint64_t R = cursor.peek_word();
  mpz_mul_ui(w.f1.get_mpz_t(), w.E.get_mpz_t(), R);
  shift_into(w.f0, num, 64);
  if (w.f1 > w.f0) return false;
  w.f1 += w.E;
  if (w.f1 <= w.f0) return true;
  return cursor.compare(num, w.E) < 0;
}

Block DualEngine::choose(Workspace& w, const BitCursor& cursor,
                         Block* tentative, mpz_class& low) const {
  w.lo = w.AQ;
  w.p = 1;
  std::uint64_t v = 0;
  unsigned reflected = 0;
  for (unsigned i = 0; i < n_; ++i) {
    // Under Gray order a reflected suffix lists 1 before 0.
    const unsigned first = reflected;
    w.split = w.p * num_[first];
    w.split *= qpow_[n_ - i - 1];
    w.split *= w.W;
    w.split += w.lo;
    unsigned b;
    if (stream_less(w, cursor, w.split)) {
      b = first;
    } else {
      b = first ^ 1u;
      w.lo.swap(w.split);
    }
    w.p *= num_[b];
    v = (v << 1) | b;
    reflected ^= b;
  }
  const Block hit{v, n_};
  if (tentative) *tentative = hit;
  const auto l = static_cast<unsigned long>(length_of(w, hit, w.lo));
  floor_scaled(w, w.lo, l, w.c0);
  w.c0 += 1;
  if (cursor.less_than_dyadic(w.c0, l)) {
    low = w.lo;
    return hit;
  }
  if (is_max(hit, Order::gray)) {
    throw EncodeError("message value lies above the top block's cell (bit " +
                      std::to_string(cursor.consumed()) + ")");
  }
  low = w.W * w.p;
  low += w.lo;
  return succ(hit, Order::gray);
}

CellTable DualEngine::cells(Workspace& w) const {
  const std::uint64_t count = std::uint64_t{1} << n_;
  CellTable t;
  t.blocks.reserve(count);
  t.lengths.reserve(count);
  t.lows.reserve(count + 1);
  std::vector<mpz_class> carried(count);
  t.lows.push_back(w.AQ);
  long top = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    const Block x = unrank(k, n_, Order::gray);
    const mpz_class& low = t.lows[k];
    const long l = length_of(w, x, low);
    floor_scaled(w, low, static_cast<unsigned long>(l), carried[k]);
    t.blocks.push_back(x);
    t.lengths.push_back(l);
    top = std::max(top, l);
    mpz_class high = w.W * pnum_[ones(x)];
    high += low;
    t.lows.push_back(std::move(high));
  }
  const auto L = static_cast<unsigned long>(top);
  shift_into(t.a, w.AQ, L);
  shift_into(t.b, w.BQ, L);
  for (auto* v : {&t.lo, &t.hi, &t.fence, &t.base, &t.f_low, &t.f_high}) {
    v->resize(count);
  }
  for (std::uint64_t k = 0; k < count; ++k) {
    const unsigned long up = L - static_cast<unsigned long>(t.lengths[k]);
    w.f0 = carried[k] * w.E;
    shift_into(t.base[k], w.f0, up);
    w.f0 += w.E;
    shift_into(t.fence[k], w.f0, up);
    shift_into(t.f_low[k], t.lows[k], L);
    shift_into(t.f_high[k], t.lows[k + 1], L);
  }
  for (std::uint64_t k = 0; k < count; ++k) {
    t.lo[k] = k == 0 ? t.a : std::min(t.fence[k - 1], t.f_low[k]);
    t.hi[k] = std::min(t.fence[k], t.f_high[k]);
  }
  return t;
}

}  // namespace gelc::detail
