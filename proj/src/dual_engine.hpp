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

#ifndef GELC_SRC_DUAL_ENGINE_HPP
#define GELC_SRC_DUAL_ENGINE_HPP

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gelc/bits.hpp"
#include "gelc/dual_sfeg.hpp"
#include "gelc/source_model.hpp"

namespace gelc::detail {

// Integer form of an IntervalState: a = A / (2^twos Q^qs), b likewise, where
// Q is the denominator of p0. Keeping one denominator of known shape lets a
// step run on integer multiplies and shifts, without rational gcds.
struct ScaledState {
  mpz_class A{0};
  mpz_class B{1};
  unsigned long twos = 0;
  unsigned long qs = 0;
  mpz_class qpow{1};  // Q^qs

  void swap(ScaledState& o) noexcept {
    A.swap(o.A);
    B.swap(o.B);
    std::swap(twos, o.twos);
    std::swap(qs, o.qs);
    qpow.swap(o.qpow);
  }
};

// An interval endpoint, either value / 2^shift or value / E.
struct Endpoint {
  bool dyadic = false;
  mpz_class value;
  unsigned long shift = 0;
};

// Per-session buffers. load() fills in what the formulas of one state
// share; F_I values become integers in units of 1/E, E = 2^twos Q^(qs + n).
// The rest is scratch space, kept here so a coding loop reuses its limbs
// instead of allocating on every step.
struct Workspace {
  const ScaledState* state = nullptr;
  mpz_class E;
  mpz_class W;     // B - A, in units of 1/(2^twos Q^qs)
  mpz_class AQ;    // a in units of 1/E
  mpz_class BQ;    // b in units of 1/E
  mpz_class Eodd;  // alpha_den * Q^(qs + n); alpha_den * E = Eodd * 2^twos

  mpz_class f0, f1, f2, f3;
  mpz_class a0, a1, a2, a3, a4, a5;
  mpz_class c0, c1, lo, split, p;
  Endpoint elo, ehi;
};

struct Advance {
  long length = 0;
  mpz_class carried;  // floor(F_I(x-1) * 2^length), the carried bits
  ScaledState next;
};

// All 2^n block intervals of one state, in Gray order. Except for `lows`,
// values are integers in units of 1/(E 2^L), L the largest length.
struct CellTable {
  std::vector<Block> blocks;
  std::vector<long> lengths;
  std::vector<mpz_class> lows;    // F_I(x - 1) in units of 1/E
  std::vector<mpz_class> lo;      // I(x) = [lo, hi)
  std::vector<mpz_class> hi;
  std::vector<mpz_class> fence;   // fbar(x)
  std::vector<mpz_class> base;    // floor(F_I(x - 1))_length(x)
  std::vector<mpz_class> f_low;   // F_I(x - 1)
  std::vector<mpz_class> f_high;  // F_I(x)
  mpz_class a;
  mpz_class b;
};

class DualEngine {
 public:
  DualEngine(const SourceModel& m, const DualOptions& options);

  void load(const ScaledState& s, Workspace& w) const;
  IntervalState to_rational(const ScaledState& s) const;
  // Throws DomainError unless both denominators divide some 2^t Q^q.
  ScaledState from_rational(const IntervalState& s) const;

  // F_I(x - 1) in units of 1/E.
  void low_of(Workspace& w, const Block& x, mpz_class& out) const;

  // Emits x given low = F_I(x - 1): length, carried bits and the next state.
  void advance(Workspace& w, const Block& x, const mpz_class& low,
               Advance& out) const;

  // One encoder iteration at the cursor; returns the emitted block and
  // leaves its F_I(x - 1) in `low`.
  Block choose(Workspace& w, const BitCursor& cursor, Block* tentative,
               mpz_class& low) const;

  CellTable cells(Workspace& w) const;

 private:
  long length_of(Workspace& w, const Block& x, const mpz_class& low) const;
  long formula_length(Workspace& w, unsigned ones) const;
  void floor_scaled(const Workspace& w, const mpz_class& v, unsigned long l,
                    mpz_class& out) const;
  // r < num / E for the message value r at the cursor.
  bool stream_less(Workspace& w, const BitCursor& cursor,
                   const mpz_class& num) const;
  void rescale(Workspace& w, const Endpoint& e, unsigned long l,
               const mpz_class& carried, mpz_class& out) const;

  unsigned n_;
  DualOptions options_;
  mpz_class q_;                   // denominator of p0
  mpz_class num_[2];              // p(bit) = num_[bit] / q_
  std::vector<mpz_class> qpow_;   // Q^k, k = 0..n
  std::vector<mpz_class> pnum_;   // p(x) * Q^n by number of ones
  std::vector<mpz_class> apnum_;  // alpha_num * pnum_
  mpz_class alpha_den_;
};

}  // namespace gelc::detail

#endif  // GELC_SRC_DUAL_ENGINE_HPP
