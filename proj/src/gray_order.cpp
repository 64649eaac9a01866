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

#include "gelc/gray_order.hpp"

namespace gelc {

Block gray_map(const Block& x) { return Block{x.value ^ (x.value >> 1), x.length}; }

Block gray_inv(const Block& y) {
  std::uint64_t v = y.value;
  for (unsigned shift = 1; shift < 64; shift <<= 1) v ^= v >> shift;
  return Block{v, y.length};
}

std::uint64_t rank(const Block& x, Order order) {
  return order == Order::lex ? x.value : gray_inv(x).value;
}

Block unrank(std::uint64_t position, unsigned n, Order order) {
  const Block b{position, n};
  return order == Order::lex ? b : gray_map(b);
}

bool is_min(const Block& x, Order order) { return rank(x, order) == 0; }

bool is_max(const Block& x, Order order) {
  return rank(x, order) == (std::uint64_t{1} << x.length) - 1;
}

Block succ(const Block& x, Order order) {
  if (is_max(x, order)) {
    throw OrderBoundaryError("no successor of the maximum block " + x.str());
  }
  return unrank(rank(x, order) + 1, x.length, order);
}

Block pred(const Block& x, Order order) {
  if (is_min(x, order)) {
    throw OrderBoundaryError("no predecessor of the minimum block " + x.str());
  }
  return unrank(rank(x, order) - 1, x.length, order);
}

Rational cdf(const SourceModel& m, const Block& x, Order order) {
  if (x.length != m.n()) throw ModelError("block length does not match n");
  // le = Pr[X_i^n <= x_i^n], ge = Pr[X_i^n >= x_i^n] over suffixes, built
  // from the last bit back to the first.
  Rational le(1);
  Rational ge(1);
  for (unsigned i = x.length; i >= 1; --i) {
    Rational nle;
    Rational nge;
    if (x.bit(i) == 0) {
      nle = m.p0() * le;
      nge = m.p1() + m.p0() * ge;
    } else if (order == Order::gray) {
      nle = m.p0() + m.p1() * ge;
      nge = m.p1() * le;
    } else {
      nle = m.p0() + m.p1() * le;
      nge = m.p1() * ge;
    }
    le = std::move(nle);
    ge = std::move(nge);
  }
  return le;
}

Rational cdf_low(const SourceModel& m, const Block& x, Order order) {
  return cdf(m, x, order) - prob(m, x);
}

Block cdf_inv(const SourceModel& m, const Rational& r, Order order) {
  if (r >= Rational(1)) throw DomainError("cdf_inv requires r < 1");
  return locate(m, order, Rational(0), Rational(1),
                [&r](const Rational& t) { return r < t; })
      .block;
}

}  // namespace gelc
