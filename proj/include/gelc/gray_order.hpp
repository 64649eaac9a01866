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

#ifndef GELC_GRAY_ORDER_HPP
#define GELC_GRAY_ORDER_HPP

#include <cstdint>
#include <stdexcept>

#include "gelc/rational.hpp"
#include "gelc/source_model.hpp"

namespace gelc {

/// Total orders over {0,1}^n. Gray order: x <= y iff g^-1(x) <= g^-1(y)
/// lexicographically.
enum class Order { lex, gray };

/// Raised by succ/pred at the extreme elements of an order.
class OrderBoundaryError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// y_1 = x_1, y_i = x_{i-1} xor x_i.
Block gray_map(const Block& x);
/// Prefix xor; inverse of gray_map.
Block gray_inv(const Block& y);

/// Position of x in the order, 0 for the minimum.
std::uint64_t rank(const Block& x, Order order);
Block unrank(std::uint64_t position, unsigned n, Order order);

inline Block min_block(unsigned n, Order order) { return unrank(0, n, order); }
inline Block max_block(unsigned n, Order order) {
  return unrank((std::uint64_t{1} << n) - 1, n, order);
}
bool is_min(const Block& x, Order order);
bool is_max(const Block& x, Order order);

Block succ(const Block& x, Order order);
Block pred(const Block& x, Order order);

/// Inclusive CDF F(x) = Pr[X^n <= x], O(n) recursion.
Rational cdf(const SourceModel& m, const Block& x, Order order);
/// Exclusive CDF F(x - 1) = F(x) - p(x), with F(min - 1) = 0.
Rational cdf_low(const SourceModel& m, const Block& x, Order order);

/// Result of locating a point inside the affine image base + width * F.
struct Located {
  Block block;
  Rational low;   // base + width * F(block - 1)
  Rational high;  // base + width * F(block)
};

/// Finds the x with base + width*F(x-1) <= r < base + width*F(x) by
/// descending the order recursion one bit at a time. `r_less(t)` must
/// return r < t; it is called n times with increasing precision thresholds.
template <class RLess>
Located locate(const SourceModel& m, Order order, const Rational& base,
               const Rational& width, RLess&& r_less) {
  Rational lo = base;
  Rational w = width;
  std::uint64_t v = 0;
  unsigned reflected = 0;
  for (unsigned i = 0; i < m.n(); ++i) {
    // Under Gray order a reflected suffix lists 1 before 0.
    const unsigned first = (order == Order::gray) ? reflected : 0u;
    const Rational& p_first = m.prob_of(first);
    Rational split = lo + w * p_first;
    unsigned b;
    if (r_less(split)) {
      b = first;
      w *= p_first;
    } else {
      b = first ^ 1u;
      w *= m.prob_of(b);
      lo = std::move(split);
    }
    v = (v << 1) | b;
    if (order == Order::gray) reflected ^= b;
  }
  Rational hi = lo + w;
  return Located{Block{v, m.n()}, std::move(lo), std::move(hi)};
}

/// F^-1(r) = min{x : F(x) > r} for 0 <= r < 1.
Block cdf_inv(const SourceModel& m, const Rational& r, Order order);

}  // namespace gelc

#endif  // GELC_GRAY_ORDER_HPP
