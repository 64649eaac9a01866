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

#include "gelc/dual_sfeg.hpp"

#include <algorithm>

#include "dual_engine.hpp"
#include "gelc/gray_order.hpp"

namespace gelc {

namespace {

Rational dyadic_fence(const Rational& low, long l) {
  return floor_bits(low + pow2(-l), static_cast<unsigned>(l));
}

}  // namespace

DualSfeg::DualSfeg(SourceModel model, DualOptions options)
    : model_(std::move(model)), options_(options) {
  if (options_.lengths == LengthRule::strict &&
      !model_.dual_lengths_nonnegative()) {
    const unsigned min_n = model_.min_dual_block_length();
    throw ModelError(
        "alpha_hat * max(p0,p1)^n = " +
        (model_.alpha_hat() * model_.p_max()).str() +
        " exceeds 1 for n = " + std::to_string(model_.n()) +
        "; the smallest valid block length is n = " +
        (min_n > kMaxBlockLength ? std::string("(none up to 63)")
                                 : std::to_string(min_n)));
  }
  engine_ = std::make_shared<const detail::DualEngine>(model_, options_);
}

Rational DualSfeg::f_i(const IntervalState& s, const Block& x) const {
  return s.a + s.width() * cdf(model_, x, Order::gray);
}

Rational DualSfeg::f_i_low(const IntervalState& s, const Block& x) const {
  return s.a + s.width() * cdf_low(model_, x, Order::gray);
}

long DualSfeg::formula_length(const Rational& width, const Block& x) const {
  if (options_.lengths == LengthRule::strict) {
    return len_dual(model_, width, x);
  }
  const Rational arg = model_.alpha_hat() * width * prob(model_, x);
  return arg > Rational(1) ? 0 : floor_neg_log2(arg);
}

long DualSfeg::top_length(const IntervalState& s, const Rational& low,
                          long formula) const {
  if (options_.top == TopRule::as_printed) return formula;
  long l = formula;
  while (l > 0 && dyadic_fence(low, l) < s.b) --l;
  return l;
}

long DualSfeg::length_with_low(const IntervalState& s, const Block& x,
                               const Rational& low) const {
  const long l = formula_length(s.width(), x);
  return is_max(x, Order::gray) ? top_length(s, low, l) : l;
}

long DualSfeg::length(const IntervalState& s, const Block& x) const {
  if (is_max(x, Order::gray)) return length_with_low(s, x, f_i_low(s, x));
  return formula_length(s.width(), x);
}

Rational DualSfeg::fbar(const IntervalState& s, const Block& x) const {
  const Rational low = f_i_low(s, x);
  return dyadic_fence(low, length_with_low(s, x, low));
}

BlockInterval DualSfeg::block_interval(const IntervalState& s,
                                       const Block& x) const {
  const Rational low = f_i_low(s, x);
  Rational lo =
      is_min(x, Order::gray)
          ? s.a
          : std::min(fbar(s, pred(x, Order::gray)), low);
  Rational hi = std::min(dyadic_fence(low, length_with_low(s, x, low)),
                         low + s.width() * prob(model_, x));
  return BlockInterval{std::move(lo), std::move(hi)};
}

std::vector<BlockInterval> DualSfeg::partition(const IntervalState& s) const {
  const std::uint64_t count = std::uint64_t{1} << model_.n();
  const Rational w = s.width();
  std::vector<BlockInterval> out;
  out.reserve(count);
  Rational cumulative(0);
  Rational prev_fence;
  for (std::uint64_t k = 0; k < count; ++k) {
    const Block x = unrank(k, model_.n(), Order::gray);
    const Rational p = prob(model_, x);
    const Rational low = s.a + w * cumulative;
    cumulative += p;
    const Rational high = s.a + w * cumulative;
    Rational fence = dyadic_fence(low, length_with_low(s, x, low));
    Rational lo = k == 0 ? s.a : std::min(prev_fence, low);
    Rational hi = std::min(fence, high);
    out.push_back(BlockInterval{std::move(lo), std::move(hi)});
    prev_fence = std::move(fence);
  }
  return out;
}

IntervalState DualSfeg::state_update(const IntervalState& s,
                                     const Block& x) const {
  const long l = length(s, x);
  const Rational base =
      floor_bits(f_i_low(s, x), static_cast<unsigned>(l));
  const BlockInterval cell = block_interval(s, x);
  const Rational scale = pow2(l);
  IntervalState next{(cell.lo - base) * scale, (cell.hi - base) * scale};
  if (!(next.a < next.b) || next.b > Rational(1)) {
    throw std::logic_error("interval update escaped [0,1]: [" + next.a.str() +
                           ", " + next.b.str() + ")");
  }
  return next;
}

BitString DualSfeg::carried_bits(const IntervalState& s,
                                 const Block& x) const {
  const auto l = static_cast<unsigned>(length(s, x));
  return dyadic_to_bits(floor_bits(f_i_low(s, x), l), l);
}

DualEncode DualSfeg::encode(std::span<const std::uint8_t> message,
                            std::optional<std::size_t> block_budget,
                            std::vector<EncodeStep>* trace) const {
  DualEncode result;
  BitCursor cursor(message);
  detail::ScaledState state;
  detail::Workspace w;
  detail::Advance step;
  mpz_class low;
  while (cursor.consumed() < message.size()) {
    if (block_budget && result.blocks.size() >= *block_budget) {
      throw EncodeError("block budget of " + std::to_string(*block_budget) +
                        " exhausted after consuming " +
                        std::to_string(cursor.consumed()) + " of " +
                        std::to_string(message.size()) + " message bits");
    }
    engine_->load(state, w);
    Block tentative;
    const Block emitted = engine_->choose(w, cursor, &tentative, low);
    engine_->advance(w, emitted, low, step);
    if (trace) {
      trace->push_back(EncodeStep{engine_->to_rational(state), tentative,
                                  emitted, step.length, cursor.consumed()});
    }
    cursor.skip(static_cast<std::size_t>(step.length));
    state.swap(step.next);
    result.blocks.push_back(emitted);
  }
  result.consumed_bits = cursor.consumed();
  return result;
}

std::vector<Block> DualSfeg::leading_blocks(
    std::span<const std::uint8_t> message, std::size_t count) const {
  std::vector<Block> out;
  out.reserve(count);
  BitCursor cursor(message);
  detail::ScaledState state;
  detail::Workspace w;
  detail::Advance step;
  mpz_class low;
  while (out.size() < count) {
    engine_->load(state, w);
    const Block emitted = engine_->choose(w, cursor, nullptr, low);
    engine_->advance(w, emitted, low, step);
    cursor.skip(static_cast<std::size_t>(step.length));
    state.swap(step.next);
    out.push_back(emitted);
  }
  return out;
}

BitString DualSfeg::decode(std::span<const Block> blocks,
                           std::vector<IntervalState>* states) const {
  BitString out;
  detail::ScaledState state;
  detail::Workspace w;
  detail::Advance step;
  mpz_class low;
  for (const auto& x : blocks) {
    if (x.length != model_.n()) {
      throw ModelError("block length does not match n");
    }
    if (states) states->push_back(engine_->to_rational(state));
    engine_->load(state, w);
    engine_->low_of(w, x, low);
    engine_->advance(w, x, low, step);
    const auto l = static_cast<unsigned long>(step.length);
    for (unsigned long i = 0; i < l; ++i) {
      out.push_back(static_cast<std::uint8_t>(
          mpz_tstbit(step.carried.get_mpz_t(), l - 1 - i)));
    }
    state.swap(step.next);
  }
  if (states) states->push_back(engine_->to_rational(state));
  return out;
}

}  // namespace gelc
