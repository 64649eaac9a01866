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

#ifndef GELC_DUAL_SFEG_HPP
#define GELC_DUAL_SFEG_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gelc/bits.hpp"
#include "gelc/rational.hpp"
#include "gelc/source_model.hpp"

namespace gelc {

namespace detail {
class DualEngine;
}

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interval [a, b) over which the unread message value is uniform.
struct IntervalState {
  Rational a{0};
  Rational b{1};

  Rational width() const { return b - a; }
  friend bool operator==(const IntervalState&, const IntervalState&) = default;
};

/// I(x): the message values r in the current state that emit block x.
struct BlockInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  friend bool operator==(const BlockInterval&, const BlockInterval&) = default;
};

/// What to do when alpha_hat * width * p(x) > 1 would make a length negative.
enum class LengthRule {
  strict,         // refuse such models at construction
  clamp_at_zero,  // use length 0
};

/// Length of the last block in Gray order.
///
/// With the formula length, the cell [floor(F_I(max-1)), fbar(max)) may end
/// before b, leaving message values that no block can carry. fit_cell lowers
/// the top block's length until its cell reaches b; as_printed keeps the
/// formula and raises EncodeError if such a value is met.
enum class TopRule { fit_cell, as_printed };

struct DualOptions {
  LengthRule lengths = LengthRule::strict;
  TopRule top = TopRule::fit_cell;
};

/// One iteration of the encoder loop.
struct EncodeStep {
  IntervalState state;
  Block tentative;  // F_I^-1(r)
  Block emitted;
  long length = 0;  // message bits consumed by `emitted`
  std::size_t consumed_before = 0;
};

struct DualEncode {
  std::vector<Block> blocks;
  /// Message bits consumed, including zero padding past the end.
  std::size_t consumed_bits = 0;
};

/// Variable-to-fixed homophonic code: maps uniform message bits onto n-bit
/// blocks distributed close to p(x^n), by running the SFEG decoding rule in
/// an interval that is refined after every block.
class DualSfeg {
 public:
  explicit DualSfeg(SourceModel model, DualOptions options = {});

  const SourceModel& model() const { return model_; }
  const DualOptions& options() const { return options_; }

  /// F_I(x) = a + (b - a) F(x) and F_I(x - 1), Gray order.
  Rational f_i(const IntervalState& s, const Block& x) const;
  Rational f_i_low(const IntervalState& s, const Block& x) const;

  /// Message bits carried by block x in state s.
  long length(const IntervalState& s, const Block& x) const;

  /// floor(F_I(x - 1) + 2^-l)_l with l = length(s, x).
  Rational fbar(const IntervalState& s, const Block& x) const;

  BlockInterval block_interval(const IntervalState& s, const Block& x) const;

  /// All 2^n block intervals of state s, indexed by Gray rank.
  std::vector<BlockInterval> partition(const IntervalState& s) const;

  /// Interval after emitting x: I(x) shifted by the length(s, x) leading
  /// bits it shares and rescaled by 2^length(s, x).
  IntervalState state_update(const IntervalState& s, const Block& x) const;

  /// The leading bits every r in I(x) shares.
  BitString carried_bits(const IntervalState& s, const Block& x) const;

  /// Encodes until every message bit has been consumed. Reads past the end
  /// of the message see zeros. Throws EncodeError if block_budget blocks are
  /// emitted first.
  DualEncode encode(std::span<const std::uint8_t> message,
                    std::optional<std::size_t> block_budget = std::nullopt,
                    std::vector<EncodeStep>* trace = nullptr) const;

  /// The first `count` blocks encode() would emit, without flushing.
  std::vector<Block> leading_blocks(std::span<const std::uint8_t> message,
                                    std::size_t count) const;

  /// Concatenation of carried_bits over the block sequence; the encoder's
  /// consumed message is a prefix of it. `states`, when given, receives the
  /// state before each block followed by the final state.
  BitString decode(std::span<const Block> blocks,
                   std::vector<IntervalState>* states = nullptr) const;

 private:
  long formula_length(const Rational& width, const Block& x) const;
  long top_length(const IntervalState& s, const Rational& low,
                  long formula) const;
  long length_with_low(const IntervalState& s, const Block& x,
                       const Rational& low) const;

  SourceModel model_;
  DualOptions options_;
  std::shared_ptr<const detail::DualEngine> engine_;
};

}  // namespace gelc

#endif  // GELC_DUAL_SFEG_HPP
