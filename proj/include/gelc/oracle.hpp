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

#ifndef GELC_ORACLE_HPP
#define GELC_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gelc/dual_sfeg.hpp"
#include "gelc/interval.hpp"
#include "gelc/rational.hpp"
#include "gelc/source_model.hpp"

namespace gelc {

/// Raised when an enumeration would exceed its size guard.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumerations are limited to 2^20 leaves.
inline constexpr unsigned kEnumerationLog2Budget = 20;

/// Exact emission probabilities of the next block when r is uniform on the
/// context interval. Entries are in Gray order.
struct BlockDistribution {
  IntervalState context;
  std::vector<Block> blocks;
  std::vector<Rational> probs;
  std::vector<long> lengths;  // message bits each block carries

  const Rational& at(const Block& x) const;
  Rational total() const;
};

BlockDistribution block_distribution(const DualSfeg& code,
                                     const IntervalState& s);

struct KBlockNode {
  std::size_t parent = 0;  // index into the previous level
  Block block;             // edge label; unused at the root
  Rational edge{1};        // probability of `block` given the parent
  Rational path{1};        // probability of the whole path
  IntervalState state;     // interval after the path
};

/// Depth-k tree of encoder states under uniform input. levels[0] holds the
/// root [0,1), levels[j] every j-block prefix.
struct KBlockTree {
  unsigned k = 0;
  std::vector<std::vector<KBlockNode>> levels;

  std::vector<Block> path(unsigned depth, std::size_t index) const;
  Rational total(unsigned depth) const;
};

/// Throws BudgetError when 2^(kn) exceeds 2^kEnumerationLog2Budget.
KBlockTree kblock_distribution(const DualSfeg& code, unsigned k);

/// Summing the children of every node gives the node's own probability,
/// at every depth.
bool marginals_consistent(const KBlockTree& tree);

struct DivergenceReport {
  unsigned k = 0;
  Rational max_ratio;                // max over paths of P~(x) / P(x)
  std::vector<Block> argmax;
  Real rate;                         // log2(max_ratio) / (k n)
  Real bound;                        // log2(2 alpha_hat) / n
  Verdict verdict = Verdict::undecided;  // rate <= bound
  bool exact = false;  // max_ratio <= (2 alpha_hat)^k, decided exactly
};

DivergenceReport max_divergence_rate(const DualSfeg& code,
                                     const KBlockTree& tree);
DivergenceReport max_divergence_rate(const DualSfeg& code, unsigned k);

/// Sum over blocks of p~(x) * length(x) for uniform r on s.
Rational expected_input_length(const DualSfeg& code, const IntervalState& s);

struct ExpectedLengths {
  Rational sfe;               // sum p(x) len_sfe(x)
  Rational sfeg;              // sum p(x) len_sfeg(x)
  Rational dual_first_block;  // expected_input_length at [0,1)
  Real block_entropy;         // n H(X)
  Real sfe_bound;             // n H + 2
  Real sfeg_bound;            // n H + 2 - log2 alpha_s
  Real dual_bound;            // n H - 1 - 2 log2 rho
  Verdict sfe_ok = Verdict::undecided;
  Verdict sfeg_ok = Verdict::undecided;
  Verdict dual_ok = Verdict::undecided;
};

/// Enumerates all 2^n blocks; requires n <= 14.
ExpectedLengths expected_lengths_report(const DualSfeg& code);
/// The fixed-to-variable part only, for models the dual code rejects.
ExpectedLengths expected_lengths_report(const SourceModel& m);

/// A reachable encoder state with the depth it was first seen at.
struct ReachableState {
  IntervalState state;
  unsigned depth = 0;
};

/// Distinct states reachable from [0,1) in at most `depth` blocks. Throws
/// BudgetError when 2^(depth n) exceeds the enumeration budget.
std::vector<ReachableState> reachable_states(const DualSfeg& code,
                                             unsigned depth);

/// Outcome of one exhaustive or randomized property check.
struct LemmaCheck {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string counterexample;  // first failure, if any

  bool passed() const { return failures == 0; }
};

/// If x + 2^-l' >= x' + 2^-min(l,l') then floor(x)_l >= floor(x')_l', over
/// every dyadic x, x' in [0,1) with `bits` fractional bits and every
/// l, l' <= max_l (max_l <= bits <= 30).
LemmaCheck check_floor_lemma_grid(unsigned bits, unsigned max_l);

/// Randomized floor-lemma cases through floor_bits, with x, x' of up to
/// `bits` fractional bits and l, l' <= max_l. Half the cases put x' on or
/// just below the largest value the hypothesis admits.
LemmaCheck check_floor_lemma_random(std::uint64_t samples, unsigned bits,
                                    unsigned max_l, std::uint64_t seed);

/// gray_inv(gray_map(x)) = x for every block of length <= max_n.
LemmaCheck check_gray_inverse(unsigned max_n);
/// Gray images of lexicographic neighbours differ in one bit, n <= max_n.
LemmaCheck check_gray_adjacency(unsigned max_n);
/// 1/rho <= p(x-1)/p(x) <= rho along Gray order, n <= max_n.
LemmaCheck check_gray_ratio(const Rational& p0, unsigned max_n);
/// The O(n) CDF recursion equals running sums of p in both orders.
LemmaCheck check_cdf_recursion(const Rational& p0, unsigned max_n);

/// fbar(x) >= F_I(x-1), fbar(x) >= floor(F_I(x))_{length(x+1)}, and
/// I(x) within [floor(F_I(x-1))_length(x), fbar(x)).
LemmaCheck check_fence(const DualSfeg& code,
                       const std::vector<ReachableState>& states);
/// The block intervals tile [a, b) with nonempty cells.
LemmaCheck check_partition(const DualSfeg& code,
                           const std::vector<ReachableState>& states);
/// width(I(x)) / width(I) < 2 alpha_hat p(x).
LemmaCheck check_block_divergence(const DualSfeg& code,
                                  const std::vector<ReachableState>& states);
/// The next state is I(x) minus its carried bits, scaled by 2^length, and
/// lies in [0, 1].
LemmaCheck check_uniformity(const DualSfeg& code,
                            const std::vector<ReachableState>& states);
/// expected_input_length(s) > n H - 1 - 2 log2 rho, decided by intervals.
LemmaCheck check_input_length(const DualSfeg& code,
                              const std::vector<ReachableState>& states);

struct LemmaOptions {
  unsigned depth = 3;
  unsigned floor_bits = 10;
  unsigned floor_max_l = 10;
  std::uint64_t floor_samples = 100000;
  unsigned random_bits = 48;
  unsigned random_max_l = 24;
  unsigned gray_max_n = 10;
  std::uint64_t seed = 1;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool passed() const;
};

LemmaReport lemma_suite(const DualSfeg& code, const LemmaOptions& options = {});

/// Empirical first-block frequencies over random messages, against
/// block_distribution at [0,1). A sanity check; nothing is asserted.
struct ChiSquared {
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> counts;  // Gray order
  double statistic = 0;
  unsigned degrees_of_freedom = 0;
};

ChiSquared monte_carlo_first_block(const DualSfeg& code, std::uint64_t trials,
                                   std::uint64_t seed,
                                   unsigned message_bits = 64);

}  // namespace gelc

#endif  // GELC_ORACLE_HPP
