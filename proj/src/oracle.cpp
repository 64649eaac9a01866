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

#include "gelc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>

#include "dual_engine.hpp"
#include "gelc/gray_order.hpp"
#include "gelc/sfe.hpp"
#include "gelc/sfeg.hpp"

namespace gelc {

namespace {

using detail::CellTable;
using detail::DualEngine;
using detail::ScaledState;

struct StateLess {
  bool operator()(const IntervalState& x, const IntervalState& y) const {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

DualEngine engine_for(const DualSfeg& code) {
  return DualEngine(code.model(), code.options());
}

CellTable table_of(const DualEngine& e, const ScaledState& s) {
  detail::Workspace w;
  e.load(s, w);
  return e.cells(w);
}

void guard(unsigned depth, unsigned n, const char* what) {
  if (static_cast<unsigned long>(depth) * n > kEnumerationLog2Budget) {
    throw BudgetError(std::string(what) + ": 2^(" + std::to_string(depth) +
                      "*" + std::to_string(n) + ") exceeds the 2^" +
                      std::to_string(kEnumerationLog2Budget) +
                      " enumeration budget");
  }
}

std::string state_str(const IntervalState& s) {
  return "[" + s.a.str() + ", " + s.b.str() + ")";
}

void fail(LemmaCheck& c, const std::string& what) {
  if (c.failures++ == 0) c.counterexample = what;
}

Rational block_prob(const CellTable& t, std::size_t k) {
  return Rational(t.hi[k] - t.lo[k], t.b - t.a);
}

// Expected length of the next block, as a sum over cells.
Rational expected_length(const CellTable& t) {
  mpz_class sum = 0;
  for (std::size_t k = 0; k < t.blocks.size(); ++k) {
    sum += (t.hi[k] - t.lo[k]) * t.lengths[k];
  }
  return Rational(sum, t.b - t.a);
}

Real input_length_bound(const SourceModel& m) {
  return Real::from_int(m.n()) * binary_entropy(m.p0()) - Real::from_int(1) -
         Real::from_int(2) * Real::log2(m.rho());
}

std::string dyadic_str(std::uint64_t v, unsigned bits) {
  return Rational(mpz_class(static_cast<unsigned long>(v)),
                  mpz_class(1) << bits)
      .str();
}

}  // namespace

const Rational& BlockDistribution::at(const Block& x) const {
  return probs.at(rank(x, Order::gray));
}

Rational BlockDistribution::total() const {
  Rational sum(0);
  for (const auto& p : probs) sum += p;
  return sum;
}

BlockDistribution block_distribution(const DualSfeg& code,
                                     const IntervalState& s) {
  const DualEngine e = engine_for(code);
  const ScaledState scaled = e.from_rational(s);
  const CellTable t = table_of(e, scaled);
  BlockDistribution d;
  d.context = s;
  d.blocks = t.blocks;
  d.lengths = t.lengths;
  d.probs.reserve(t.blocks.size());
  for (std::size_t k = 0; k < t.blocks.size(); ++k) {
    d.probs.push_back(block_prob(t, k));
  }
  return d;
}

std::vector<Block> KBlockTree::path(unsigned depth, std::size_t index) const {
  std::vector<Block> out(depth);
  for (unsigned d = depth; d >= 1; --d) {
    const KBlockNode& node = levels.at(d).at(index);
    out[d - 1] = node.block;
    index = node.parent;
  }
  return out;
}

Rational KBlockTree::total(unsigned depth) const {
  Rational sum(0);
  for (const auto& node : levels.at(depth)) sum += node.path;
  return sum;
}

KBlockTree kblock_distribution(const DualSfeg& code, unsigned k) {
  const unsigned n = code.model().n();
  guard(k, n, "kblock_distribution");
  const DualEngine e = engine_for(code);
  KBlockTree tree;
  tree.k = k;
  tree.levels.resize(k + 1);
  tree.levels[0].push_back(KBlockNode{});
  std::vector<ScaledState> frontier(1);
  for (unsigned depth = 1; depth <= k; ++depth) {
    std::vector<ScaledState> next;
    auto& level = tree.levels[depth];
    const auto& parents = tree.levels[depth - 1];
    for (std::size_t i = 0; i < parents.size(); ++i) {
      detail::Workspace w;
      e.load(frontier[i], w);
      const CellTable t = e.cells(w);
      for (std::size_t c = 0; c < t.blocks.size(); ++c) {
        detail::Advance step;
        e.advance(w, t.blocks[c], t.lows[c], step);
        KBlockNode node;
        node.parent = i;
        node.block = t.blocks[c];
        node.edge = block_prob(t, c);
        node.path = parents[i].path * node.edge;
        node.state = e.to_rational(step.next);
        level.push_back(std::move(node));
        next.push_back(std::move(step.next));
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

bool marginals_consistent(const KBlockTree& tree) {
  for (unsigned depth = 1; depth < tree.levels.size(); ++depth) {
    std::vector<Rational> sums(tree.levels[depth - 1].size(), Rational(0));
    for (const auto& node : tree.levels[depth]) sums[node.parent] += node.path;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      if (sums[i] != tree.levels[depth - 1][i].path) return false;
    }
  }
  return true;
}

DivergenceReport max_divergence_rate(const DualSfeg& code,
                                     const KBlockTree& tree) {
  const SourceModel& m = code.model();
  DivergenceReport r;
  r.k = tree.k;
  if (tree.k == 0) throw std::invalid_argument("k must be >= 1");
  const auto& leaves = tree.levels[tree.k];
  std::size_t best = 0;
  bool have = false;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i].path.is_zero()) continue;
    Rational target(1);
    for (const Block& x : tree.path(tree.k, i)) target *= prob(m, x);
    Rational ratio = leaves[i].path / target;
    if (!have || ratio > r.max_ratio) {
      r.max_ratio = std::move(ratio);
      best = i;
      have = true;
    }
  }
  r.argmax = tree.path(tree.k, best);
  const Real kn = Real::from_int(static_cast<long>(tree.k * m.n()));
  r.rate = Real::log2(r.max_ratio) / kn;
  const Rational two_alpha = Rational(2) * m.alpha_hat();
  r.bound = Real::log2(two_alpha) / Real::from_int(m.n());
  r.verdict = less_equal(r.rate, r.bound);
  Rational cap(1);
  for (unsigned i = 0; i < tree.k; ++i) cap *= two_alpha;
  r.exact = r.max_ratio <= cap;
  return r;
}

DivergenceReport max_divergence_rate(const DualSfeg& code, unsigned k) {
  return max_divergence_rate(code, kblock_distribution(code, k));
}

Rational expected_input_length(const DualSfeg& code, const IntervalState& s) {
  const DualEngine e = engine_for(code);
  return expected_length(table_of(e, e.from_rational(s)));
}

ExpectedLengths expected_lengths_report(const SourceModel& m) {
  if (m.n() > 14) throw BudgetError("expected lengths need n <= 14");
  ExpectedLengths out;
  Rational sfe(0);
  Rational sfeg(0);
  const std::uint64_t count = std::uint64_t{1} << m.n();
  for (std::uint64_t v = 0; v < count; ++v) {
    const Block x{v, m.n()};
    const Rational p = prob(m, x);
    sfe += p * Rational(static_cast<std::uint64_t>(len_sfe(m, x)));
    sfeg += p * Rational(static_cast<std::uint64_t>(len_sfeg(m, x)));
  }
  out.sfe = sfe;
  out.sfeg = sfeg;
  out.block_entropy = Real::from_int(m.n()) * binary_entropy(m.p0());
  out.sfe_bound = out.block_entropy + Real::from_int(2);
  out.sfeg_bound = out.sfe_bound - Real::log2(m.alpha_s());
  out.dual_bound = input_length_bound(m);
  out.sfe_ok = less(Real(out.sfe), out.sfe_bound);
  out.sfeg_ok = less(Real(out.sfeg), out.sfeg_bound);
  return out;
}

ExpectedLengths expected_lengths_report(const DualSfeg& code) {
  ExpectedLengths out = expected_lengths_report(code.model());
  out.dual_first_block = expected_input_length(code, IntervalState{});
  out.dual_ok = less(out.dual_bound, Real(out.dual_first_block));
  return out;
}

std::vector<ReachableState> reachable_states(const DualSfeg& code,
                                             unsigned depth) {
  guard(depth, code.model().n(), "reachable_states");
  const DualEngine e = engine_for(code);
  std::map<IntervalState, unsigned, StateLess> seen;
  std::vector<ReachableState> out;
  std::vector<ScaledState> frontier(1);
  seen.emplace(IntervalState{}, 0);
  out.push_back(ReachableState{IntervalState{}, 0});
  for (unsigned d = 1; d <= depth; ++d) {
    std::vector<ScaledState> next;
    for (const auto& s : frontier) {
      detail::Workspace w;
      e.load(s, w);
      const CellTable t = e.cells(w);
      for (std::size_t c = 0; c < t.blocks.size(); ++c) {
        detail::Advance step;
        e.advance(w, t.blocks[c], t.lows[c], step);
        IntervalState r = e.to_rational(step.next);
        if (seen.emplace(r, d).second) {
          out.push_back(ReachableState{std::move(r), d});
          next.push_back(std::move(step.next));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

LemmaCheck check_floor_lemma_grid(unsigned bits, unsigned max_l) {
  if (max_l > bits || bits > 30) {
    throw std::invalid_argument("floor lemma grid needs max_l <= bits <= 30");
  }
  LemmaCheck c;
  c.name = "floor_lemma_grid";
  // Everything in units of 2^-bits; floor to l bits clears the low bits.
  const std::uint64_t size = std::uint64_t{1} << bits;
  for (unsigned l = 0; l <= max_l; ++l) {
    for (unsigned lp = 0; lp <= max_l; ++lp) {
      const std::uint64_t step_lp = std::uint64_t{1} << (bits - lp);
      const std::uint64_t step_min = std::uint64_t{1}
                                     << (bits - std::min(l, lp));
      const std::uint64_t mask_l = ~((std::uint64_t{1} << (bits - l)) - 1);
      const std::uint64_t mask_lp = ~(step_lp - 1);
      for (std::uint64_t x = 0; x < size; ++x) {
        const std::uint64_t fx = x & mask_l;
        for (std::uint64_t xp = 0; xp < size; ++xp) {
          ++c.cases;
          if (x + step_lp < xp + step_min) continue;
          if (fx < (xp & mask_lp)) {
            fail(c, "x=" + dyadic_str(x, bits) + " x'=" +
                        dyadic_str(xp, bits) + " l=" + std::to_string(l) +
                        " l'=" + std::to_string(lp));
          }
        }
      }
    }
  }
  return c;
}

LemmaCheck check_floor_lemma_random(std::uint64_t samples, unsigned bits,
                                    unsigned max_l, std::uint64_t seed) {
  if (bits > 62 || max_l > 62) {
    throw std::invalid_argument("floor lemma samples need bits, max_l <= 62");
  }
  LemmaCheck c;
  c.name = "floor_lemma_random";
  std::mt19937_64 rng(seed);
  const mpz_class one = 1;
  const Rational unit = pow2(-static_cast<long>(bits));
  const auto draw = [&](unsigned width) {
    const std::uint64_t v = width == 0 ? 0 : rng() >> (64 - width);
    return Rational(mpz_class(static_cast<unsigned long>(v)), one << width) ;
  };
  std::uniform_int_distribution<unsigned> pick_l(0, max_l);
  std::uniform_int_distribution<unsigned> pick_bits(0, bits);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const unsigned l = pick_l(rng);
    const unsigned lp = pick_l(rng);
    const Rational x = draw(pick_bits(rng));
    Rational xp;
    const Rational slack_hi = x + pow2(-static_cast<long>(lp));
    const Rational slack_lo = pow2(-static_cast<long>(std::min(l, lp)));
    if ((i & 1) == 0 || slack_hi < slack_lo) {
      xp = draw(pick_bits(rng));
    } else {
      // Largest admissible x', then nudged down by a few units.
      Rational top = slack_hi - slack_lo;
      const auto back = static_cast<std::uint64_t>(rng() % 4);
      for (std::uint64_t j = 0; j < back && top >= unit; ++j) top -= unit;
      xp = top < Rational(1) ? top : draw(pick_bits(rng));
    }
    ++c.cases;
    if (slack_hi < xp + slack_lo) continue;
    if (floor_bits(x, l) < floor_bits(xp, lp)) {
      fail(c, "x=" + x.str() + " x'=" + xp.str() + " l=" + std::to_string(l) +
                  " l'=" + std::to_string(lp));
    }
  }
  return c;
}

LemmaCheck check_gray_inverse(unsigned max_n) {
  LemmaCheck c;
  c.name = "gray_inverse";
  for (unsigned n = 1; n <= max_n; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const Block x{v, n};
      ++c.cases;
      if (!(gray_inv(gray_map(x)) == x)) fail(c, x.str());
    }
  }
  return c;
}

LemmaCheck check_gray_adjacency(unsigned max_n) {
  LemmaCheck c;
  c.name = "gray_adjacency";
  for (unsigned n = 1; n <= max_n; ++n) {
    for (std::uint64_t v = 0; v + 1 < (std::uint64_t{1} << n); ++v) {
      const std::uint64_t diff =
          gray_map(Block{v, n}).value ^ gray_map(Block{v + 1, n}).value;
      ++c.cases;
      if (std::popcount(diff) != 1) fail(c, Block{v, n}.str());
    }
  }
  return c;
}

LemmaCheck check_gray_ratio(const Rational& p0, unsigned max_n) {
  LemmaCheck c;
  c.name = "gray_ratio";
  for (unsigned n = 1; n <= max_n; ++n) {
    const SourceModel m(p0, n);
    const Rational inv_rho = Rational(1) / m.rho();
    Rational prev = prob(m, min_block(n, Order::gray));
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
      const Block x = unrank(k, n, Order::gray);
      const Rational p = prob(m, x);
      const Rational ratio = prev / p;
      ++c.cases;
      if (ratio < inv_rho || ratio > m.rho()) fail(c, x.str());
      prev = p;
    }
  }
  return c;
}

LemmaCheck check_cdf_recursion(const Rational& p0, unsigned max_n) {
  LemmaCheck c;
  c.name = "cdf_recursion";
  for (unsigned n = 1; n <= max_n; ++n) {
    const SourceModel m(p0, n);
    for (Order order : {Order::lex, Order::gray}) {
      Rational sum(0);
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        const Block x = unrank(k, n, order);
        sum += prob(m, x);
        ++c.cases;
        if (cdf(m, x, order) != sum) fail(c, x.str());
      }
    }
  }
  return c;
}

LemmaCheck check_fence(const DualSfeg& code,
                       const std::vector<ReachableState>& states) {
  LemmaCheck c;
  c.name = "fence";
  const DualEngine e = engine_for(code);
  for (const auto& rs : states) {
    const CellTable t = table_of(e, e.from_rational(rs.state));
    const std::size_t count = t.blocks.size();
    for (std::size_t k = 0; k < count; ++k) {
      ++c.cases;
      const bool above_low = t.fence[k] >= t.f_low[k];
      const bool above_next = k + 1 == count || t.fence[k] >= t.base[k + 1];
      const bool inside = t.lo[k] >= t.base[k] && t.hi[k] <= t.fence[k];
      if (!(above_low && above_next && inside)) {
        fail(c, state_str(rs.state) + " x=" + t.blocks[k].str());
      }
    }
  }
  return c;
}

LemmaCheck check_partition(const DualSfeg& code,
                           const std::vector<ReachableState>& states) {
  LemmaCheck c;
  c.name = "partition";
  const DualEngine e = engine_for(code);
  for (const auto& rs : states) {
    const CellTable t = table_of(e, e.from_rational(rs.state));
    ++c.cases;
    bool ok = t.lo.front() == t.a && t.hi.back() == t.b;
    for (std::size_t k = 0; ok && k < t.blocks.size(); ++k) {
      ok = t.lo[k] < t.hi[k] && (k == 0 || t.lo[k] == t.hi[k - 1]);
    }
    if (!ok) fail(c, state_str(rs.state));
  }
  return c;
}

LemmaCheck check_block_divergence(const DualSfeg& code,
                                  const std::vector<ReachableState>& states) {
  LemmaCheck c;
  c.name = "block_divergence";
  const SourceModel& m = code.model();
  const DualEngine e = engine_for(code);
  const Rational two_alpha = Rational(2) * m.alpha_hat();
  for (const auto& rs : states) {
    const CellTable t = table_of(e, e.from_rational(rs.state));
    const mpz_class width = t.b - t.a;
    for (std::size_t k = 0; k < t.blocks.size(); ++k) {
      const Rational cap = two_alpha * prob(m, t.blocks[k]);
      ++c.cases;
      // (hi - lo) / width < cap, cross-multiplied.
      if ((t.hi[k] - t.lo[k]) * cap.denominator() >=
          cap.numerator() * width) {
        fail(c, state_str(rs.state) + " x=" + t.blocks[k].str());
      }
    }
  }
  return c;
}

LemmaCheck check_uniformity(const DualSfeg& code,
                            const std::vector<ReachableState>& states) {
  LemmaCheck c;
  c.name = "uniformity";
  const DualEngine e = engine_for(code);
  for (const auto& rs : states) {
    const ScaledState scaled = e.from_rational(rs.state);
    detail::Workspace w;
    e.load(scaled, w);
    const CellTable t = e.cells(w);
    const std::vector<BlockInterval> cells = code.partition(rs.state);
    for (std::size_t k = 0; k < t.blocks.size(); ++k) {
      ++c.cases;
      const Block& x = t.blocks[k];
      detail::Advance step;
      e.advance(w, x, t.lows[k], step);
      const IntervalState next = e.to_rational(step.next);
      const IntervalState reference = code.state_update(rs.state, x);
      const Rational scale = pow2(t.lengths[k]);
      const bool ok = next == reference &&
                      next.width() == scale * cells[k].width() &&
                      next.b <= Rational(1) && next.a < next.b &&
                      code.length(rs.state, x) == t.lengths[k];
      if (!ok) fail(c, state_str(rs.state) + " x=" + x.str());
    }
  }
  return c;
}

LemmaCheck check_input_length(const DualSfeg& code,
                              const std::vector<ReachableState>& states) {
  LemmaCheck c;
  c.name = "input_length";
  const DualEngine e = engine_for(code);
  const Real bound = input_length_bound(code.model());
  for (const auto& rs : states) {
    const Rational mean = expected_length(table_of(e, e.from_rational(rs.state)));
    ++c.cases;
    const Verdict v = less(bound, Real(mean));
    if (v != Verdict::holds) {
      fail(c, state_str(rs.state) + " E=" + mean.str() + " (" +
                  to_string(v) + ")");
    }
  }
  return c;
}

bool LemmaReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return c.passed(); });
}

LemmaReport lemma_suite(const DualSfeg& code, const LemmaOptions& options) {
  LemmaReport r;
  r.checks.push_back(
      check_floor_lemma_grid(options.floor_bits, options.floor_max_l));
  r.checks.push_back(check_floor_lemma_random(options.floor_samples,
                                              options.random_bits,
                                              options.random_max_l,
                                              options.seed));
  r.checks.push_back(check_gray_ratio(code.model().p0(), options.gray_max_n));
  const std::vector<ReachableState> states =
      reachable_states(code, options.depth);
  r.checks.push_back(check_fence(code, states));
  r.checks.push_back(check_partition(code, states));
  r.checks.push_back(check_block_divergence(code, states));
  r.checks.push_back(check_uniformity(code, states));
  return r;
}

ChiSquared monte_carlo_first_block(const DualSfeg& code, std::uint64_t trials,
                                   std::uint64_t seed, unsigned message_bits) {
  const BlockDistribution expected = block_distribution(code, IntervalState{});
  ChiSquared out;
  out.trials = trials;
  out.counts.assign(expected.blocks.size(), 0);
  std::mt19937_64 rng(seed);
  BitString message(message_bits);
  for (std::uint64_t i = 0; i < trials; ++i) {
    for (auto& bit : message) bit = static_cast<std::uint8_t>(rng() >> 63);
    const Block x = code.leading_blocks(message, 1).front();
    ++out.counts[rank(x, Order::gray)];
  }
  for (std::size_t k = 0; k < out.counts.size(); ++k) {
    const double mean =
        static_cast<double>(trials) * expected.probs[k].to_double();
    const double d = static_cast<double>(out.counts[k]) - mean;
    out.statistic += d * d / mean;
  }
  out.degrees_of_freedom = static_cast<unsigned>(out.counts.size() - 1);
  return out;
}

}  // namespace gelc
