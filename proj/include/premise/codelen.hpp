#pragma once

#include <span>
#include <vector>

#include "premise/data.hpp"

namespace premise {

// All codelengths are in bits (base-2 logs); 0*log 0 == 0 throughout.

// log2 of (n choose k); exact within 1e-9 of integer arithmetic for n <= 30.
double log_binomial(std::uint64_t n, std::uint64_t k);

// Universal code for integers L_N(n) = log2(c0) + log2 n + log2 log2 n + ...
// over the positive terms, c0 = 2.865064.
double universal_int_code(std::uint64_t n);

// Parametric complexity of a binomial (two-category) model with n trials,
// log2 sum_k C(n,k) (k/n)^k ((n-k)/n)^(n-k); pc(0) == 0.
double binomial_param_complexity(std::uint64_t n);

// Cost of transmitting which transactions of D contain the item, ignoring
// labels: log2 C(|D|, |sigma_I(D)|).
double singleton_baseline_cost(const LabeledDatabase& db, ItemId item);

// Inner clause term of the pattern data cost: items transmitted one by one
// in the given order, each over the slots left by the earlier ones. counts
// must sum to at most n_slots. Invariant under permutations of counts.
double xor_clause_bits(std::uint64_t n_slots, std::span<const std::uint32_t> counts);

// Label-conditioned cost of a pattern's occurrences: per partition, the
// occurrence positions plus, per clause, which item is active where.
double pattern_data_cost(const LabeledDatabase& db, const Pattern& p);
// Same, with the pattern's global selection already at hand.
double pattern_data_cost(const LabeledDatabase& db, const Pattern& p, const TidList& tids_all);

// Residual singleton cost given the occurrences already covered by patterns
// containing the item: log2 C(|D|, residual_count).
double residual_singleton_cost(const LabeledDatabase& db, std::uint32_t residual_count);

// Per-database constants used by the model cost; parametric complexities are
// computed once here so repeated cost evaluations stay cheap.
struct CostContext {
  std::uint64_t n = 0, n_neg = 0, n_pos = 0, m = 0;
  double pc_n = 0, pc_neg = 0, pc_pos = 0, pc_m = 0;

  static CostContext make(const LabeledDatabase& db);
};

// Model-side cost of one pattern: clause count, per-partition parametric
// complexities, and per clause the item identities plus their complexity term.
double pattern_model_bits(const CostContext& ctx, const Pattern& p);

struct CostBreakdown {
  double model_bits = 0;
  double data_bits = 0;
  double pattern_count_bits = 0;            // the L_N(|P|+1) term
  std::vector<double> per_pattern_bits;     // model + data share of each pattern
  std::vector<double> per_singleton_bits;   // pc(|D|) + residual cost, per item

  double total() const { return model_bits + data_bits; }
};

}  // namespace premise
