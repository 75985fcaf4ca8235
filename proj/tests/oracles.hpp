#pragma once

// Brute-force reference implementations used only by the test suite to
// validate the fast paths. They share nothing with the library beyond the
// data model: costs are re-derived term by term from the definitions, the
// combinatorial sums use exact rational arithmetic, and every selection is
// a linear scan.

#include <cstdint>
#include <optional>

#include "premise/data.hpp"
#include "premise/model.hpp"

namespace premise::oracles {

// Exact-rational evaluation of the binomial normalized-maximum-likelihood
// normalizer for n trials, as log2. Refuses n > 20.
double oracle_nml_binomial(std::uint64_t n);

// Exact-rational one-sided hypergeometric tail. Refuses n > 30.
double oracle_fisher(std::uint64_t n_total, std::uint64_t n_pos, std::uint32_t support_neg,
                     std::uint32_t support_pos, Label side);

// From-scratch total codelength of (model, db): every selection by linear
// scan over the transactions, every cost term straight from the formulas,
// no caching. Refuses |D| > 200, |I| > 50, or more than 5 patterns.
double oracle_total_cost(const Model& model);
double oracle_total_cost(const LabeledDatabase& db, const std::vector<Pattern>& patterns);

// Exhaustive minimizer over all conjunctive patterns of up to 3 items
// (single-pattern models); empty when the baseline beats every pattern.
// Refuses |I| > 12.
std::optional<Pattern> oracle_best_single_pattern(const LabeledDatabase& db);

}  // namespace premise::oracles
