#pragma once

#include <cstdint>

#include "premise/data.hpp"

namespace premise {

// Contingency cells for a pattern against the label partition:
// c = |sigma_P(D)|, a = |D| - c, d = |sigma_P(D+)|, b = |D+| - d, n = |D|.
struct ContingencyCells {
  std::int64_t a = 0, b = 0, c = 0, d = 0, n = 0;

  static ContingencyCells from_supports(std::uint64_t n_total, std::uint64_t n_pos,
                                        std::uint32_t support_neg, std::uint32_t support_pos);
};

struct LabelSideResult {
  Label side = Label::Pos;
  bool tie = false;  // equal occurrence rates in both partitions
};

// Side whose partition shows the higher occurrence rate; exact ties are
// flagged (compared by integer cross-multiplication, no rounding).
LabelSideResult assign_label_side(const LabeledDatabase& db, std::uint32_t support_neg,
                                  std::uint32_t support_pos);

// One-sided Fisher exact test for the pattern's association with its label
// side: the hypergeometric tail P(X >= d) for l+ patterns and P(X <= d) for
// l- patterns, where X ~ Hypergeom(N=|D|, K=|D+|, draws=|sigma_P(D)|).
// Evaluated in log space; zero-support patterns give p = 1.
double fisher_one_sided(std::uint64_t n_total, std::uint64_t n_pos, std::uint32_t support_neg,
                        std::uint32_t support_pos, Label side);
double fisher_one_sided(const LabeledDatabase& db, const Pattern& p);

}  // namespace premise
