#pragma once

#include <set>
#include <string>
#include <vector>

#include "premise/io.hpp"

namespace premise {

// Scores between a discovered and a ground-truth pattern set. Patterns are
// compared as flattened item sets (clause structure and label sides are
// ignored for matching).
struct PatternSetComparison {
  double precision = 0, recall = 0, f1 = 0;
  double soft_precision = 0, soft_recall = 0, soft_f1 = 0;
  std::vector<double> truth_best_overlap;  // per truth pattern, best fragment fraction
};

using ItemSet = std::set<std::string>;

std::vector<ItemSet> flatten(const std::vector<TokenPattern>& patterns);

// Exact set-matching F1: |found ∩ truth| / (|found ∩ truth| + |Δ|/2).
// Empty vs empty scores 1, empty vs non-empty 0.
PatternSetComparison exact_f1(const std::vector<ItemSet>& found, const std::vector<ItemSet>& truth);

// Fragment-rewarding soft scores: the mean over one side of the best
// |overlap| / |truth pattern| fraction on the other, combined harmonically.
PatternSetComparison soft_f1(const std::vector<ItemSet>& found, const std::vector<ItemSet>& truth);

// Both metrics in one comparison.
PatternSetComparison compare_pattern_sets(const std::vector<TokenPattern>& found,
                                          const std::vector<TokenPattern>& truth);

}  // namespace premise
