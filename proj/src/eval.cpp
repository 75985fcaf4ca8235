#include "premise/eval.hpp"

#include <algorithm>

namespace premise {

std::vector<ItemSet> flatten(const std::vector<TokenPattern>& patterns) {
  std::vector<ItemSet> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) {
    ItemSet s;
    for (const auto& cl : p.clauses) s.insert(cl.begin(), cl.end());
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::size_t overlap_size(const ItemSet& a, const ItemSet& b) {
  std::size_t n = 0;
  for (const auto& x : a) n += b.count(x);
  return n;
}

double harmonic(double a, double b) { return a + b > 0 ? 2.0 * a * b / (a + b) : 0.0; }

}  // namespace

PatternSetComparison exact_f1(const std::vector<ItemSet>& found,
                              const std::vector<ItemSet>& truth) {
  PatternSetComparison cmp;
  if (found.empty() && truth.empty()) {
    cmp.precision = cmp.recall = cmp.f1 = 1.0;
    return cmp;
  }
  if (found.empty() || truth.empty()) return cmp;

  // multiset-free comparison: duplicates collapse
  std::vector<ItemSet> fu(found), tu(truth);
  std::sort(fu.begin(), fu.end());
  fu.erase(std::unique(fu.begin(), fu.end()), fu.end());
  std::sort(tu.begin(), tu.end());
  tu.erase(std::unique(tu.begin(), tu.end()), tu.end());

  std::size_t inter = 0;
  for (const auto& f : fu) inter += std::binary_search(tu.begin(), tu.end(), f);
  cmp.precision = static_cast<double>(inter) / static_cast<double>(fu.size());
  cmp.recall = static_cast<double>(inter) / static_cast<double>(tu.size());
  const double sym_diff = static_cast<double>(fu.size() - inter + tu.size() - inter);
  cmp.f1 = static_cast<double>(inter) + sym_diff > 0
               ? static_cast<double>(inter) / (static_cast<double>(inter) + 0.5 * sym_diff)
               : 0.0;
  return cmp;
}

PatternSetComparison soft_f1(const std::vector<ItemSet>& found,
                             const std::vector<ItemSet>& truth) {
  PatternSetComparison cmp;
  if (found.empty() && truth.empty()) {
    cmp.soft_precision = cmp.soft_recall = cmp.soft_f1 = 1.0;
    return cmp;
  }
  if (found.empty() || truth.empty()) return cmp;

  double prec_sum = 0;
  for (const auto& f : found) {
    double best = 0;
    for (const auto& t : truth)
      if (!t.empty())
        best = std::max(best, static_cast<double>(overlap_size(f, t)) /
                                  static_cast<double>(t.size()));
    prec_sum += best;
  }
  cmp.soft_precision = prec_sum / static_cast<double>(found.size());

  double rec_sum = 0;
  cmp.truth_best_overlap.reserve(truth.size());
  for (const auto& t : truth) {
    double best = 0;
    if (!t.empty())
      for (const auto& f : found)
        best = std::max(best, static_cast<double>(overlap_size(f, t)) /
                                  static_cast<double>(t.size()));
    cmp.truth_best_overlap.push_back(best);
    rec_sum += best;
  }
  cmp.soft_recall = rec_sum / static_cast<double>(truth.size());
  cmp.soft_f1 = harmonic(cmp.soft_precision, cmp.soft_recall);
  return cmp;
}

PatternSetComparison compare_pattern_sets(const std::vector<TokenPattern>& found,
                                          const std::vector<TokenPattern>& truth) {
  const auto f = flatten(found);
  const auto t = flatten(truth);
  PatternSetComparison cmp = exact_f1(f, t);
  PatternSetComparison soft = soft_f1(f, t);
  cmp.soft_precision = soft.soft_precision;
  cmp.soft_recall = soft.soft_recall;
  cmp.soft_f1 = soft.soft_f1;
  cmp.truth_best_overlap = std::move(soft.truth_best_overlap);
  return cmp;
}

}  // namespace premise
