#include "premise/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "premise/codelen.hpp"

namespace premise {

ContingencyCells ContingencyCells::from_supports(std::uint64_t n_total, std::uint64_t n_pos,
                                                 std::uint32_t support_neg,
                                                 std::uint32_t support_pos) {
  ContingencyCells cells;
  cells.n = static_cast<std::int64_t>(n_total);
  cells.c = static_cast<std::int64_t>(support_neg) + support_pos;
  cells.a = cells.n - cells.c;
  cells.d = support_pos;
  cells.b = static_cast<std::int64_t>(n_pos) - cells.d;
  if (cells.a < 0 || cells.b < 0 || cells.c < 0 || cells.d > cells.c)
    throw std::domain_error("ContingencyCells: inconsistent counts");
  return cells;
}

LabelSideResult assign_label_side(const LabeledDatabase& db, std::uint32_t support_neg,
                                  std::uint32_t support_pos) {
  const std::uint64_t n_neg = db.size(Part::Neg), n_pos = db.size(Part::Pos);
  if (n_neg == 0 || n_pos == 0)
    throw std::domain_error("assign_label_side: empty label partition");
  // support_pos/n_pos vs support_neg/n_neg without division
  const unsigned long long lhs = static_cast<unsigned long long>(support_pos) * n_neg;
  const unsigned long long rhs = static_cast<unsigned long long>(support_neg) * n_pos;
  LabelSideResult r;
  if (lhs > rhs)
    r.side = Label::Pos;
  else if (lhs < rhs)
    r.side = Label::Neg;
  else
    r.tie = true;
  return r;
}

double fisher_one_sided(std::uint64_t n_total, std::uint64_t n_pos, std::uint32_t support_neg,
                        std::uint32_t support_pos, Label side) {
  const std::int64_t N = static_cast<std::int64_t>(n_total);
  const std::int64_t K = static_cast<std::int64_t>(n_pos);
  const std::int64_t c = static_cast<std::int64_t>(support_neg) + support_pos;
  const std::int64_t d = support_pos;
  if (c > N || d > K || c - d > N - K)
    throw std::domain_error("fisher_one_sided: supports exceed partition sizes");

  const std::int64_t lo = std::max<std::int64_t>(0, c - (N - K));
  const std::int64_t hi = std::min(c, K);
  std::int64_t from = lo, to = hi;
  if (side == Label::Pos)
    from = std::max(d, lo);
  else
    to = std::min(d, hi);
  if (from > to) return 0.0;

  const double denom = log_binomial(N, c);
  std::vector<double> lt;
  lt.reserve(static_cast<std::size_t>(to - from + 1));
  double max_lt = -1e300;
  for (std::int64_t x = from; x <= to; ++x) {
    const double v = log_binomial(K, x) + log_binomial(N - K, c - x) - denom;
    lt.push_back(v);
    max_lt = std::max(max_lt, v);
  }
  double acc = 0.0;
  for (double v : lt) acc += std::exp2(v - max_lt);
  const double p = std::exp2(max_lt) * acc;
  return p < 0.0 ? 0.0 : p;
}

double fisher_one_sided(const LabeledDatabase& db, const Pattern& p) {
  return fisher_one_sided(db.size(), db.size(Part::Pos), p.support_neg, p.support_pos,
                          p.label_side);
}

}  // namespace premise
