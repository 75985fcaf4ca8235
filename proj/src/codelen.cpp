#include "premise/codelen.hpp"

#include <cmath>
#include <stdexcept>

namespace premise {

namespace {
constexpr double kInvLn2 = 1.4426950408889634074;  // 1/ln(2)
constexpr double kC0 = 2.865064;
}  // namespace

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::domain_error("log_binomial: k > n");
  if (k == 0 || k == n) return 0.0;
  const double ln = std::lgamma(static_cast<double>(n) + 1.0) -
                    std::lgamma(static_cast<double>(k) + 1.0) -
                    std::lgamma(static_cast<double>(n - k) + 1.0);
  return ln * kInvLn2;
}

double universal_int_code(std::uint64_t n) {
  if (n == 0) throw std::domain_error("universal_int_code: n must be >= 1");
  double bits = std::log2(kC0);
  double t = std::log2(static_cast<double>(n));
  while (t > 0.0) {
    bits += t;
    t = std::log2(t);
  }
  return bits;
}

double binomial_param_complexity(std::uint64_t n) {
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  double sum = 0.0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    double lt = log_binomial(n, k);
    if (k > 0) lt += kd * std::log2(kd / nd);
    if (k < n) lt += (nd - kd) * std::log2((nd - kd) / nd);
    sum += std::exp2(lt);
  }
  return std::log2(sum);
}

double singleton_baseline_cost(const LabeledDatabase& db, ItemId item) {
  return log_binomial(db.size(), db.support(item));
}

double xor_clause_bits(std::uint64_t n_slots, std::span<const std::uint32_t> counts) {
  double bits = 0.0;
  std::uint64_t remaining = n_slots;
  for (std::uint32_t c : counts) {
    if (c > remaining) throw std::domain_error("xor_clause_bits: counts exceed slots");
    bits += log_binomial(remaining, c);
    remaining -= c;
  }
  return bits;
}

double pattern_data_cost(const LabeledDatabase& db, const Pattern& p) {
  return pattern_data_cost(db, p, selection(db, p, Part::All));
}

double pattern_data_cost(const LabeledDatabase& db, const Pattern& p, const TidList& tids_all) {
  TidList part_tids[2];
  part_tids[0].reserve(tids_all.size());
  part_tids[1].reserve(tids_all.size());
  for (Tid t : tids_all) part_tids[db.label(t) == Label::Neg ? 0 : 1].push_back(t);

  double bits = 0.0;
  for (int l = 0; l < 2; ++l) {
    const Part part = l == 0 ? Part::Neg : Part::Pos;
    const std::uint64_t part_size = db.size(part);
    const TidList& sel = part_tids[l];
    bits += log_binomial(part_size, sel.size());
    for (const auto& cl : p.clauses) {
      if (cl.items.size() == 1) continue;  // single term log C(s, s) == 0
      std::uint64_t remaining = sel.size();
      for (ItemId i : cl.items) {
        const std::uint64_t cnt = intersection_size(sel, db.tids(i, part));
        bits += log_binomial(remaining, cnt);
        remaining -= cnt;
      }
    }
  }
  return bits;
}

double residual_singleton_cost(const LabeledDatabase& db, std::uint32_t residual_count) {
  return log_binomial(db.size(), residual_count);
}

CostContext CostContext::make(const LabeledDatabase& db) {
  CostContext ctx;
  ctx.n = db.size();
  ctx.n_neg = db.size(Part::Neg);
  ctx.n_pos = db.size(Part::Pos);
  ctx.m = db.n_items();
  ctx.pc_n = binomial_param_complexity(ctx.n);
  ctx.pc_neg = binomial_param_complexity(ctx.n_neg);
  ctx.pc_pos = binomial_param_complexity(ctx.n_pos);
  ctx.pc_m = binomial_param_complexity(ctx.m);
  return ctx;
}

double pattern_model_bits(const CostContext& ctx, const Pattern& p) {
  double bits = universal_int_code(p.clauses.size()) + ctx.pc_pos + ctx.pc_neg;
  for (const auto& cl : p.clauses) bits += log_binomial(ctx.m, cl.items.size()) + ctx.pc_m;
  return bits;
}

}  // namespace premise
