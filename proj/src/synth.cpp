#include "premise/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "premise/rng.hpp"

namespace premise {

namespace {

// rounded normal draw clamped to [lo, hi]
std::uint32_t draw_count(Rng& rng, const NormalDist& d, std::uint64_t lo, std::uint64_t hi) {
  const double v = std::round(rng.normal(d.mean, d.sd));
  if (v < static_cast<double>(lo)) return static_cast<std::uint32_t>(lo);
  if (v > static_cast<double>(hi)) return static_cast<std::uint32_t>(hi);
  return static_cast<std::uint32_t>(v);
}

std::string canonical_value(double v) {
  // shortest exact decimal, reused for seed derivation
  return format_double(v);
}

}  // namespace

void BaseGenConfig::validate() const {
  if (n_transactions == 0 || n_items == 0)
    throw std::invalid_argument("gen_base: counts must be positive");
  if (!(frac_neg > 0.0 && frac_neg < 1.0))
    throw std::invalid_argument("gen_base: frac_neg must lie in (0, 1)");
  if (pattern_len_min < 1 || pattern_len_max < pattern_len_min ||
      pattern_len_max > n_items)
    throw std::invalid_argument("gen_base: bad pattern length range");
  if (!(shift > 0.0 && shift <= 1.0))
    throw std::invalid_argument("gen_base: shift must lie in (0, 1]");
  if (flip_rate < 0.0 || flip_rate >= 1.0)
    throw std::invalid_argument("gen_base: flip_rate must lie in [0, 1)");
  if (coverage_target < 0.0 || coverage_target > 1.0)
    throw std::invalid_argument("gen_base: coverage_target must lie in [0, 1]");
}

std::vector<TokenPattern> PlantedTruth::to_tokens(const Vocabulary& vocab) const {
  std::vector<TokenPattern> out;
  out.reserve(patterns.size());
  for (const auto& pp : patterns) {
    TokenPattern tp;
    for (const auto& cl : pp.pattern.clauses) {
      std::vector<std::string> toks;
      toks.reserve(cl.items.size());
      for (ItemId i : cl.items) toks.push_back(vocab.token(i));
      tp.clauses.push_back(std::move(toks));
    }
    out.push_back(std::move(tp));
  }
  return out;
}

GenResult gen_base(const BaseGenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const std::uint32_t n = config.n_transactions;
  const std::uint32_t m = config.n_items;
  const std::uint32_t n_neg = static_cast<std::uint32_t>(std::lround(config.frac_neg * n));
  if (n_neg == 0 || n_neg == n) throw std::invalid_argument("gen_base: degenerate label split");
  const std::uint32_t n_pos = n - n_neg;

  // cell sets per transaction; tids [0, n_neg) are negative
  std::vector<std::unordered_set<ItemId>> rows(n);

  // draw patterns until the coverage target is reached (checked after each draw)
  PlantedTruth truth;
  std::vector<bool> in_pattern(m, false);
  std::size_t covered = 0;
  const std::size_t want = static_cast<std::size_t>(config.coverage_target * m);
  while (covered < want) {
    const std::uint32_t len =
        static_cast<std::uint32_t>(rng.range(config.pattern_len_min, config.pattern_len_max));
    auto picks = rng.distinct(m, len);
    std::vector<ItemId> items(picks.begin(), picks.end());

    PlantedPattern pp;
    std::vector<Clause> clauses;
    clauses.reserve(items.size());
    for (ItemId i : items) clauses.push_back(Clause{{i}});
    pp.pattern = make_pattern(std::move(clauses), Label::Pos);

    const std::uint32_t k = draw_count(rng, config.occurrences, 0, n);
    std::uint32_t k_pos = static_cast<std::uint32_t>(std::lround(config.shift * k));
    std::uint32_t k_neg = static_cast<std::uint32_t>(std::lround((1.0 - config.shift) * k));
    k_pos = std::min(k_pos, n_pos);
    k_neg = std::min(k_neg, n_neg);
    pp.planted_pos = k_pos;
    pp.planted_neg = k_neg;

    for (std::uint64_t r : rng.distinct(n_pos, k_pos))
      for (ItemId i : items) rows[n_neg + r].insert(i);
    for (std::uint64_t r : rng.distinct(n_neg, k_neg))
      for (ItemId i : items) rows[r].insert(i);

    for (ItemId i : items)
      if (!in_pattern[i]) {
        in_pattern[i] = true;
        ++covered;
      }
    truth.patterns.push_back(std::move(pp));
  }

  // background occurrences
  for (ItemId i = 0; i < m; ++i) {
    const NormalDist& d = in_pattern[i] ? config.pattern_item_background : config.non_pattern_item;
    const std::uint32_t k = draw_count(rng, d, 0, n);
    for (std::uint64_t r : rng.distinct(n, k)) rows[r].insert(i);
  }

  // flip a fraction of all cells, sampled without replacement
  const std::uint64_t cells = static_cast<std::uint64_t>(n) * m;
  const std::uint64_t flips =
      static_cast<std::uint64_t>(std::llround(config.flip_rate * static_cast<double>(cells)));
  for (std::uint64_t cell : rng.distinct(cells, flips)) {
    const Tid t = static_cast<Tid>(cell / m);
    const ItemId i = static_cast<ItemId>(cell % m);
    if (!rows[t].erase(i)) rows[t].insert(i);
  }

  Vocabulary vocab;
  for (ItemId i = 0; i < m; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "i%04u", i);
    vocab.intern(buf);
  }
  std::vector<Transaction> txs(n);
  for (Tid t = 0; t < n; ++t) {
    txs[t].label = t < n_neg ? Label::Neg : Label::Pos;
    txs[t].items.assign(rows[t].begin(), rows[t].end());
  }
  GenResult out{LabeledDatabase::build(std::move(vocab), std::move(txs)), std::move(truth)};
  for (auto& pp : out.truth.patterns) {
    auto [sn, sp] = pattern_support(out.db, pp.pattern);
    pp.pattern.support_neg = sn;
    pp.pattern.support_pos = sp;
  }
  return out;
}

Axis axis_from_name(const std::string& name) {
  if (name == "items") return Axis::Items;
  if (name == "ratio") return Axis::Ratio;
  if (name == "shift") return Axis::Shift;
  if (name == "noise") return Axis::Noise;
  throw std::invalid_argument("unknown axis '" + name + "'");
}

std::string axis_name(Axis axis) {
  switch (axis) {
    case Axis::Items: return "items";
    case Axis::Ratio: return "ratio";
    case Axis::Shift: return "shift";
    case Axis::Noise: return "noise";
  }
  return "?";
}

BaseGenConfig axis_config(Axis axis, double value, const BaseGenConfig& base) {
  BaseGenConfig cfg = base;
  switch (axis) {
    case Axis::Items: {
      if (value < 100 || value > 10000 || value != std::floor(value))
        throw std::invalid_argument("items axis: value must be an integer in [100, 10000]");
      cfg.n_items = static_cast<std::uint32_t>(value);
      break;
    }
    case Axis::Ratio: {
      if (!(value > 0.0 && value <= 0.5))
        throw std::invalid_argument("ratio axis: value must lie in (0, 0.5]");
      cfg.frac_neg = value;
      break;
    }
    case Axis::Shift: {
      if (!(value >= 0.6 && value <= 1.0))
        throw std::invalid_argument("shift axis: value must lie in [0.6, 1]");
      cfg.shift = value;
      break;
    }
    case Axis::Noise: {
      if (!(value >= 0.0 && value <= 0.01))
        throw std::invalid_argument("noise axis: value must lie in [0, 0.01]");
      cfg.flip_rate = value;
      break;
    }
  }
  cfg.seed = derive_seed(base.seed, axis_name(axis), canonical_value(value));
  return cfg;
}

std::vector<GenResult> gen_axis_variants(Axis axis, const std::vector<double>& values,
                                         const BaseGenConfig& base) {
  std::vector<GenResult> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(gen_base(axis_config(axis, v, base)));
  return out;
}

HostCorpus gen_zipf_host(const ZipfHostConfig& config) {
  if (config.vocab_size == 0 || config.n_transactions == 0)
    throw std::invalid_argument("gen_zipf_host: counts must be positive");
  if (!(config.collocation_strength >= 0.0 && config.collocation_strength <= 1.0))
    throw std::invalid_argument("gen_zipf_host: collocation_strength must lie in [0, 1]");
  Rng rng(config.seed);
  HostCorpus host;
  for (std::uint32_t i = 0; i < config.vocab_size; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "w%05u", i);
    host.vocab.intern(buf);
  }
  // collocation partners: consecutive mid-frequency ranks paired up
  std::vector<ItemId> partner(config.vocab_size, ~ItemId{0});
  for (std::uint32_t p = 0; p < config.collocation_pairs; ++p) {
    const std::uint32_t a = config.collocation_first_rank + 2 * p;
    if (a + 1 >= config.vocab_size) break;
    partner[a] = a + 1;
    partner[a + 1] = a;
  }
  // cumulative Zipf weights over ranks 1..V
  std::vector<double> cum(config.vocab_size);
  double acc = 0;
  for (std::uint32_t r = 0; r < config.vocab_size; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), config.exponent);
    cum[r] = acc;
  }
  host.transactions.reserve(config.n_transactions);
  for (std::uint32_t t = 0; t < config.n_transactions; ++t) {
    const std::uint32_t len =
        draw_count(rng, NormalDist{config.len_mean, config.len_sd}, config.len_min, config.len_max);
    std::vector<ItemId> items;
    items.reserve(len + 4);
    for (std::uint32_t j = 0; j < len; ++j) {
      const double u = rng.unit() * acc;
      const auto it = std::lower_bound(cum.begin(), cum.end(), u);
      const ItemId tok = static_cast<ItemId>(it - cum.begin());
      items.push_back(tok);
      if (partner[tok] != ~ItemId{0} && rng.unit() < config.collocation_strength)
        items.push_back(partner[tok]);
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    host.transactions.push_back(std::move(items));
  }
  return host;
}

void PlantedGenConfig::validate() const {
  if (n_patterns == 0) throw std::invalid_argument("gen_planted: n_patterns must be positive");
  if (pattern_len_min < 1 || pattern_len_max < pattern_len_min)
    throw std::invalid_argument("gen_planted: bad pattern length range");
  if (!(shift_noise >= 0.0 && shift_noise <= 1.0))
    throw std::invalid_argument("gen_planted: shift_noise must lie in [0, 1]");
  if (!(label_noise >= 0.0 && label_noise <= 1.0))
    throw std::invalid_argument("gen_planted: label_noise must lie in [0, 1]");
}

namespace {

// item -> host tids, for the co-occurrence screens
std::vector<TidList> host_tid_index(const HostCorpus& host) {
  std::vector<TidList> idx(host.vocab.size());
  for (Tid t = 0; t < host.transactions.size(); ++t)
    for (ItemId i : host.transactions[t]) idx[i].push_back(t);
  return idx;
}

bool cooccur_in_host(const std::vector<TidList>& idx, const std::vector<ItemId>& items) {
  for (std::size_t a = 0; a < items.size(); ++a)
    for (std::size_t b = a + 1; b < items.size(); ++b)
      if (intersection_size(idx[items[a]], idx[items[b]]) > 0) return true;
  return false;
}

}  // namespace

GenResult gen_planted(const HostCorpus& host, const PlantedGenConfig& config) {
  config.validate();
  const std::size_t n = host.transactions.size();
  const std::size_t m = host.vocab.size();
  if (config.pattern_len_max > m)
    throw std::invalid_argument("gen_planted: pattern length exceeds vocabulary");
  if (static_cast<double>(n) < config.occurrences.mean)
    throw std::invalid_argument("gen_planted: host too small for requested occurrence counts");
  Rng rng(config.seed);
  const auto idx = host_tid_index(host);

  // draw distinct patterns; items must not co-occur in the host and are not
  // reused across patterns
  std::vector<bool> used(m, false);
  PlantedTruth truth;
  std::vector<std::vector<ItemId>> pattern_items;
  for (std::uint32_t p = 0; p < config.n_patterns; ++p) {
    std::vector<ItemId> items;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000)
        throw std::invalid_argument("gen_planted: cannot draw non-co-occurring pattern items");
      const std::uint32_t len =
          static_cast<std::uint32_t>(rng.range(config.pattern_len_min, config.pattern_len_max));
      auto picks = rng.distinct(m, len);
      items.assign(picks.begin(), picks.end());
      bool reused = false;
      for (ItemId i : items) reused |= used[i];
      if (reused || cooccur_in_host(idx, items)) continue;
      break;
    }
    for (ItemId i : items) used[i] = true;
    pattern_items.push_back(items);
    PlantedPattern pp;
    std::vector<Clause> clauses;
    for (ItemId i : items) clauses.push_back(Clause{{i}});
    pp.pattern = make_pattern(std::move(clauses), Label::Pos);
    truth.patterns.push_back(std::move(pp));
  }

  // plant
  std::vector<std::unordered_set<ItemId>> rows(n);
  for (Tid t = 0; t < n; ++t)
    rows[t].insert(host.transactions[t].begin(), host.transactions[t].end());
  std::vector<bool> carrier(n, false);
  std::vector<std::vector<Tid>> planted_at(config.n_patterns);
  for (std::uint32_t p = 0; p < config.n_patterns; ++p) {
    const std::uint32_t k = draw_count(rng, config.occurrences, 0, n);
    for (std::uint64_t t : rng.distinct(n, k)) {
      for (ItemId i : pattern_items[p]) rows[t].insert(i);
      carrier[t] = true;
      planted_at[p].push_back(static_cast<Tid>(t));
    }
  }

  // labels: carriers positive with probability shift_noise; an exact
  // label_noise fraction of the pattern-free instances positive
  std::vector<Label> labels(n, Label::Neg);
  for (Tid t = 0; t < n; ++t)
    if (carrier[t] && rng.unit() < config.shift_noise) labels[t] = Label::Pos;
  std::vector<Tid> free_tids;
  for (Tid t = 0; t < n; ++t)
    if (!carrier[t]) free_tids.push_back(t);
  const std::uint64_t flips =
      static_cast<std::uint64_t>(std::llround(config.label_noise * free_tids.size()));
  for (std::uint64_t r : rng.distinct(free_tids.size(), flips))
    labels[free_tids[r]] = Label::Pos;

  for (std::uint32_t p = 0; p < config.n_patterns; ++p) {
    for (Tid t : planted_at[p])
      (labels[t] == Label::Neg ? truth.patterns[p].planted_neg : truth.patterns[p].planted_pos)++;
  }

  Vocabulary vocab = host.vocab;
  std::vector<Transaction> txs(n);
  for (Tid t = 0; t < n; ++t) {
    txs[t].label = labels[t];
    txs[t].items.assign(rows[t].begin(), rows[t].end());
  }
  GenResult out{LabeledDatabase::build(std::move(vocab), std::move(txs)), std::move(truth)};
  for (auto& pp : out.truth.patterns) {
    auto [sn, sp] = pattern_support(out.db, pp.pattern);
    pp.pattern.support_neg = sn;
    pp.pattern.support_pos = sp;
  }
  return out;
}

void XorGenConfig::validate() const {
  if (n_patterns == 0) throw std::invalid_argument("gen_xor: n_patterns must be positive");
  if (clause_count_min < 1 || clause_count_max < clause_count_min)
    throw std::invalid_argument("gen_xor: bad clause count range");
  if (clause_len_min < 1 || clause_len_max < clause_len_min)
    throw std::invalid_argument("gen_xor: bad clause length range");
  if (embedding_dim == 0) throw std::invalid_argument("gen_xor: embedding_dim must be positive");
  if (!(shift_noise >= 0.0 && shift_noise <= 1.0))
    throw std::invalid_argument("gen_xor: shift_noise must lie in [0, 1]");
  if (!(label_noise >= 0.0 && label_noise <= 1.0))
    throw std::invalid_argument("gen_xor: label_noise must lie in [0, 1]");
}

XorGenResult gen_xor(const HostCorpus& host, const XorGenConfig& config) {
  config.validate();
  const std::size_t n = host.transactions.size();
  const std::size_t m = host.vocab.size();
  if (static_cast<double>(n) < config.occurrences.mean)
    throw std::invalid_argument("gen_xor: host too small for requested occurrence counts");
  Rng rng(config.seed);
  const auto idx = host_tid_index(host);

  // patterns: clause structures over fresh, host-independent item groups
  std::vector<bool> used(m, false);
  PlantedTruth truth;
  std::vector<std::vector<Clause>> pattern_clauses;
  for (std::uint32_t p = 0; p < config.n_patterns; ++p) {
    std::vector<Clause> clauses;
    std::vector<ItemId> flat;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000)
        throw std::invalid_argument("gen_xor: cannot draw non-co-occurring pattern items");
      clauses.clear();
      flat.clear();
      const std::uint32_t n_cl =
          static_cast<std::uint32_t>(rng.range(config.clause_count_min, config.clause_count_max));
      std::uint32_t total = 0;
      std::vector<std::uint32_t> lens(n_cl);
      for (auto& len : lens) {
        len = static_cast<std::uint32_t>(rng.range(config.clause_len_min, config.clause_len_max));
        total += len;
      }
      if (total > m) continue;
      auto picks = rng.distinct(m, total);
      flat.assign(picks.begin(), picks.end());
      bool reused = false;
      for (ItemId i : flat) reused |= used[i];
      if (reused || cooccur_in_host(idx, flat)) continue;
      std::size_t off = 0;
      for (std::uint32_t len : lens) {
        Clause cl;
        cl.items.assign(flat.begin() + off, flat.begin() + off + len);
        clauses.push_back(std::move(cl));
        off += len;
      }
      break;
    }
    for (ItemId i : flat) used[i] = true;
    pattern_clauses.push_back(clauses);
    PlantedPattern pp;
    pp.pattern = make_pattern(clauses, Label::Pos);
    truth.patterns.push_back(std::move(pp));
  }

  // plant: exactly one item per clause, only into instances free of the
  // pattern's items (planted or host-side), preserving exclusivity
  std::vector<std::unordered_set<ItemId>> rows(n);
  for (Tid t = 0; t < n; ++t)
    rows[t].insert(host.transactions[t].begin(), host.transactions[t].end());
  std::vector<bool> carrier(n, false);
  std::vector<std::vector<Tid>> planted_at(config.n_patterns);
  for (std::uint32_t p = 0; p < config.n_patterns; ++p) {
    const std::uint32_t k = draw_count(rng, config.occurrences, 0, n);
    std::vector<ItemId> flat;
    for (const auto& cl : pattern_clauses[p])
      flat.insert(flat.end(), cl.items.begin(), cl.items.end());
    std::sort(flat.begin(), flat.end());
    std::vector<Tid> eligible;
    for (Tid t = 0; t < n; ++t) {
      bool clean = true;
      for (ItemId i : flat)
        if (rows[t].count(i)) {
          clean = false;
          break;
        }
      if (clean) eligible.push_back(t);
    }
    const std::uint32_t kk = std::min<std::uint32_t>(k, static_cast<std::uint32_t>(eligible.size()));
    for (std::uint64_t r : rng.distinct(eligible.size(), kk)) {
      const Tid t = eligible[r];
      for (const auto& cl : pattern_clauses[p])
        rows[t].insert(cl.items[rng.below(cl.items.size())]);
      carrier[t] = true;
      planted_at[p].push_back(t);
    }
  }

  std::vector<Label> labels(n, Label::Neg);
  for (Tid t = 0; t < n; ++t)
    if (carrier[t] && rng.unit() < config.shift_noise) labels[t] = Label::Pos;
  std::vector<Tid> free_tids;
  for (Tid t = 0; t < n; ++t)
    if (!carrier[t]) free_tids.push_back(t);
  const std::uint64_t flips =
      static_cast<std::uint64_t>(std::llround(config.label_noise * free_tids.size()));
  for (std::uint64_t r : rng.distinct(free_tids.size(), flips))
    labels[free_tids[r]] = Label::Pos;

  for (std::uint32_t p = 0; p < config.n_patterns; ++p)
    for (Tid t : planted_at[p])
      (labels[t] == Label::Neg ? truth.patterns[p].planted_neg : truth.patterns[p].planted_pos)++;

  // synthetic embeddings: clause members cluster around a shared centroid
  EmbeddingTable emb(m, config.embedding_dim);
  std::vector<bool> has_vec(m, false);
  std::vector<float> vec(config.embedding_dim);
  for (std::uint32_t p = 0; p < config.n_patterns; ++p) {
    for (const auto& cl : pattern_clauses[p]) {
      std::vector<double> centroid(config.embedding_dim);
      for (auto& c : centroid) c = rng.normal(0.0, 1.0);
      for (ItemId i : cl.items) {
        for (std::uint32_t d = 0; d < config.embedding_dim; ++d)
          vec[d] = static_cast<float>(centroid[d] + rng.normal(0.0, 0.1));
        emb.set(i, vec);
        has_vec[i] = true;
      }
    }
  }
  for (ItemId i = 0; i < m; ++i) {
    if (has_vec[i]) continue;
    for (std::uint32_t d = 0; d < config.embedding_dim; ++d)
      vec[d] = static_cast<float>(rng.normal(0.0, 1.0));
    emb.set(i, vec);
  }

  Vocabulary vocab = host.vocab;
  std::vector<Transaction> txs(n);
  for (Tid t = 0; t < n; ++t) {
    txs[t].label = labels[t];
    txs[t].items.assign(rows[t].begin(), rows[t].end());
  }
  XorGenResult out{LabeledDatabase::build(std::move(vocab), std::move(txs)), std::move(truth),
                   std::move(emb)};
  for (auto& pp : out.truth.patterns) {
    auto [sn, sp] = pattern_support(out.db, pp.pattern);
    pp.pattern.support_neg = sn;
    pp.pattern.support_pos = sp;
  }
  return out;
}

}  // namespace premise
