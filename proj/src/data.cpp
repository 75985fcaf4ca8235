#include "premise/data.hpp"

#include <algorithm>
#include <stdexcept>

namespace premise {

ItemId Vocabulary::intern(std::string_view token) {
  auto it = index_.find(std::string(token));
  if (it != index_.end()) return it->second;
  ItemId id = static_cast<ItemId>(items_.size());
  items_.emplace_back(token);
  index_.emplace(items_.back(), id);
  return id;
}

std::optional<ItemId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::token(ItemId id) const {
  if (id >= items_.size()) throw std::out_of_range("Vocabulary::token: unknown item id");
  return items_[id];
}

LabeledDatabase LabeledDatabase::build(Vocabulary vocab, std::vector<Transaction> transactions) {
  LabeledDatabase db;
  db.vocab_ = std::move(vocab);
  db.transactions_ = std::move(transactions);

  const std::size_t m = db.vocab_.size();
  db.tids_all_.assign(m, {});
  db.tids_neg_.assign(m, {});
  db.tids_pos_.assign(m, {});

  for (Tid t = 0; t < db.transactions_.size(); ++t) {
    auto& tx = db.transactions_[t];
    std::sort(tx.items.begin(), tx.items.end());
    tx.items.erase(std::unique(tx.items.begin(), tx.items.end()), tx.items.end());
    if (!tx.items.empty() && tx.items.back() >= m)
      throw std::out_of_range("LabeledDatabase::build: item id outside vocabulary");
    if (tx.label == Label::Neg)
      ++db.n_neg_;
    else
      ++db.n_pos_;
    for (ItemId i : tx.items) {
      db.tids_all_[i].push_back(t);
      (tx.label == Label::Neg ? db.tids_neg_ : db.tids_pos_)[i].push_back(t);
    }
  }
  return db;
}

std::size_t LabeledDatabase::size(Part p) const {
  switch (p) {
    case Part::All: return transactions_.size();
    case Part::Neg: return n_neg_;
    case Part::Pos: return n_pos_;
  }
  return 0;
}

const TidList& LabeledDatabase::tids(ItemId item, Part p) const {
  if (item >= vocab_.size()) throw std::out_of_range("LabeledDatabase::tids: unknown item id");
  switch (p) {
    case Part::All: return tids_all_[item];
    case Part::Neg: return tids_neg_[item];
    case Part::Pos: return tids_pos_[item];
  }
  return tids_all_[item];
}

std::size_t Pattern::item_count() const {
  std::size_t n = 0;
  for (const auto& cl : clauses) n += cl.items.size();
  return n;
}

std::vector<ItemId> Pattern::items_flat() const {
  std::vector<ItemId> out;
  out.reserve(item_count());
  for (const auto& cl : clauses) out.insert(out.end(), cl.items.begin(), cl.items.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> Pattern::structure_key() const {
  std::vector<std::uint32_t> key;
  key.reserve(1 + clauses.size() + item_count());
  key.push_back(static_cast<std::uint32_t>(clauses.size()));
  for (const auto& cl : clauses) {
    key.push_back(static_cast<std::uint32_t>(cl.items.size()));
    key.insert(key.end(), cl.items.begin(), cl.items.end());
  }
  return key;
}

Pattern make_pattern(std::vector<Clause> clauses, Label side) {
  if (clauses.empty()) throw std::invalid_argument("make_pattern: pattern needs at least one clause");
  for (auto& cl : clauses) {
    if (cl.items.empty()) throw std::invalid_argument("make_pattern: empty clause");
    std::sort(cl.items.begin(), cl.items.end());
    if (std::adjacent_find(cl.items.begin(), cl.items.end()) != cl.items.end())
      throw std::invalid_argument("make_pattern: duplicate item in clause");
  }
  std::sort(clauses.begin(), clauses.end(),
            [](const Clause& a, const Clause& b) { return a.items.front() < b.items.front(); });
  std::vector<ItemId> all;
  for (const auto& cl : clauses) all.insert(all.end(), cl.items.begin(), cl.items.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("make_pattern: clauses share an item");
  Pattern p;
  p.clauses = std::move(clauses);
  p.label_side = side;
  return p;
}

namespace {

// Tids of the partition where exactly one clause item is present: k-way merge
// over the per-item tid lists keeping tids seen exactly once.
TidList exactly_one(const LabeledDatabase& db, const Clause& clause, Part part) {
  if (clause.items.size() == 1) return db.tids(clause.items[0], part);
  TidList pool;
  std::size_t total = 0;
  for (ItemId i : clause.items) total += db.tids(i, part).size();
  pool.reserve(total);
  for (ItemId i : clause.items) {
    const auto& t = db.tids(i, part);
    pool.insert(pool.end(), t.begin(), t.end());
  }
  std::sort(pool.begin(), pool.end());
  TidList out;
  out.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size();) {
    std::size_t j = i;
    while (j < pool.size() && pool[j] == pool[i]) ++j;
    if (j - i == 1) out.push_back(pool[i]);
    i = j;
  }
  return out;
}

}  // namespace

TidList selection(const LabeledDatabase& db, const Clause& clause, Part part) {
  if (clause.items.empty()) throw std::invalid_argument("selection: empty clause");
  return exactly_one(db, clause, part);
}

TidList selection(const LabeledDatabase& db, const Pattern& pattern, Part part) {
  if (pattern.clauses.empty()) throw std::invalid_argument("selection: empty pattern");
  TidList acc = exactly_one(db, pattern.clauses[0], part);
  for (std::size_t c = 1; c < pattern.clauses.size() && !acc.empty(); ++c)
    acc = intersect(acc, exactly_one(db, pattern.clauses[c], part));
  return acc;
}

std::pair<std::uint32_t, std::uint32_t> pattern_support(const LabeledDatabase& db, const Pattern& p) {
  TidList sel = selection(db, p, Part::All);
  std::uint32_t neg = 0;
  for (Tid t : sel)
    if (db.label(t) == Label::Neg) ++neg;
  return {neg, static_cast<std::uint32_t>(sel.size()) - neg};
}

std::vector<std::uint32_t> clause_item_counts(const LabeledDatabase& db, const Pattern& p,
                                              const Clause& clause, Part part) {
  bool member = false;
  for (const auto& cl : p.clauses) member |= (cl == clause);
  if (!member) throw std::logic_error("clause_item_counts: clause not part of pattern");
  TidList sel = selection(db, p, part);
  std::vector<std::uint32_t> counts;
  counts.reserve(clause.items.size());
  for (ItemId i : clause.items)
    counts.push_back(static_cast<std::uint32_t>(intersection_size(sel, db.tids(i, part))));
  return counts;
}

std::size_t intersection_size(const TidList& a, const TidList& b) {
  std::size_t n = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

TidList intersect(const TidList& a, const TidList& b) {
  TidList out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

TidList set_union(const TidList& a, const TidList& b) {
  TidList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace premise
