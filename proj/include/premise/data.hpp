#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace premise {

using ItemId = std::uint32_t;
using Tid = std::uint32_t;
// Sorted, duplicate-free list of transaction ids.
using TidList = std::vector<Tid>;

enum class Label : std::uint8_t { Neg = 0, Pos = 1 };
enum class Part : std::uint8_t { All = 0, Neg = 1, Pos = 2 };

inline Part part_of(Label l) { return l == Label::Neg ? Part::Neg : Part::Pos; }

// Bijective token <-> dense id map. Insertion order of first appearance is
// the canonical item order used for clause encoding and tie-breaking.
class Vocabulary {
 public:
  ItemId intern(std::string_view token);
  std::optional<ItemId> find(std::string_view token) const;
  const std::string& token(ItemId id) const;
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, ItemId> index_;
};

struct Transaction {
  std::vector<ItemId> items;  // sorted, unique
  Label label = Label::Neg;
};

// Immutable binary transaction store partitioned by label, with per-item
// tid lists kept for every partition so label-conditioned counts need no
// re-partitioning.
class LabeledDatabase {
 public:
  static LabeledDatabase build(Vocabulary vocab, std::vector<Transaction> transactions);

  std::size_t size() const { return transactions_.size(); }
  std::size_t size(Part p) const;
  std::size_t n_items() const { return vocab_.size(); }

  Label label(Tid t) const { return transactions_[t].label; }
  const Transaction& transaction(Tid t) const { return transactions_[t]; }
  const std::vector<Transaction>& transactions() const { return transactions_; }

  const TidList& tids(ItemId item, Part p = Part::All) const;
  std::size_t support(ItemId item, Part p = Part::All) const { return tids(item, p).size(); }

  const Vocabulary& vocab() const { return vocab_; }

 private:
  Vocabulary vocab_;
  std::vector<Transaction> transactions_;
  std::size_t n_neg_ = 0, n_pos_ = 0;
  // indexed [part][item]
  std::vector<TidList> tids_all_, tids_neg_, tids_pos_;
};

// XOR clause: holds on a transaction iff exactly one of its items is present.
struct Clause {
  std::vector<ItemId> items;  // sorted, unique, non-empty

  bool operator==(const Clause&) const = default;
};

// Conjunction of pairwise item-disjoint XOR clauses.
struct Pattern {
  std::vector<Clause> clauses;  // non-empty; sorted by leading item
  Label label_side = Label::Pos;
  std::uint32_t support_neg = 0;
  std::uint32_t support_pos = 0;

  std::size_t clause_count() const { return clauses.size(); }
  std::size_t item_count() const;
  std::vector<ItemId> items_flat() const;  // sorted union of clause items

  // Flat encoding of the clause structure (clause sizes + items, clauses in
  // canonical order); equal keys == equal patterns.
  std::vector<std::uint32_t> structure_key() const;

  bool same_structure(const Pattern& other) const { return structure_key() == other.structure_key(); }
};

// Canonicalizes clause item order and clause order; throws std::invalid_argument
// if clauses are empty, contain duplicates, or share items.
Pattern make_pattern(std::vector<Clause> clauses, Label side = Label::Pos);

// Selection operator: the tids in the given partition where the condition
// holds. Clause: exactly one item present. Pattern: every clause holds.
TidList selection(const LabeledDatabase& db, const Clause& clause, Part part = Part::All);
TidList selection(const LabeledDatabase& db, const Pattern& pattern, Part part = Part::All);

std::pair<std::uint32_t, std::uint32_t> pattern_support(const LabeledDatabase& db, const Pattern& p);

// Per-item counts |sigma_I(sigma_P(part))| for items of `clause`, in clause
// order; the counts sum to the pattern support in that partition. The clause
// must be one of the pattern's clauses.
std::vector<std::uint32_t> clause_item_counts(const LabeledDatabase& db, const Pattern& p,
                                              const Clause& clause, Part part);

// Set helpers on sorted tid lists.
std::size_t intersection_size(const TidList& a, const TidList& b);
TidList intersect(const TidList& a, const TidList& b);
TidList set_union(const TidList& a, const TidList& b);

}  // namespace premise
