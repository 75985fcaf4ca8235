#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "premise/data.hpp"
#include "premise/embeddings.hpp"
#include "premise/model.hpp"

namespace premise {

enum class Provenance : std::uint8_t {
  // generation (and dedup) priority: candidates that remove parents first
  PatternMerge = 0,
  PatternPlusItem = 1,
  Pair = 2,
  Singleton = 3,
};

constexpr std::uint32_t kNoParent = ~std::uint32_t{0};

struct Candidate {
  Pattern pattern;  // label side + supports filled
  Provenance provenance = Provenance::Singleton;
  std::uint32_t parent_a = kNoParent;  // model slots at generation time
  std::uint32_t parent_b = kNoParent;
  double p_value = 1.0;
  bool side_tie = false;
  double gain_bits = 0.0;  // filled by the search
  TidList tids;            // sigma_P(D); filled before gain evaluation
};

struct SearchConfig {
  double alpha = 0.01;           // Fisher significance level
  double min_overlap = 0.3;      // item-pair overlap floor
  int max_neighbors = 5;         // K
  double xor_overlap_max = 0.05; // a: clause co-occurrence ceiling
  bool fisher_filter = true;     // off = significance test disabled (ablation)
  bool trace = false;

  void validate() const;
};

// True iff |T_i1 ∩ T_i2| / min(|T_i1|, |T_i2|) >= min_overlap; items without
// occurrences never pass.
bool overlap_filter(const LabeledDatabase& db, ItemId i1, ItemId i2, double min_overlap);

// XOR clause admission: the clause items' selections must barely overlap
// (intersection/union < config.xor_overlap_max) and the query item's
// similarity to its rank-k neighbor must clear b_k for every rank used.
// Items without embeddings reject the clause.
bool filter_xor_clause(const LabeledDatabase& db, const Clause& clause, ItemId query,
                       const EmbeddingTable& emb, const NeighborTable& nbt,
                       const SearchConfig& config);

// Per-run enumeration engine; memoizes pair co-occurrences and per-structure
// supports/p-values across rounds (selections never change, only gains do).
class CandidateEngine {
 public:
  CandidateEngine(const LabeledDatabase& db, const SearchConfig& config,
                  const EmbeddingTable* emb, const NeighborTable* nbt);

  // Streams every candidate for the current model in deterministic
  // generation order (merges, extensions, pairs, singletons), deduplicated
  // by clause structure (first provenance wins) and excluding structures
  // already in the model. Supports, label side and p-value are filled;
  // tids are not.
  void for_each(const Model& model, const std::function<void(Candidate&)>& fn);

  // Drop candidates with p >= cut before construction. Identical structures
  // share supports and therefore p, so the cut commutes with deduplication;
  // the search uses it to skip candidates its significance filter would
  // reject anyway.
  void set_significance_cut(double cut) { p_cut_ = cut; }

  const std::vector<std::pair<ItemId, ItemId>>& overlap_pairs() const { return pairs_; }

 private:
  struct Stats {
    std::uint32_t support_neg = 0, support_pos = 0;
    double p = 1.0;
    Label side = Label::Pos;
    bool tie = false;
  };

  // XOR clause variant of one item: the item plus its first k neighbors.
  // Index 0 is always the bare item; further entries are the prefixes that
  // pass the similarity floors and the mutual-exclusivity filter.
  struct Variant {
    Clause clause;
    TidList tids;  // exactly-one selection over D
    Stats stats;
  };

  const LabeledDatabase& db_;
  SearchConfig cfg_;
  const EmbeddingTable* emb_;
  const NeighborTable* nbt_;

  std::vector<std::pair<ItemId, ItemId>> pairs_;  // overlap-passing, i < j
  std::vector<std::vector<Variant>> variants_;    // per item
  double p_cut_ = 2.0;                            // > 1 keeps everything

  std::unordered_map<std::uint64_t, Stats> pair_stats_;   // (i, vi, j, vj)
  std::unordered_map<std::uint64_t, Stats> ext_stats_;    // (pattern uid, item, vi)
  std::unordered_map<std::uint64_t, Stats> merge_stats_;  // (uid_a, uid_b)
  // per pattern uid: supports of sigma_P(D) ∩ T_I for every item, built by
  // one scan over the pattern's transactions
  std::unordered_map<std::uint64_t, std::vector<Stats>> ext_base_cache_;

  void build_pairs();
  void build_xor_variants();
  Stats stats_from_supports(std::uint32_t supp_neg, std::uint32_t supp_pos) const;
  Stats intersection_stats(const TidList& a, const TidList& b);
  const std::vector<Stats>& ext_base_stats(const ModelPattern& mp);
};

// One-shot form of the enumeration, sorted for emission by provenance class
// (singletons, pairs, extensions, merges) then canonical clause structure.
std::vector<Candidate> create_candidates(const Model& model, const LabeledDatabase& db,
                                         const SearchConfig& config,
                                         const EmbeddingTable* emb = nullptr,
                                         const NeighborTable* nbt = nullptr);

}  // namespace premise
