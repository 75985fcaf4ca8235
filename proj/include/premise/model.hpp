#pragma once

#include <cstdint>
#include <vector>

#include "premise/codelen.hpp"
#include "premise/data.hpp"

namespace premise {

// A pattern as stored in the model, with its cached selection and cost shares.
struct ModelPattern {
  Pattern pattern;
  TidList tids;            // sigma_P(D), global tids
  double data_bits = 0;    // label-conditioned occurrence cost
  double model_bits = 0;   // model-side cost share
  double gain_at_accept = 0;
  double p_at_accept = 1.0;
  std::uint32_t round = 0;     // acceptance round, 1-based
  std::uint64_t uid = 0;       // stable id for memoization keys
};

// Pattern set plus residual-singleton bookkeeping and the cached total
// codelength. Always encodes losslessly: for every item the residual count
// is |sigma_I(D) \ union of sigma_P(D) over patterns containing I|.
class Model {
 public:
  static Model baseline(const LabeledDatabase& db);

  const LabeledDatabase& db() const { return *db_; }
  const CostContext& ctx() const { return ctx_; }
  const std::vector<ModelPattern>& patterns() const { return patterns_; }
  const std::vector<std::uint32_t>& pattern_slots_of(ItemId item) const {
    return item_to_patterns_[item];
  }
  std::uint32_t residual_count(ItemId item) const { return residual_[item]; }
  double total_bits() const { return total_bits_; }
  std::uint64_t next_uid() const { return next_uid_; }

  bool contains_structure(const std::vector<std::uint32_t>& key) const;

  // Residual count of `item` for a hypothetical edit: the patterns in
  // `removed_slots` (sorted) are dropped and a pattern with selection
  // `added` (nullptr for none) containing the item is introduced.
  std::uint32_t residual_with(ItemId item, const std::vector<std::uint32_t>& removed_slots,
                              const TidList* added) const;

  // Applies an edit: removes `removed_slots`, appends `added`, overwrites the
  // residual counts listed in `new_residuals`, and shifts the cached total by
  // `delta_bits`. Used by the search; keeps all invariants.
  void apply_edit(const std::vector<std::uint32_t>& removed_slots, ModelPattern added,
                  const std::vector<std::pair<ItemId, std::uint32_t>>& new_residuals,
                  double delta_bits);

  // From-scratch recomputation of every cost term and residual; the cache
  // must agree within 1e-6 bits. Used by tests and the --trace audit.
  CostBreakdown recompute() const;

 private:
  const LabeledDatabase* db_ = nullptr;
  CostContext ctx_;
  std::vector<ModelPattern> patterns_;
  std::vector<std::vector<std::uint32_t>> item_to_patterns_;
  std::vector<std::uint32_t> residual_;
  double total_bits_ = 0;
  std::uint64_t next_uid_ = 1;

  void rebuild_item_index();
  mutable std::vector<std::uint32_t> stamp_;  // scratch for residual unions
  mutable std::uint32_t epoch_ = 0;
};

// Full cost of a model, recomputed from scratch (model bits + data bits,
// itemized). Equals Model::recompute() for the model's own database.
CostBreakdown total_cost(const Model& model);

}  // namespace premise
