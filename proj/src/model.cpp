#include "premise/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace premise {

Model Model::baseline(const LabeledDatabase& db) {
  Model m;
  m.db_ = &db;
  m.ctx_ = CostContext::make(db);
  const std::size_t n_items = db.n_items();
  m.item_to_patterns_.assign(n_items, {});
  m.residual_.resize(n_items);
  double bits = universal_int_code(1);  // empty pattern set, transmitted as |P|+1
  for (ItemId i = 0; i < n_items; ++i) {
    m.residual_[i] = static_cast<std::uint32_t>(db.support(i));
    bits += m.ctx_.pc_n + residual_singleton_cost(db, m.residual_[i]);
  }
  m.total_bits_ = bits;
  m.stamp_.assign(db.size(), 0);
  return m;
}

bool Model::contains_structure(const std::vector<std::uint32_t>& key) const {
  for (const auto& mp : patterns_)
    if (mp.pattern.structure_key() == key) return true;
  return false;
}

std::uint32_t Model::residual_with(ItemId item, const std::vector<std::uint32_t>& removed_slots,
                                   const TidList* added) const {
  if (epoch_ == ~std::uint32_t{0}) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 0;
  }
  ++epoch_;
  const std::uint32_t e = epoch_;
  bool any = false;
  for (std::uint32_t slot : item_to_patterns_[item]) {
    if (std::binary_search(removed_slots.begin(), removed_slots.end(), slot)) continue;
    any = true;
    for (Tid t : patterns_[slot].tids) stamp_[t] = e;
  }
  if (added) {
    any = true;
    for (Tid t : *added) stamp_[t] = e;
  }
  const TidList& occ = db_->tids(item, Part::All);
  if (!any) return static_cast<std::uint32_t>(occ.size());
  std::uint32_t covered = 0;
  for (Tid t : occ) covered += (stamp_[t] == e);
  return static_cast<std::uint32_t>(occ.size()) - covered;
}

void Model::apply_edit(const std::vector<std::uint32_t>& removed_slots, ModelPattern added,
                       const std::vector<std::pair<ItemId, std::uint32_t>>& new_residuals,
                       double delta_bits) {
  for (auto it = removed_slots.rbegin(); it != removed_slots.rend(); ++it) {
    if (*it >= patterns_.size()) throw std::logic_error("Model::apply_edit: bad slot");
    patterns_.erase(patterns_.begin() + *it);
  }
  added.uid = next_uid_++;
  patterns_.push_back(std::move(added));
  rebuild_item_index();
  for (auto [item, count] : new_residuals) residual_[item] = count;
  total_bits_ += delta_bits;
}

void Model::rebuild_item_index() {
  for (auto& v : item_to_patterns_) v.clear();
  for (std::uint32_t slot = 0; slot < patterns_.size(); ++slot)
    for (ItemId i : patterns_[slot].pattern.items_flat()) item_to_patterns_[i].push_back(slot);
}

CostBreakdown Model::recompute() const { return total_cost(*this); }

CostBreakdown total_cost(const Model& model) {
  const LabeledDatabase& db = model.db();
  const CostContext& ctx = model.ctx();
  CostBreakdown out;
  out.pattern_count_bits = universal_int_code(model.patterns().size() + 1);
  out.model_bits = out.pattern_count_bits + static_cast<double>(ctx.m) * ctx.pc_n;

  out.per_pattern_bits.reserve(model.patterns().size());
  for (const auto& mp : model.patterns()) {
    const double mb = pattern_model_bits(ctx, mp.pattern);
    const double dbits = pattern_data_cost(db, mp.pattern, mp.tids);
    out.model_bits += mb;
    out.data_bits += dbits;
    out.per_pattern_bits.push_back(mb + dbits);
  }

  out.per_singleton_bits.reserve(ctx.m);
  for (ItemId i = 0; i < ctx.m; ++i) {
    // residual from scratch: occurrences not covered by any containing pattern
    TidList covered;
    for (std::uint32_t slot : model.pattern_slots_of(i))
      covered = set_union(covered, model.patterns()[slot].tids);
    const TidList& occ = db.tids(i, Part::All);
    const std::uint32_t resid =
        static_cast<std::uint32_t>(occ.size() - intersection_size(occ, covered));
    const double rb = residual_singleton_cost(db, resid);
    out.data_bits += rb;
    out.per_singleton_bits.push_back(ctx.pc_n + rb);
  }
  return out;
}

}  // namespace premise
