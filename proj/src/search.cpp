#include "premise/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace premise {

namespace {

struct EditPlan {
  std::vector<std::uint32_t> removed_slots;  // sorted
  std::vector<std::pair<ItemId, std::uint32_t>> new_residuals;
  double pattern_data_bits = 0;
  double pattern_model_bits_v = 0;
  double delta = 0;
};

EditPlan plan_edit(const Model& model, const Candidate& cand) {
  EditPlan plan;
  if (cand.parent_a != kNoParent) plan.removed_slots.push_back(cand.parent_a);
  if (cand.parent_b != kNoParent) plan.removed_slots.push_back(cand.parent_b);
  std::sort(plan.removed_slots.begin(), plan.removed_slots.end());
  for (std::uint32_t slot : plan.removed_slots)
    if (slot >= model.patterns().size())
      throw std::logic_error("candidate parent is not a live model pattern");

  const LabeledDatabase& db = model.db();
  const CostContext& ctx = model.ctx();

  // model-side delta
  const std::size_t np_before = model.patterns().size();
  const std::size_t np_after = np_before - plan.removed_slots.size() + 1;
  double delta = universal_int_code(np_after + 1) - universal_int_code(np_before + 1);
  plan.pattern_model_bits_v = pattern_model_bits(ctx, cand.pattern);
  delta += plan.pattern_model_bits_v;
  for (std::uint32_t slot : plan.removed_slots) delta -= model.patterns()[slot].model_bits;

  // data cost of the pattern itself
  plan.pattern_data_bits = pattern_data_cost(db, cand.pattern, cand.tids);
  delta += plan.pattern_data_bits;
  for (std::uint32_t slot : plan.removed_slots) delta -= model.patterns()[slot].data_bits;

  // residual terms of every item touched by the candidate or its parents
  std::vector<ItemId> affected = cand.pattern.items_flat();
  for (std::uint32_t slot : plan.removed_slots) {
    auto items = model.patterns()[slot].pattern.items_flat();
    affected.insert(affected.end(), items.begin(), items.end());
  }
  std::sort(affected.begin(), affected.end());
  affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

  const auto cand_items = cand.pattern.items_flat();
  for (ItemId item : affected) {
    const bool in_cand = std::binary_search(cand_items.begin(), cand_items.end(), item);
    const std::uint32_t before = model.residual_count(item);
    const std::uint32_t after =
        model.residual_with(item, plan.removed_slots, in_cand ? &cand.tids : nullptr);
    plan.new_residuals.emplace_back(item, after);
    delta += residual_singleton_cost(db, after) - residual_singleton_cost(db, before);
  }
  plan.delta = delta;
  return plan;
}

}  // namespace

double gain(const Model& model, const Candidate& candidate) {
  if (candidate.tids.empty() && candidate.pattern.support_neg + candidate.pattern.support_pos > 0)
    throw std::logic_error("gain: candidate tids not filled");
  return plan_edit(model, candidate).delta;
}

double apply_candidate(Model& model, const Candidate& candidate, double p_value,
                       std::uint32_t round) {
  EditPlan plan = plan_edit(model, candidate);
  ModelPattern mp;
  mp.pattern = candidate.pattern;
  mp.tids = candidate.tids;
  mp.data_bits = plan.pattern_data_bits;
  mp.model_bits = plan.pattern_model_bits_v;
  mp.gain_at_accept = plan.delta;
  mp.p_at_accept = p_value;
  mp.round = round;
  model.apply_edit(plan.removed_slots, std::move(mp), plan.new_residuals, plan.delta);
  return plan.delta;
}

SearchResult premise_search(const LabeledDatabase& db, const SearchConfig& config,
                            const EmbeddingTable* emb, const NeighborTable* nbt, TraceSink sink) {
  config.validate();
  if (db.n_items() == 0) throw std::domain_error("premise_search: empty vocabulary");
  if (db.size(Part::Neg) == 0 || db.size(Part::Pos) == 0)
    throw std::domain_error("premise_search: both label partitions must be non-empty");

  CandidateEngine engine(db, config, emb, nbt);
  if (config.fisher_filter) engine.set_significance_cut(config.alpha);
  SearchResult res{Model::baseline(db), {}};
  res.trace.baseline_bits = res.model.total_bits();

  std::uint32_t round = 0;
  while (true) {
    ++round;
    std::optional<Candidate> best;
    double best_gain = 0.0;  // only strictly negative gains are eligible
    std::vector<std::uint32_t> best_key;

    engine.for_each(res.model, [&](Candidate& cand) {
      if (config.fisher_filter && !(cand.p_value < config.alpha)) return;
      if (cand.tids.empty() && cand.pattern.support_neg + cand.pattern.support_pos > 0)
        cand.tids = selection(db, cand.pattern, Part::All);
      cand.gain_bits = gain(res.model, cand);
      if (!(cand.gain_bits < best_gain) &&
          !(best && cand.gain_bits == best_gain))
        return;
      // deterministic reduction: gain, then fewer items, then structure
      if (best && cand.gain_bits == best_gain) {
        const auto key = cand.pattern.structure_key();
        const std::size_t items_new = cand.pattern.item_count();
        const std::size_t items_old = best->pattern.item_count();
        if (items_new > items_old) return;
        if (items_new == items_old && !(key < best_key)) return;
        best_key = key;
        best = std::move(cand);
        return;
      }
      best_gain = cand.gain_bits;
      best_key = cand.pattern.structure_key();
      best = std::move(cand);
    });

    if (!best) break;
    apply_candidate(res.model, *best, best->p_value, round);
    TraceRound tr;
    tr.pattern = best->pattern;
    tr.provenance = best->provenance;
    tr.gain_bits = best->gain_bits;
    tr.p_value = best->p_value;
    tr.total_bits_after = res.model.total_bits();
    if (sink) sink(tr, res.trace.rounds.size() + 1);
    res.trace.rounds.push_back(std::move(tr));
  }
  res.trace.terminated_reason = "no_improving_candidate";
  return res;
}

}  // namespace premise
