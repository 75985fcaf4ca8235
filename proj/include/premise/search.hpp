#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "premise/candidates.hpp"
#include "premise/model.hpp"

namespace premise {

struct TraceRound {
  Pattern pattern;
  Provenance provenance;
  double gain_bits = 0;
  double p_value = 1;
  double total_bits_after = 0;
};

struct SearchTrace {
  double baseline_bits = 0;
  std::vector<TraceRound> rounds;
  std::string terminated_reason = "no_improving_candidate";
};

// Exact codelength delta of applying the candidate: the candidate is added
// and, for merges/extensions, its parent patterns are removed. Negative
// means improvement. Touches only the affected cost terms. The candidate's
// tids must be filled.
double gain(const Model& model, const Candidate& candidate);

// Applies the candidate to the model (incremental residual and cache
// update); returns the applied delta. Parents must be live model slots.
double apply_candidate(Model& model, const Candidate& candidate, double p_value = 1.0,
                       std::uint32_t round = 0);

struct SearchResult {
  Model model;
  SearchTrace trace;
};

using TraceSink = std::function<void(const TraceRound&, std::size_t round_index)>;

// The greedy loop: starting from the all-singleton baseline, repeatedly add
// the candidate with the best strictly negative gain among those passing the
// significance filter, removing merge parents, until no candidate improves
// the total codelength. Deterministic for fixed inputs.
SearchResult premise_search(const LabeledDatabase& db, const SearchConfig& config,
                            const EmbeddingTable* emb = nullptr,
                            const NeighborTable* nbt = nullptr, TraceSink sink = nullptr);

}  // namespace premise
