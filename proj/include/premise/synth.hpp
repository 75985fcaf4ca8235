#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "premise/data.hpp"
#include "premise/embeddings.hpp"
#include "premise/io.hpp"

namespace premise {

struct NormalDist {
  double mean = 0, sd = 1;
};

// Matrix generator: patterns of length 2..5 drawn until half the items are
// pattern members, each planted in round(shift*k) positive and
// round((1-shift)*k) negative transactions with k ~ N(150,20); pattern items
// get N(50,20) extra background occurrences, other items N(150,20); finally
// a fraction of all cells is flipped.
struct BaseGenConfig {
  std::uint32_t n_transactions = 10000;
  double frac_neg = 0.5;
  std::uint32_t n_items = 1000;
  std::uint32_t pattern_len_min = 2, pattern_len_max = 5;
  double coverage_target = 0.5;
  NormalDist occurrences{150, 20};
  double shift = 0.9;
  NormalDist pattern_item_background{50, 20};
  NormalDist non_pattern_item{150, 20};
  double flip_rate = 0.001;
  std::uint64_t seed = 1;

  void validate() const;
};

struct PlantedPattern {
  Pattern pattern;  // side l+
  std::uint32_t planted_neg = 0, planted_pos = 0;  // pre-noise supports
};

struct PlantedTruth {
  std::vector<PlantedPattern> patterns;

  std::vector<TokenPattern> to_tokens(const Vocabulary& vocab) const;
};

struct GenResult {
  LabeledDatabase db;
  PlantedTruth truth;
};

GenResult gen_base(const BaseGenConfig& config);

enum class Axis { Items, Ratio, Shift, Noise };

Axis axis_from_name(const std::string& name);
std::string axis_name(Axis axis);

// One dataset per value; every other parameter comes from `base` and each
// dataset's seed derives deterministically from (base.seed, axis, value).
std::vector<GenResult> gen_axis_variants(Axis axis, const std::vector<double>& values,
                                         const BaseGenConfig& base);
BaseGenConfig axis_config(Axis axis, double value, const BaseGenConfig& base);

// Synthetic host corpus with Zipf-distributed token frequencies, standing in
// for a natural-language corpus. A slice of the mid-frequency vocabulary is
// organized into collocation pairs (multiword-expression stand-ins): when
// one member is drawn, its partner follows with the given probability. Such
// near-duplicate occurrence sets compress well without any label
// association, which is what the significance filter exists to reject.
struct ZipfHostConfig {
  std::uint32_t n_transactions = 3400;
  std::uint32_t vocab_size = 2000;
  double exponent = 1.05;
  double len_mean = 21, len_sd = 8;
  std::uint32_t len_min = 3, len_max = 60;
  std::uint32_t collocation_pairs = 100;
  std::uint32_t collocation_first_rank = 50;
  double collocation_strength = 0.85;
  std::uint64_t seed = 1;
};

HostCorpus gen_zipf_host(const ZipfHostConfig& config);

// Pattern injector over a host corpus: patterns whose items never co-occur
// in the host are planted into ~N(150,20) instances each; carriers are
// labeled positive with probability shift_noise, and a label_noise fraction
// of the pattern-free instances is labeled positive as well.
struct PlantedGenConfig {
  std::uint32_t n_patterns = 12;
  std::uint32_t pattern_len_min = 1, pattern_len_max = 5;
  NormalDist occurrences{150, 20};
  double shift_noise = 1.0;
  double label_noise = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
};

GenResult gen_planted(const HostCorpus& host, const PlantedGenConfig& config);

// XOR variant of the injector: patterns are conjunctions of mutually
// exclusive clauses; planting sets exactly one item per clause and skips
// instances that would break the exclusivity of any planted pattern.
// Synthetic embeddings put clause items around a shared centroid and give
// every other item a random vector.
struct XorGenConfig {
  std::uint32_t n_patterns = 12;
  std::uint32_t clause_count_min = 1, clause_count_max = 5;
  std::uint32_t clause_len_min = 1, clause_len_max = 5;
  std::uint32_t embedding_dim = 32;
  NormalDist occurrences{150, 20};
  double shift_noise = 1.0;
  double label_noise = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct XorGenResult {
  LabeledDatabase db;
  PlantedTruth truth;
  EmbeddingTable embeddings;
};

XorGenResult gen_xor(const HostCorpus& host, const XorGenConfig& config);

}  // namespace premise
