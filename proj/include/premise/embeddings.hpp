#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "premise/data.hpp"

namespace premise {

// Dense word vectors for a subset of the vocabulary. Tokens without a
// vector (or with an all-zero vector) are uncovered and never take part in
// XOR candidate generation.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t n_items, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t coverage() const { return covered_; }
  std::size_t item_range() const { return row_.size(); }
  bool covered(ItemId item) const { return item < row_.size() && row_[item] >= 0; }
  std::span<const float> vec(ItemId item) const;
  void set(ItemId item, std::span<const float> v);

 private:
  std::size_t dim_ = 0;
  std::size_t covered_ = 0;
  std::vector<std::int32_t> row_;
  std::vector<float> storage_;
};

struct VectorLoadResult {
  EmbeddingTable table;
  std::vector<std::string> warnings;
};

// Text vector format: optional single "count dim" header, then one line per
// token: "token v1 ... v_d". Only tokens present in the vocabulary are kept;
// repeated tokens keep the first occurrence (with a warning). Dimension
// mismatches raise a format error carrying the line number.
VectorLoadResult load_vectors(std::istream& in, const Vocabulary& vocab);
VectorLoadResult load_vectors_file(const std::string& path, const Vocabulary& vocab);

void write_vectors(std::ostream& out, const EmbeddingTable& table, const Vocabulary& vocab);
void write_vectors_file(const std::string& path, const EmbeddingTable& table,
                        const Vocabulary& vocab);

// Cosine similarity; throws std::domain_error for zero vectors or
// mismatched dimensions.
double cosine(std::span<const float> u, std::span<const float> v);

// Up to K nearest neighbors per covered item (descending similarity, ties by
// canonical item order) plus the per-rank similarity floors b_k, the 3rd
// quartile (nearest-rank) of the rank-k similarity distribution.
struct NeighborTable {
  int max_neighbors = 0;
  std::vector<std::vector<std::pair<ItemId, double>>> neighbors;
  std::vector<double> rank_threshold;  // index k-1 holds b_k

  bool has(ItemId item) const { return item < neighbors.size() && !neighbors[item].empty(); }
};

NeighborTable build_neighbor_table(const EmbeddingTable& table, int max_neighbors);

}  // namespace premise
