#include "premise/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "premise/io.hpp"

namespace premise {

EmbeddingTable::EmbeddingTable(std::size_t n_items, std::size_t dim) : dim_(dim) {
  row_.assign(n_items, -1);
}

std::span<const float> EmbeddingTable::vec(ItemId item) const {
  if (!covered(item)) throw std::out_of_range("EmbeddingTable::vec: item not covered");
  return {storage_.data() + static_cast<std::size_t>(row_[item]) * dim_, dim_};
}

void EmbeddingTable::set(ItemId item, std::span<const float> v) {
  if (v.size() != dim_) throw std::invalid_argument("EmbeddingTable::set: wrong dimension");
  if (item >= row_.size()) row_.resize(item + 1, -1);
  if (row_[item] >= 0) {
    std::copy(v.begin(), v.end(), storage_.begin() + static_cast<std::size_t>(row_[item]) * dim_);
    return;
  }
  row_[item] = static_cast<std::int32_t>(covered_);
  ++covered_;
  storage_.insert(storage_.end(), v.begin(), v.end());
}

VectorLoadResult load_vectors(std::istream& in, const Vocabulary& vocab) {
  VectorLoadResult out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  bool first_content = true;
  std::vector<float> buf;
  std::vector<bool> seen(vocab.size(), false);

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string token;
    ls >> token;
    if (token.empty()) continue;

    if (first_content) {
      // a "count dim" header has exactly two numeric fields
      std::uint64_t cnt, d;
      std::istringstream probe(line);
      if (probe >> cnt >> d && (probe >> std::ws).eof()) {
        dim = d;
        out.table = EmbeddingTable(vocab.size(), dim);
        first_content = false;
        continue;
      }
      first_content = false;
    }

    buf.clear();
    double v;
    while (ls >> v) buf.push_back(static_cast<float>(v));
    if (!ls.eof())
      throw FormatError(line_no, "vector file: non-numeric component");
    if (dim == 0) {
      if (buf.empty()) throw FormatError(line_no, "vector file: line without components");
      dim = buf.size();
      out.table = EmbeddingTable(vocab.size(), dim);
    }
    if (buf.size() != dim)
      throw FormatError(line_no, "vector file: expected " + std::to_string(dim) +
                                     " components, got " + std::to_string(buf.size()));

    auto id = vocab.find(token);
    if (!id) continue;
    if (seen[*id]) {
      out.warnings.push_back("duplicate vector for token '" + token + "' at line " +
                             std::to_string(line_no) + "; first occurrence kept");
      continue;
    }
    bool all_zero = true;
    for (float f : buf) all_zero &= (f == 0.0f);
    if (all_zero) {
      out.warnings.push_back("zero vector for token '" + token + "' at line " +
                             std::to_string(line_no) + "; token left uncovered");
      seen[*id] = true;
      continue;
    }
    seen[*id] = true;
    out.table.set(*id, buf);
  }
  if (out.table.dim() == 0) out.table = EmbeddingTable(vocab.size(), 0);
  if (out.table.coverage() == 0)
    out.warnings.push_back("vector file covers no vocabulary token");
  return out;
}

VectorLoadResult load_vectors_file(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return load_vectors(in, vocab);
}

void write_vectors(std::ostream& out, const EmbeddingTable& table, const Vocabulary& vocab) {
  std::size_t count = 0;
  for (ItemId i = 0; i < vocab.size(); ++i) count += table.covered(i);
  out << count << ' ' << table.dim() << '\n';
  for (ItemId i = 0; i < vocab.size(); ++i) {
    if (!table.covered(i)) continue;
    out << vocab.token(i);
    for (float f : table.vec(i)) out << ' ' << format_double(f);
    out << '\n';
  }
}

void write_vectors_file(const std::string& path, const EmbeddingTable& table,
                        const Vocabulary& vocab) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_vectors(out, table, vocab);
}

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) throw std::domain_error("cosine: dimension mismatch");
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * v[i];
    nu += static_cast<double>(u[i]) * u[i];
    nv += static_cast<double>(v[i]) * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw std::domain_error("cosine: zero vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

NeighborTable build_neighbor_table(const EmbeddingTable& table, int max_neighbors) {
  if (max_neighbors < 1)
    throw std::invalid_argument("build_neighbor_table: max_neighbors must be >= 1");

  std::vector<ItemId> ids;
  for (ItemId i = 0; i < table.item_range(); ++i)
    if (table.covered(i)) ids.push_back(i);

  NeighborTable nt;
  nt.max_neighbors = max_neighbors;
  nt.neighbors.assign(table.item_range(), {});

  const int K = max_neighbors;
  for (ItemId q : ids) {
    auto qv = table.vec(q);
    // exact top-K by (similarity desc, id asc)
    std::vector<std::pair<double, ItemId>> best;
    best.reserve(ids.size());
    for (ItemId o : ids) {
      if (o == q) continue;
      best.emplace_back(cosine(qv, table.vec(o)), o);
    }
    const std::size_t k = std::min<std::size_t>(K, best.size());
    std::partial_sort(best.begin(), best.begin() + k, best.end(),
                      [](const auto& a, const auto& b) {
                        if (a.first != b.first) return a.first > b.first;
                        return a.second < b.second;
                      });
    auto& lst = nt.neighbors[q];
    lst.reserve(k);
    for (std::size_t i = 0; i < k; ++i) lst.emplace_back(best[i].second, best[i].first);
  }

  // b_k: nearest-rank 3rd quartile (index ceil(0.75*N), 1-based, ascending)
  nt.rank_threshold.assign(K, 0.0);
  for (int k = 1; k <= K; ++k) {
    std::vector<double> sims;
    for (ItemId q : ids)
      if (nt.neighbors[q].size() >= static_cast<std::size_t>(k))
        sims.push_back(nt.neighbors[q][k - 1].second);
    if (sims.empty()) {
      nt.rank_threshold[k - 1] = 1.0;  // nothing can pass this rank
      continue;
    }
    std::sort(sims.begin(), sims.end());
    const std::size_t idx = (sims.size() * 3 + 3) / 4;  // ceil(0.75*N)
    nt.rank_threshold[k - 1] = sims[std::min(idx, sims.size()) - 1];
  }
  return nt;
}

}  // namespace premise
