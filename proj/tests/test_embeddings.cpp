#include <doctest.h>

#include <cmath>
#include <sstream>

#include "premise/embeddings.hpp"
#include "premise/io.hpp"

using namespace premise;

TEST_CASE("load_vectors with header") {
  Vocabulary vocab;
  vocab.intern("cat");
  vocab.intern("dog");
  vocab.intern("car");
  std::istringstream in("2 3\ncat 1 0 0\ndog 0.9 0.1 0\n");
  auto res = load_vectors(in, vocab);
  CHECK(res.table.dim() == 3);
  CHECK(res.table.coverage() == 2);
  CHECK(res.table.covered(*vocab.find("cat")));
  CHECK_FALSE(res.table.covered(*vocab.find("car")));
  CHECK(res.warnings.empty());
}

TEST_CASE("load_vectors without header infers the dimension") {
  Vocabulary vocab;
  vocab.intern("a");
  std::istringstream in("a 0.5 0.5\n");
  auto res = load_vectors(in, vocab);
  CHECK(res.table.dim() == 2);
  CHECK(res.table.coverage() == 1);
}

TEST_CASE("load_vectors: duplicates keep the first occurrence, with a warning") {
  Vocabulary vocab;
  vocab.intern("a");
  std::istringstream in("a 1 0\na 0 1\n");
  auto res = load_vectors(in, vocab);
  REQUIRE(res.table.coverage() == 1);
  CHECK(res.table.vec(0)[0] == 1.0f);
  REQUIRE(res.warnings.size() == 1);
  CHECK(res.warnings[0].find("duplicate") != std::string::npos);
}

TEST_CASE("load_vectors: dimension mismatch reports the line") {
  Vocabulary vocab;
  vocab.intern("a");
  vocab.intern("b");
  std::istringstream in("a 1 0\nb 1 0 0\n");
  CHECK_THROWS_AS(load_vectors(in, vocab), FormatError);
  std::istringstream in2("a 1 0\nb 1 0 0\n");
  try {
    load_vectors(in2, vocab);
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("load_vectors: empty intersection warns and yields an empty table") {
  Vocabulary vocab;
  vocab.intern("a");
  std::istringstream in("zzz 1 0\n");
  auto res = load_vectors(in, vocab);
  CHECK(res.table.coverage() == 0);
  REQUIRE_FALSE(res.warnings.empty());
}

TEST_CASE("cosine") {
  const float v[2] = {1, 0}, w[2] = {1, 1}, z[2] = {0, 0}, o[2] = {0, 1};
  CHECK(cosine(v, v) == doctest::Approx(1.0));
  CHECK(cosine(v, o) == doctest::Approx(0.0));
  CHECK(cosine(v, w) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK_THROWS_AS(cosine(v, z), std::domain_error);
  const float three[3] = {1, 0, 0};
  CHECK_THROWS_AS(cosine(v, three), std::domain_error);
}

TEST_CASE("neighbor table ranks a clustered pair first") {
  EmbeddingTable table(4, 2);
  const float a[2] = {1.0f, 0.05f}, b[2] = {1.0f, -0.05f}, c[2] = {0, 1}, d[2] = {-1, 0.3f};
  table.set(0, a);
  table.set(1, b);
  table.set(2, c);
  table.set(3, d);
  auto nbt = build_neighbor_table(table, 2);
  CHECK(nbt.neighbors[0].front().first == 1);
  CHECK(nbt.neighbors[1].front().first == 0);
  // similarities symmetric either way around
  CHECK(nbt.neighbors[0].front().second ==
        doctest::Approx(nbt.neighbors[1].front().second).epsilon(1e-12));
  // raising K keeps the prefix
  auto nbt3 = build_neighbor_table(table, 3);
  for (ItemId i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < nbt.neighbors[i].size(); ++k)
      CHECK(nbt3.neighbors[i][k].first == nbt.neighbors[i][k].first);
}

TEST_CASE("rank threshold is the nearest-rank third quartile") {
  // four items whose rank-1 similarities are 0.6, 0.7, 0.8, 0.9:
  // ceil(0.75 * 4) = 3rd smallest = 0.8
  std::vector<double> sims{0.9, 0.8, 0.7, 0.6};
  std::sort(sims.begin(), sims.end());
  const std::size_t idx = (sims.size() * 3 + 3) / 4;
  CHECK(sims[idx - 1] == 0.8);

  // and through the real table construction: one tight pair, one loose pair
  EmbeddingTable table(4, 3);
  const float a[3] = {1, 0.1f, 0}, b[3] = {1, -0.1f, 0};
  const float c[3] = {0, 1, 0.8f}, d[3] = {0.8f, 1, -0.6f};
  table.set(0, a);
  table.set(1, b);
  table.set(2, c);
  table.set(3, d);
  auto nbt = build_neighbor_table(table, 1);
  std::vector<double> rank1;
  for (int i = 0; i < 4; ++i) rank1.push_back(nbt.neighbors[i].front().second);
  std::sort(rank1.begin(), rank1.end());
  CHECK(nbt.rank_threshold[0] == doctest::Approx(rank1[2]).epsilon(1e-12));
}

TEST_CASE("vector round trip through the text format") {
  Vocabulary vocab;
  vocab.intern("u");
  vocab.intern("v");
  EmbeddingTable table(2, 3);
  const float u[3] = {0.25f, -1.5f, 3.0f}, v[3] = {1.0f, 2.0f, -0.125f};
  table.set(0, u);
  table.set(1, v);
  std::ostringstream out;
  write_vectors(out, table, vocab);
  std::istringstream in(out.str());
  auto res = load_vectors(in, vocab);
  REQUIRE(res.table.coverage() == 2);
  for (ItemId i = 0; i < 2; ++i)
    for (std::size_t dgt = 0; dgt < 3; ++dgt)
      CHECK(res.table.vec(i)[dgt] == table.vec(i)[dgt]);
}
