#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "premise/rng.hpp"
#include "premise/search.hpp"
#include "premise/synth.hpp"

using namespace premise;

namespace {

LabeledDatabase separating_toy() {
  // 20 transactions, 10 per label, item X in all positives and no negatives;
  // background items carry no signal
  Vocabulary vocab;
  const ItemId x = vocab.intern("X"), f = vocab.intern("f"), g = vocab.intern("g");
  std::vector<Transaction> txs(20);
  for (int t = 0; t < 20; ++t) {
    txs[t].label = t < 10 ? Label::Neg : Label::Pos;
    if (t >= 10) txs[t].items.push_back(x);
    txs[t].items.push_back(f);
    if (t % 2 == 0) txs[t].items.push_back(g);
  }
  return LabeledDatabase::build(std::move(vocab), std::move(txs));
}

}  // namespace

TEST_CASE("no deviation between partitions keeps the baseline") {
  Vocabulary vocab;
  vocab.intern("a");
  vocab.intern("b");
  std::vector<Transaction> txs(16);
  for (int t = 0; t < 16; ++t) {
    txs[t].label = t < 8 ? Label::Neg : Label::Pos;
    txs[t].items = {0, 1};  // every item in every transaction
  }
  auto db = LabeledDatabase::build(std::move(vocab), std::move(txs));
  auto res = premise_search(db, SearchConfig{});
  CHECK(res.model.patterns().empty());
  CHECK(res.trace.rounds.empty());
  CHECK(res.model.total_bits() == doctest::Approx(res.trace.baseline_bits));
}

TEST_CASE("perfectly separating item is recovered alone") {
  auto db = separating_toy();
  auto res = premise_search(db, SearchConfig{});
  REQUIRE(res.model.patterns().size() == 1);
  const auto& mp = res.model.patterns()[0];
  CHECK(mp.pattern.structure_key() == make_pattern({Clause{{0}}}).structure_key());
  CHECK(mp.pattern.label_side == Label::Pos);
  CHECK(mp.p_at_accept == doctest::Approx(1.0 / 184756.0).epsilon(1e-9));  // 1 / C(20,10)
  CHECK(mp.gain_at_accept < 0.0);
  CHECK(res.model.total_bits() < res.trace.baseline_bits);
}

TEST_CASE("single-label databases are rejected") {
  Vocabulary vocab;
  vocab.intern("a");
  std::vector<Transaction> txs(4);
  for (auto& tx : txs) {
    tx.label = Label::Pos;
    tx.items = {0};
  }
  auto db = LabeledDatabase::build(std::move(vocab), std::move(txs));
  CHECK_THROWS_AS(premise_search(db, SearchConfig{}), std::domain_error);
}

TEST_CASE("codelength strictly decreases every accepted round") {
  BaseGenConfig cfg;
  cfg.n_transactions = 800;
  cfg.n_items = 60;
  cfg.seed = 99;
  auto gen = gen_base(cfg);
  auto res = premise_search(gen.db, SearchConfig{});
  double prev = res.trace.baseline_bits;
  for (const auto& r : res.trace.rounds) {
    CHECK(r.total_bits_after < prev);
    CHECK(r.gain_bits < 0.0);
    CHECK(r.p_value < 0.01);
    prev = r.total_bits_after;
  }
  CHECK(res.model.total_bits() <= res.trace.baseline_bits);
  CHECK(res.trace.terminated_reason == "no_improving_candidate");
  // cache agrees with a recomputation at the end of the run
  CHECK(std::abs(total_cost(res.model).total() - res.model.total_bits()) < 1e-6);
}

TEST_CASE("search is deterministic") {
  BaseGenConfig cfg;
  cfg.n_transactions = 500;
  cfg.n_items = 40;
  cfg.seed = 5;
  auto gen = gen_base(cfg);
  auto r1 = premise_search(gen.db, SearchConfig{});
  auto r2 = premise_search(gen.db, SearchConfig{});
  REQUIRE(r1.trace.rounds.size() == r2.trace.rounds.size());
  for (std::size_t i = 0; i < r1.trace.rounds.size(); ++i) {
    CHECK(r1.trace.rounds[i].pattern.structure_key() ==
          r2.trace.rounds[i].pattern.structure_key());
    CHECK(r1.trace.rounds[i].gain_bits == r2.trace.rounds[i].gain_bits);
    CHECK(r1.trace.rounds[i].total_bits_after == r2.trace.rounds[i].total_bits_after);
  }
}

TEST_CASE("small planted patterns are recovered") {
  BaseGenConfig cfg;
  cfg.n_transactions = 1500;
  cfg.n_items = 80;
  cfg.seed = 12345;
  auto gen = gen_base(cfg);
  auto res = premise_search(gen.db, SearchConfig{});
  // every planted pattern should be found exactly at this easy scale
  std::size_t hits = 0;
  for (const auto& pp : gen.truth.patterns) {
    const auto key = pp.pattern.structure_key();
    for (const auto& mp : res.model.patterns())
      if (mp.pattern.structure_key() == key) {
        ++hits;
        break;
      }
  }
  CHECK(hits >= gen.truth.patterns.size() - 1);
}

TEST_CASE("first accepted pattern matches the exhaustive single-pattern minimizer") {
  // planted pair in a 12-item toy; the greedy first step agrees with brute force
  Rng rng(777);
  int agreements = 0, cases = 0;
  for (int rep = 0; rep < 10; ++rep) {
    Vocabulary vocab;
    for (int i = 0; i < 12; ++i) vocab.intern("t" + std::to_string(i));
    std::vector<Transaction> txs(120);
    for (int t = 0; t < 120; ++t) {
      txs[t].label = t < 60 ? Label::Neg : Label::Pos;
      for (ItemId i = 2; i < 12; ++i)
        if (rng.unit() < 0.15) txs[t].items.push_back(i);
    }
    // plant {0,1} in 30 positives and 3 negatives
    for (std::uint64_t r : rng.distinct(60, 30)) {
      txs[60 + r].items.push_back(0);
      txs[60 + r].items.push_back(1);
    }
    for (std::uint64_t r : rng.distinct(60, 3)) {
      txs[r].items.push_back(0);
      txs[r].items.push_back(1);
    }
    auto db = LabeledDatabase::build(std::move(vocab), std::move(txs));
    auto best = oracles::oracle_best_single_pattern(db);
    if (!best) continue;
    ++cases;
    auto res = premise_search(db, SearchConfig{});
    if (res.trace.rounds.empty()) continue;
    if (res.trace.rounds[0].pattern.structure_key() == best->structure_key()) ++agreements;
  }
  CHECK(cases >= 8);
  CHECK(agreements >= cases - 1);
}
