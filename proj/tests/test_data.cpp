#include <doctest.h>

#include <algorithm>

#include "premise/data.hpp"
#include "premise/rng.hpp"

using namespace premise;

namespace {

LabeledDatabase tiny_db(const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
  Vocabulary vocab;
  std::vector<Transaction> txs;
  for (const auto& [label, toks] : rows) {
    Transaction tx;
    tx.label = label == "+" ? Label::Pos : Label::Neg;
    for (const auto& t : toks) tx.items.push_back(vocab.intern(t));
    txs.push_back(std::move(tx));
  }
  return LabeledDatabase::build(std::move(vocab), std::move(txs));
}

LabeledDatabase random_db(Rng& rng, std::size_t n, std::size_t m, double density) {
  Vocabulary vocab;
  for (std::size_t i = 0; i < m; ++i) vocab.intern("x" + std::to_string(i));
  std::vector<Transaction> txs(n);
  bool has_neg = false, has_pos = false;
  for (std::size_t t = 0; t < n; ++t) {
    txs[t].label = rng.unit() < 0.5 ? Label::Neg : Label::Pos;
    (txs[t].label == Label::Neg ? has_neg : has_pos) = true;
    for (ItemId i = 0; i < m; ++i)
      if (rng.unit() < density) txs[t].items.push_back(i);
  }
  if (!has_neg) txs[0].label = Label::Neg;
  if (!has_pos) txs[n - 1].label = Label::Pos;
  return LabeledDatabase::build(std::move(vocab), std::move(txs));
}

}  // namespace

TEST_CASE("vocabulary is a bijection in insertion order") {
  Vocabulary v;
  CHECK(v.intern("what") == 0);
  CHECK(v.intern("color") == 1);
  CHECK(v.intern("what") == 0);
  CHECK(v.token(1) == "color");
  CHECK(v.find("colour") == std::nullopt);
  CHECK(*v.find("color") == 1);
  CHECK_THROWS_AS(v.token(7), std::out_of_range);
}

TEST_CASE("transactions deduplicate repeated tokens") {
  auto db = tiny_db({{"+", {"a", "b", "a", "a"}}, {"-", {"b"}}});
  CHECK(db.transaction(0).items.size() == 2);
  CHECK(db.support(0) == 1);  // a
  CHECK(db.support(1) == 2);  // b
}

TEST_CASE("selection: single item clause is containment") {
  auto db = tiny_db({{"-", {"a", "c"}}, {"-", {"a", "b", "c"}}, {"+", {"b"}}});
  Clause a{{*db.vocab().find("a")}};
  CHECK(selection(db, a) == TidList{0, 1});
}

TEST_CASE("selection: clause with both items present does not hold") {
  auto db = tiny_db({{"-", {"a", "b"}}});
  Clause ab{{0, 1}};
  CHECK(selection(db, ab).empty());
}

TEST_CASE("selection: xor-and pattern on the three-transaction example") {
  // t1={A,C}, t2={A,B,C}, t3={B}; (A xor B) and C holds only on t1
  auto db = tiny_db({{"-", {"A", "C"}}, {"-", {"A", "B", "C"}}, {"+", {"B"}}});
  const ItemId A = *db.vocab().find("A"), B = *db.vocab().find("B"), C = *db.vocab().find("C");
  Pattern p = make_pattern({Clause{{A, B}}, Clause{{C}}});
  CHECK(selection(db, p) == TidList{0});
}

TEST_CASE("selection: unknown item id raises") {
  auto db = tiny_db({{"-", {"a"}}, {"+", {"a"}}});
  Clause bad{{42}};
  CHECK_THROWS_AS(selection(db, bad), std::out_of_range);
}

TEST_CASE("pattern_support degenerates to item support for a singleton") {
  auto db = tiny_db({{"-", {"a"}}, {"-", {"a", "b"}}, {"+", {"a"}}, {"+", {"c"}}});
  const ItemId a = *db.vocab().find("a");
  Pattern pa = make_pattern({Clause{{a}}});
  auto [neg, pos] = pattern_support(db, pa);
  CHECK(neg == db.tids(a, Part::Neg).size());
  CHECK(pos == db.tids(a, Part::Pos).size());
}

TEST_CASE("pattern absent from all transactions has zero support") {
  auto db = tiny_db({{"-", {"a"}}, {"-", {"b"}}, {"+", {"c"}}});
  Pattern p = make_pattern({Clause{{0}}, Clause{{2}}});
  auto [neg, pos] = pattern_support(db, p);
  CHECK(neg == 0);
  CHECK(pos == 0);
}

TEST_CASE("clause_item_counts partitions the pattern support") {
  // 8 transactions built by hand; checked against a per-transaction scan
  auto db = tiny_db({
      {"-", {"a", "c"}},
      {"-", {"b", "c"}},
      {"-", {"a", "b", "c"}},  // a and b both present: clause fails here
      {"-", {"a"}},
      {"+", {"b", "c"}},
      {"+", {"a", "c"}},
      {"+", {"c"}},
      {"+", {"a", "b"}},
  });
  const ItemId a = *db.vocab().find("a"), b = *db.vocab().find("b"), c = *db.vocab().find("c");
  Pattern p = make_pattern({Clause{{a, b}}, Clause{{c}}});
  for (Part part : {Part::All, Part::Neg, Part::Pos}) {
    auto counts = clause_item_counts(db, p, p.clauses[0], part);
    const auto sel = selection(db, p, part);
    std::uint32_t want_a = 0, want_b = 0;
    for (Tid t : sel) {
      const auto& items = db.transaction(t).items;
      want_a += std::binary_search(items.begin(), items.end(), a);
      want_b += std::binary_search(items.begin(), items.end(), b);
    }
    REQUIRE(counts.size() == 2);
    CHECK(counts[0] == want_a);
    CHECK(counts[1] == want_b);
    CHECK(counts[0] + counts[1] == sel.size());
  }
  Clause not_member{{a}};
  CHECK_THROWS_AS(clause_item_counts(db, p, not_member, Part::All), std::logic_error);
}

TEST_CASE("single-item clause count equals pattern support in that partition") {
  auto db = tiny_db({{"-", {"a", "c"}}, {"-", {"c"}}, {"+", {"a", "c"}}, {"+", {"a"}}});
  const ItemId a = *db.vocab().find("a"), c = *db.vocab().find("c");
  Pattern p = make_pattern({Clause{{a}}, Clause{{c}}});
  for (Part part : {Part::Neg, Part::Pos}) {
    auto counts = clause_item_counts(db, p, p.clauses[0], part);
    CHECK(counts == std::vector<std::uint32_t>{
                        static_cast<std::uint32_t>(selection(db, p, part).size())});
  }
}

TEST_CASE("tid lists are additive across partitions and selections partition") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    auto db = random_db(rng, 40, 8, 0.3);
    for (ItemId i = 0; i < db.n_items(); ++i) {
      CHECK(db.tids(i, Part::Neg).size() + db.tids(i, Part::Pos).size() ==
            db.tids(i, Part::All).size());
    }
    Pattern p = make_pattern({Clause{{0, 1}}, Clause{{2}}});
    auto all = selection(db, p, Part::All);
    auto neg = selection(db, p, Part::Neg);
    auto pos = selection(db, p, Part::Pos);
    CHECK(neg.size() + pos.size() == all.size());
    CHECK(set_union(neg, pos) == all);
    CHECK(intersect(neg, pos).empty());
  }
}

TEST_CASE("pattern support never grows when a clause is added") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    auto db = random_db(rng, 50, 10, 0.4);
    Pattern small = make_pattern({Clause{{0, 3}}});
    Pattern bigger = make_pattern({Clause{{0, 3}}, Clause{{5}}});
    auto [sn, sp] = pattern_support(db, small);
    auto [bn, bp] = pattern_support(db, bigger);
    CHECK(bn <= sn);
    CHECK(bp <= sp);
  }
}

TEST_CASE("make_pattern canonicalizes and validates") {
  Pattern p = make_pattern({Clause{{5}}, Clause{{3, 1}}});
  CHECK(p.clauses[0].items == std::vector<ItemId>{1, 3});
  CHECK(p.clauses[1].items == std::vector<ItemId>{5});
  CHECK(p.item_count() == 3);
  CHECK(p.items_flat() == std::vector<ItemId>{1, 3, 5});
  CHECK_THROWS_AS(make_pattern({}), std::invalid_argument);
  CHECK_THROWS_AS(make_pattern({Clause{{1}}, Clause{{1, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(make_pattern({Clause{{2, 2}}}), std::invalid_argument);
}
