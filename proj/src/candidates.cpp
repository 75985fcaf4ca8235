#include "premise/candidates.hpp"

#include <algorithm>
#include <stdexcept>

#include "premise/stats.hpp"

namespace premise {

void SearchConfig::validate() const {
  if (fisher_filter && !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("SearchConfig: alpha must lie in (0, 1)");
  if (min_overlap < 0.0 || min_overlap > 1.0)
    throw std::invalid_argument("SearchConfig: min_overlap must lie in [0, 1]");
  if (max_neighbors < 0) throw std::invalid_argument("SearchConfig: max_neighbors must be >= 0");
  if (xor_overlap_max < 0.0 || xor_overlap_max > 1.0)
    throw std::invalid_argument("SearchConfig: xor_overlap_max must lie in [0, 1]");
}

bool overlap_filter(const LabeledDatabase& db, ItemId i1, ItemId i2, double min_overlap) {
  const TidList& t1 = db.tids(i1, Part::All);
  const TidList& t2 = db.tids(i2, Part::All);
  if (t1.empty() || t2.empty()) return false;
  const std::size_t inter = intersection_size(t1, t2);
  return static_cast<double>(inter) >=
         min_overlap * static_cast<double>(std::min(t1.size(), t2.size()));
}

bool filter_xor_clause(const LabeledDatabase& db, const Clause& clause, ItemId query,
                       const EmbeddingTable& emb, const NeighborTable& nbt,
                       const SearchConfig& config) {
  if (clause.items.size() < 2) throw std::invalid_argument("filter_xor_clause: clause too small");
  for (ItemId i : clause.items)
    if (!emb.covered(i)) return false;
  if (!nbt.has(query)) return false;

  // similarity floors: every non-query member must sit in the query's
  // neighbor list at a rank whose b_k it clears
  const auto& nbs = nbt.neighbors[query];
  for (ItemId i : clause.items) {
    if (i == query) continue;
    bool ok = false;
    for (std::size_t r = 0; r < nbs.size(); ++r) {
      if (nbs[r].first == i) {
        ok = nbs[r].second > nbt.rank_threshold[r];
        break;
      }
    }
    if (!ok) return false;
  }

  // mutual exclusivity: intersection/union of the members' selections < a
  TidList inter = db.tids(clause.items[0], Part::All);
  TidList uni = inter;
  for (std::size_t i = 1; i < clause.items.size(); ++i) {
    const TidList& t = db.tids(clause.items[i], Part::All);
    inter = intersect(inter, t);
    uni = set_union(uni, t);
  }
  if (uni.empty()) return false;
  return static_cast<double>(inter.size()) <
         config.xor_overlap_max * static_cast<double>(uni.size());
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
      h ^= x >> 16;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

bool sorted_disjoint(const std::vector<ItemId>& a, const std::vector<ItemId>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else
      return false;
  }
  return true;
}

}  // namespace

CandidateEngine::CandidateEngine(const LabeledDatabase& db, const SearchConfig& config,
                                 const EmbeddingTable* emb, const NeighborTable* nbt)
    : db_(db), cfg_(config), emb_(emb), nbt_(nbt) {
  cfg_.validate();
  build_xor_variants();
  build_pairs();
}

CandidateEngine::Stats CandidateEngine::stats_from_supports(std::uint32_t supp_neg,
                                                            std::uint32_t supp_pos) const {
  Stats s;
  s.support_neg = supp_neg;
  s.support_pos = supp_pos;
  auto side = assign_label_side(db_, supp_neg, supp_pos);
  s.side = side.side;
  s.tie = side.tie;
  s.p = side.tie ? 1.0
                 : fisher_one_sided(db_.size(), db_.size(Part::Pos), supp_neg, supp_pos, s.side);
  return s;
}

CandidateEngine::Stats CandidateEngine::intersection_stats(const TidList& a, const TidList& b) {
  std::uint32_t neg = 0, pos = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      (db_.label(a[i]) == Label::Neg ? neg : pos)++;
      ++i;
      ++j;
    }
  }
  return stats_from_supports(neg, pos);
}

const std::vector<CandidateEngine::Stats>& CandidateEngine::ext_base_stats(
    const ModelPattern& mp) {
  auto it = ext_base_cache_.find(mp.uid);
  if (it != ext_base_cache_.end()) return it->second;
  const std::size_t m = db_.n_items();
  std::vector<std::uint32_t> neg(m, 0), pos(m, 0);
  for (Tid t : mp.tids) {
    auto& cnt = db_.label(t) == Label::Neg ? neg : pos;
    for (ItemId i : db_.transaction(t).items) ++cnt[i];
  }
  std::vector<Stats> stats(m);
  for (ItemId i = 0; i < m; ++i)
    if (neg[i] + pos[i] > 0) stats[i] = stats_from_supports(neg[i], pos[i]);
  return ext_base_cache_.emplace(mp.uid, std::move(stats)).first->second;
}

void CandidateEngine::build_xor_variants() {
  const std::size_t m = db_.n_items();
  variants_.assign(m, {});
  const bool with_xor = emb_ != nullptr && nbt_ != nullptr && cfg_.max_neighbors > 0;

  for (ItemId i = 0; i < m; ++i) {
    auto& vs = variants_[i];
    auto add_variant = [&](Clause cl) {
      Variant v;
      v.clause = std::move(cl);
      v.tids = selection(db_, v.clause, Part::All);
      std::uint32_t neg = 0;
      for (Tid t : v.tids) neg += (db_.label(t) == Label::Neg);
      v.stats = stats_from_supports(neg, static_cast<std::uint32_t>(v.tids.size()) - neg);
      vs.push_back(std::move(v));
    };
    add_variant(Clause{{i}});
    if (!with_xor || !nbt_->has(i)) continue;
    const auto& nbs = nbt_->neighbors[i];
    std::vector<ItemId> prefix{i};
    const int kmax = std::min<int>(cfg_.max_neighbors, static_cast<int>(nbs.size()));
    for (int k = 1; k <= kmax; ++k) {
      // a failed similarity floor at rank k also fails every larger prefix
      if (!(nbs[k - 1].second > nbt_->rank_threshold[k - 1])) break;
      prefix.push_back(nbs[k - 1].first);
      Clause cl;
      cl.items = prefix;
      std::sort(cl.items.begin(), cl.items.end());
      if (filter_xor_clause(db_, cl, i, *emb_, *nbt_, cfg_)) add_variant(std::move(cl));
    }
  }
}

void CandidateEngine::build_pairs() {
  pairs_.clear();
  const std::size_t m = db_.n_items();
  std::unordered_map<std::uint64_t, std::uint32_t> cooc;
  cooc.reserve(db_.size() * 8);
  for (Tid t = 0; t < db_.size(); ++t) {
    const auto& items = db_.transaction(t).items;
    for (std::size_t a = 0; a < items.size(); ++a)
      for (std::size_t b = a + 1; b < items.size(); ++b)
        ++cooc[static_cast<std::uint64_t>(items[a]) * m + items[b]];
  }
  pairs_.reserve(cooc.size() / 4);
  for (const auto& [key, cnt] : cooc) {
    const ItemId i = static_cast<ItemId>(key / m);
    const ItemId j = static_cast<ItemId>(key % m);
    const std::size_t si = db_.support(i), sj = db_.support(j);
    if (static_cast<double>(cnt) >= cfg_.min_overlap * static_cast<double>(std::min(si, sj)))
      pairs_.emplace_back(i, j);
  }
  std::sort(pairs_.begin(), pairs_.end());
}

void CandidateEngine::for_each(const Model& model, const std::function<void(Candidate&)>& fn) {
  const std::size_t m = db_.n_items();
  const std::uint64_t vslots = static_cast<std::uint64_t>(m) * (cfg_.max_neighbors + 1);

  // drop per-item stats of patterns that left the model
  if (ext_base_cache_.size() > 2 * model.patterns().size() + 16) {
    std::unordered_set<std::uint64_t> live;
    for (const auto& mp : model.patterns()) live.insert(mp.uid);
    for (auto it = ext_base_cache_.begin(); it != ext_base_cache_.end();)
      it = live.count(it->first) ? std::next(it) : ext_base_cache_.erase(it);
  }

  std::unordered_set<std::vector<std::uint32_t>, KeyHash> seen;
  for (const auto& mp : model.patterns()) seen.insert(mp.pattern.structure_key());

  std::vector<std::vector<ItemId>> flat_items;
  flat_items.reserve(model.patterns().size());
  for (const auto& mp : model.patterns()) flat_items.push_back(mp.pattern.items_flat());

  // ta/tb: the two sorted selections whose intersection is the candidate's;
  // tb null means ta already is the selection
  auto emit = [&](Pattern&& pat, Provenance prov, std::uint32_t pa, std::uint32_t pb,
                  const Stats& st, const TidList* ta, const TidList* tb) {
    auto key = pat.structure_key();
    if (!seen.insert(std::move(key)).second) return;
    Candidate cand;
    cand.pattern = std::move(pat);
    cand.pattern.support_neg = st.support_neg;
    cand.pattern.support_pos = st.support_pos;
    cand.pattern.label_side = st.side;
    cand.provenance = prov;
    cand.parent_a = pa;
    cand.parent_b = pb;
    cand.p_value = st.p;
    cand.side_tie = st.tie;
    if (ta) cand.tids = tb ? intersect(*ta, *tb) : *ta;
    fn(cand);
  };

  // pattern + pattern merges
  for (std::uint32_t a = 0; a < model.patterns().size(); ++a) {
    for (std::uint32_t b = a + 1; b < model.patterns().size(); ++b) {
      if (!sorted_disjoint(flat_items[a], flat_items[b])) continue;
      const auto& pa = model.patterns()[a];
      const auto& pb = model.patterns()[b];
      const std::uint64_t key = (pa.uid << 32) | pb.uid;
      auto it = merge_stats_.find(key);
      if (it == merge_stats_.end())
        it = merge_stats_.emplace(key, intersection_stats(pa.tids, pb.tids)).first;
      const Stats& st = it->second;
      if (st.support_neg + st.support_pos == 0) continue;
      if (!(st.p < p_cut_)) continue;
      std::vector<Clause> clauses = pa.pattern.clauses;
      clauses.insert(clauses.end(), pb.pattern.clauses.begin(), pb.pattern.clauses.end());
      emit(make_pattern(std::move(clauses)), Provenance::PatternMerge, a, b, st, &pa.tids,
           &pb.tids);
    }
  }

  // pattern + item (attached as a new clause, with XOR variants)
  for (std::uint32_t slot = 0; slot < model.patterns().size(); ++slot) {
    const auto& mp = model.patterns()[slot];
    const auto& base_stats = ext_base_stats(mp);
    for (ItemId i = 0; i < m; ++i) {
      const auto& vs = variants_[i];
      for (std::uint32_t vi = 0; vi < vs.size(); ++vi) {
        const Stats* st;
        if (vi == 0) {
          st = &base_stats[i];
          if (st->support_neg + st->support_pos == 0) continue;
          if (!(st->p < p_cut_)) continue;
          if (std::binary_search(flat_items[slot].begin(), flat_items[slot].end(), i)) continue;
        } else {
          if (!sorted_disjoint(flat_items[slot], vs[vi].clause.items)) continue;
          const std::uint64_t key = mp.uid * vslots + i * (cfg_.max_neighbors + 1) + vi;
          auto it = ext_stats_.find(key);
          if (it == ext_stats_.end())
            it = ext_stats_.emplace(key, intersection_stats(mp.tids, vs[vi].tids)).first;
          st = &it->second;
          if (st->support_neg + st->support_pos == 0) continue;
          if (!(st->p < p_cut_)) continue;
        }
        std::vector<Clause> clauses = mp.pattern.clauses;
        clauses.push_back(vs[vi].clause);
        emit(make_pattern(std::move(clauses)), Provenance::PatternPlusItem, slot, kNoParent, *st,
             &mp.tids, &vs[vi].tids);
      }
    }
  }

  // item pairs passing the overlap filter (with XOR variants on each side)
  for (const auto& [i, j] : pairs_) {
    const auto& vi = variants_[i];
    const auto& vj = variants_[j];
    for (std::uint32_t a = 0; a < vi.size(); ++a) {
      for (std::uint32_t b = 0; b < vj.size(); ++b) {
        if (!sorted_disjoint(vi[a].clause.items, vj[b].clause.items)) continue;
        const std::uint64_t key =
            (static_cast<std::uint64_t>(i) * (cfg_.max_neighbors + 1) + a) * vslots +
            static_cast<std::uint64_t>(j) * (cfg_.max_neighbors + 1) + b;
        auto it = pair_stats_.find(key);
        if (it == pair_stats_.end())
          it = pair_stats_.emplace(key, intersection_stats(vi[a].tids, vj[b].tids)).first;
        if (!(it->second.p < p_cut_)) continue;
        emit(make_pattern({vi[a].clause, vj[b].clause}), Provenance::Pair, kNoParent, kNoParent,
             it->second, &vi[a].tids, &vj[b].tids);
      }
    }
  }

  // single items and their XOR variants
  for (ItemId i = 0; i < m; ++i)
    for (const auto& v : variants_[i]) {
      if (!(v.stats.p < p_cut_)) continue;
      emit(make_pattern({v.clause}), Provenance::Singleton, kNoParent, kNoParent, v.stats,
           &v.tids, nullptr);
    }
}

std::vector<Candidate> create_candidates(const Model& model, const LabeledDatabase& db,
                                         const SearchConfig& config, const EmbeddingTable* emb,
                                         const NeighborTable* nbt) {
  CandidateEngine engine(db, config, emb, nbt);
  std::vector<Candidate> out;
  engine.for_each(model, [&](Candidate& c) { out.push_back(std::move(c)); });
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    // emission order: singletons, pairs, extensions, merges; then structure
    auto cls = [](Provenance p) {
      switch (p) {
        case Provenance::Singleton: return 0;
        case Provenance::Pair: return 1;
        case Provenance::PatternPlusItem: return 2;
        case Provenance::PatternMerge: return 3;
      }
      return 4;
    };
    if (cls(a.provenance) != cls(b.provenance)) return cls(a.provenance) < cls(b.provenance);
    return a.pattern.structure_key() < b.pattern.structure_key();
  });
  return out;
}

}  // namespace premise
