#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "premise/eval.hpp"
#include "premise/io.hpp"
#include "premise/search.hpp"
#include "premise/synth.hpp"
#include "premise/version.hpp"

namespace py = pybind11;
using namespace premise;

namespace {

// python-facing pattern record
struct PyPattern {
  std::vector<std::vector<std::string>> clauses;
  std::string side;
  std::uint32_t support_neg = 0, support_pos = 0;
  double gain_bits = 0, p_value = 1;
  std::uint32_t round = 0;
};

struct PyMineResult {
  std::vector<PyPattern> patterns;
  double baseline_bits = 0, final_bits = 0;
  std::uint32_t rounds = 0;
};

LabeledDatabase db_from_rows(
    const std::vector<std::pair<bool, std::vector<std::string>>>& rows) {
  Vocabulary vocab;
  std::vector<Transaction> txs;
  txs.reserve(rows.size());
  for (const auto& [positive, tokens] : rows) {
    Transaction tx;
    tx.label = positive ? Label::Pos : Label::Neg;
    for (const auto& t : tokens) tx.items.push_back(vocab.intern(t));
    txs.push_back(std::move(tx));
  }
  return LabeledDatabase::build(std::move(vocab), std::move(txs));
}

PyMineResult run_mine(const LabeledDatabase& db, const SearchConfig& cfg,
                      const EmbeddingTable* emb) {
  NeighborTable nbt;
  const bool with_emb = emb && emb->coverage() > 1 && cfg.max_neighbors > 0;
  if (with_emb) nbt = build_neighbor_table(*emb, cfg.max_neighbors);
  SearchResult res = premise_search(db, cfg, with_emb ? emb : nullptr, with_emb ? &nbt : nullptr);

  PyMineResult out;
  out.baseline_bits = res.trace.baseline_bits;
  out.final_bits = res.model.total_bits();
  out.rounds = static_cast<std::uint32_t>(res.trace.rounds.size());
  for (const auto& mp : res.model.patterns()) {
    PyPattern p;
    p.clauses = pattern_to_tokens(mp.pattern, db.vocab()).clauses;
    p.side = mp.pattern.label_side == Label::Pos ? "+" : "-";
    p.support_neg = mp.pattern.support_neg;
    p.support_pos = mp.pattern.support_pos;
    p.gain_bits = mp.gain_at_accept;
    p.p_value = mp.p_at_accept;
    p.round = mp.round;
    out.patterns.push_back(std::move(p));
  }
  return out;
}

std::vector<TokenPattern> to_token_patterns(
    const std::vector<std::vector<std::vector<std::string>>>& raw) {
  std::vector<TokenPattern> out;
  out.reserve(raw.size());
  for (const auto& clauses : raw) out.push_back(TokenPattern{clauses});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "MDL-based label-descriptive pattern mining";
  m.attr("__version__") = kVersion;

  py::class_<LabeledDatabase>(m, "Database")
      .def_static(
          "from_rows",
          [](const std::vector<std::pair<bool, std::vector<std::string>>>& rows) {
            return db_from_rows(rows);
          },
          py::arg("rows"), "Build a database from (is_positive, tokens) rows.")
      .def_static(
          "load", [](const std::string& path) { return load_data_file(path, {}); },
          py::arg("path"))
      .def("save",
           [](const LabeledDatabase& db, const std::string& path) { write_data_file(path, db); })
      .def_property_readonly("n_transactions",
                             [](const LabeledDatabase& db) { return db.size(); })
      .def_property_readonly("n_positive",
                             [](const LabeledDatabase& db) { return db.size(Part::Pos); })
      .def_property_readonly("n_negative",
                             [](const LabeledDatabase& db) { return db.size(Part::Neg); })
      .def_property_readonly("n_items", [](const LabeledDatabase& db) { return db.n_items(); });

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &SearchConfig::alpha)
      .def_readwrite("min_overlap", &SearchConfig::min_overlap)
      .def_readwrite("max_neighbors", &SearchConfig::max_neighbors)
      .def_readwrite("xor_overlap_max", &SearchConfig::xor_overlap_max)
      .def_readwrite("fisher_filter", &SearchConfig::fisher_filter);

  py::class_<PyPattern>(m, "Pattern")
      .def_readonly("clauses", &PyPattern::clauses)
      .def_readonly("side", &PyPattern::side)
      .def_readonly("support_neg", &PyPattern::support_neg)
      .def_readonly("support_pos", &PyPattern::support_pos)
      .def_readonly("gain_bits", &PyPattern::gain_bits)
      .def_readonly("p_value", &PyPattern::p_value)
      .def_readonly("round", &PyPattern::round)
      .def("__repr__", [](const PyPattern& p) {
        std::ostringstream ss;
        ss << "Pattern(";
        for (std::size_t c = 0; c < p.clauses.size(); ++c) {
          if (c) ss << " & ";
          for (std::size_t i = 0; i < p.clauses[c].size(); ++i) {
            if (i) ss << "|";
            ss << p.clauses[c][i];
          }
        }
        ss << ", side=" << p.side << ")";
        return ss.str();
      });

  py::class_<PyMineResult>(m, "MineResult")
      .def_readonly("patterns", &PyMineResult::patterns)
      .def_readonly("baseline_bits", &PyMineResult::baseline_bits)
      .def_readonly("final_bits", &PyMineResult::final_bits)
      .def_readonly("rounds", &PyMineResult::rounds);

  py::class_<EmbeddingTable>(m, "Embeddings")
      .def_property_readonly("dim", &EmbeddingTable::dim)
      .def_property_readonly("coverage", &EmbeddingTable::coverage);

  m.def(
      "load_embeddings",
      [](const std::string& path, const LabeledDatabase& db) {
        return load_vectors_file(path, db.vocab()).table;
      },
      py::arg("path"), py::arg("database"));

  m.def(
      "mine",
      [](const LabeledDatabase& db, const SearchConfig& cfg, const EmbeddingTable* emb) {
        return run_mine(db, cfg, emb);
      },
      py::arg("database"), py::arg("config") = SearchConfig{},
      py::arg("embeddings") = static_cast<const EmbeddingTable*>(nullptr),
      "Mine label-descriptive patterns; optional embeddings enable XOR clauses.");

  m.def(
      "generate_base",
      [](std::uint64_t seed, std::uint32_t n_transactions, std::uint32_t n_items, double frac_neg,
         double shift, double flip_rate) {
        BaseGenConfig cfg;
        cfg.seed = seed;
        cfg.n_transactions = n_transactions;
        cfg.n_items = n_items;
        cfg.frac_neg = frac_neg;
        cfg.shift = shift;
        cfg.flip_rate = flip_rate;
        auto gen = gen_base(cfg);
        std::vector<std::vector<std::vector<std::string>>> truth;
        for (const auto& tp : gen.truth.to_tokens(gen.db.vocab())) truth.push_back(tp.clauses);
        return std::make_pair(std::move(gen.db), std::move(truth));
      },
      py::arg("seed") = 1, py::arg("n_transactions") = 10000, py::arg("n_items") = 1000,
      py::arg("frac_neg") = 0.5, py::arg("shift") = 0.9, py::arg("flip_rate") = 0.001,
      "Returns (database, planted clause lists).");

  m.def(
      "exact_f1",
      [](const std::vector<std::vector<std::vector<std::string>>>& found,
         const std::vector<std::vector<std::vector<std::string>>>& truth) {
        return compare_pattern_sets(to_token_patterns(found), to_token_patterns(truth)).f1;
      },
      py::arg("found"), py::arg("truth"));
  m.def(
      "soft_f1",
      [](const std::vector<std::vector<std::vector<std::string>>>& found,
         const std::vector<std::vector<std::vector<std::string>>>& truth) {
        return compare_pattern_sets(to_token_patterns(found), to_token_patterns(truth)).soft_f1;
      },
      py::arg("found"), py::arg("truth"));
}
