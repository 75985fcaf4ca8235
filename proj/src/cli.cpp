#include "premise/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "premise/eval.hpp"
#include "premise/io.hpp"
#include "premise/rng.hpp"
#include "premise/search.hpp"
#include "premise/synth.hpp"
#include "premise/version.hpp"

namespace premise::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::string trace_line(const TraceRound& tr, std::size_t idx, const Vocabulary& vocab) {
  std::string s = "round " + std::to_string(idx) + ": ";
  TokenPattern tp = pattern_to_tokens(tr.pattern, vocab);
  for (std::size_t c = 0; c < tp.clauses.size(); ++c) {
    if (c) s += " & ";
    for (std::size_t i = 0; i < tp.clauses[c].size(); ++i) {
      if (i) s += "|";
      s += tp.clauses[c][i];
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "  gain %.3f bits  p %.3g  total %.3f", tr.gain_bits,
                tr.p_value, tr.total_bits_after);
  return s + buf;
}

void write_manifest(const std::string& path, const json& manifest) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << manifest.dump(2) << '\n';
}

std::string run_digest_of(const json& config, const json& inputs) {
  std::uint64_t h = fnv1a64(kVersion);
  h = fnv1a64(config.dump(), h);
  h = fnv1a64(inputs.dump(), h);
  return hex64(h);
}

// ---- mine ------------------------------------------------------------------

struct MineArgs {
  std::string input, output, embeddings_path;
  SearchConfig cfg;
  bool no_fisher = false;
};

void cmd_mine(CLI::App& app, MineArgs& a) {
  app.add_option("--input", a.input, "transaction data file")->required();
  app.add_option("--output", a.output, "pattern report path (default: stdout)");
  app.add_option("--embeddings", a.embeddings_path,
                 "word vector file; enables XOR clause candidates");
  app.add_option("--alpha", a.cfg.alpha, "significance level")->capture_default_str();
  app.add_option("--min-overlap", a.cfg.min_overlap, "item pair overlap floor")->capture_default_str();
  app.add_option("--max-neighbors", a.cfg.max_neighbors, "neighborhood size K")->capture_default_str();
  app.add_option("--xor-overlap-max", a.cfg.xor_overlap_max, "clause co-occurrence ceiling")->capture_default_str();
  app.add_flag("--trace", a.cfg.trace, "log one line per accepted round to stderr");
  app.add_flag("--no-fisher", a.no_fisher, "disable the significance filter");

  app.callback([&a]() {
    a.cfg.fisher_filter = !a.no_fisher;
    a.cfg.validate();

    const auto t0 = Clock::now();
    LabeledDatabase db = load_data_file(a.input, {.require_both_labels = true});

    EmbeddingTable emb;
    NeighborTable nbt;
    bool with_emb = false;
    if (!a.embeddings_path.empty()) {
      auto loaded = load_vectors_file(a.embeddings_path, db.vocab());
      for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
      emb = std::move(loaded.table);
      if (emb.coverage() > 1 && a.cfg.max_neighbors > 0) {
        nbt = build_neighbor_table(emb, a.cfg.max_neighbors);
        with_emb = true;
      }
    }

    json config_json = {{"alpha", a.cfg.alpha},
                        {"min_overlap", a.cfg.min_overlap},
                        {"max_neighbors", a.cfg.max_neighbors},
                        {"xor_overlap_max", a.cfg.xor_overlap_max},
                        {"fisher_filter", a.cfg.fisher_filter},
                        {"embeddings", a.embeddings_path}};
    json inputs_json = {{a.input, hex64(digest_file(a.input))}};
    if (!a.embeddings_path.empty())
      inputs_json[a.embeddings_path] = hex64(digest_file(a.embeddings_path));
    const std::string run_digest = run_digest_of(config_json, inputs_json);

    TraceSink sink;
    if (a.cfg.trace)
      sink = [&db](const TraceRound& tr, std::size_t idx) {
        std::cerr << trace_line(tr, idx, db.vocab()) << '\n';
      };

    SearchResult res = premise_search(db, a.cfg, with_emb ? &emb : nullptr,
                                      with_emb ? &nbt : nullptr, sink);

    Report report;
    report.run_digest = run_digest;
    report.baseline_bits = res.trace.baseline_bits;
    report.final_bits = res.model.total_bits();
    report.rounds = static_cast<std::uint32_t>(res.trace.rounds.size());
    for (const auto& mp : res.model.patterns()) {
      ReportEntry e;
      e.side = mp.pattern.label_side == Label::Pos ? "+" : "-";
      e.pattern = pattern_to_tokens(mp.pattern, db.vocab());
      e.support_neg = mp.pattern.support_neg;
      e.support_pos = mp.pattern.support_pos;
      e.gain_bits = mp.gain_at_accept;
      e.p_value = mp.p_at_accept;
      e.round = mp.round;
      report.entries.push_back(std::move(e));
    }

    if (a.output.empty()) {
      write_report(std::cout, report);
    } else {
      write_report_file(a.output, report);
      const auto wall =
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
      json manifest = {{"tool", "premise"},
                       {"version", kVersion},
                       {"command", "mine"},
                       {"config", config_json},
                       {"inputs", inputs_json},
                       {"run_digest", run_digest},
                       {"wall_ms", wall},
                       {"rounds", report.rounds},
                       {"baseline_bits", report.baseline_bits},
                       {"final_bits", report.final_bits}};
      write_manifest(a.output + ".manifest.json", manifest);
    }
  });
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string preset;
  std::vector<double> values;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string host_path;
  // planted / xor knobs
  std::uint32_t n_patterns = 12;
  std::uint32_t len_min = 1, len_max = 5;
  double shift_noise = 1.0, label_noise = 0.0;
  std::uint32_t clauses_min = 1, clauses_max = 5;
  std::uint32_t clause_len_min = 1, clause_len_max = 5;
  std::uint32_t dim = 32;
  // host knobs
  std::uint32_t host_transactions = 3400;
  std::uint32_t host_vocab = 2000;
  double zipf_exponent = 1.05;
  std::uint32_t collocation_pairs = 100;
  double collocation_strength = 0.85;
};

void emit_dataset(const std::string& stem, const GenResult& gen, const json& config_json,
                  std::uint64_t seed, long wall_ms) {
  write_data_file(stem + ".data", gen.db);
  write_truth_file(stem + ".truth", gen.truth.to_tokens(gen.db.vocab()));
  json inputs = json::object();
  json manifest = {{"tool", "premise"},
                   {"version", kVersion},
                   {"command", "gen"},
                   {"config", config_json},
                   {"inputs", inputs},
                   {"seed", seed},
                   {"run_digest", run_digest_of(config_json, inputs)},
                   {"wall_ms", wall_ms},
                   {"outputs", {stem + ".data", stem + ".truth"}}};
  write_manifest(stem + ".manifest.json", manifest);
}

void cmd_gen(CLI::App& app, GenArgs& a) {
  app.add_option("--preset", a.preset, "base|items|ratio|shift|noise|planted|xor|host")
      ->required();
  app.add_option("--value", a.values, "axis value(s), one dataset per value");
  app.add_option("--seed", a.seed, "generator seed")->capture_default_str();
  app.add_option("--out", a.out_dir, "output directory")->capture_default_str();
  app.add_option("--host", a.host_path, "host corpus (planted/xor presets)");
  app.add_option("--patterns", a.n_patterns, "number of planted patterns")->capture_default_str();
  app.add_option("--len-min", a.len_min, "min pattern length (planted)")->capture_default_str();
  app.add_option("--len-max", a.len_max, "max pattern length (planted)")->capture_default_str();
  app.add_option("--shift-noise", a.shift_noise, "carrier positive-label probability")->capture_default_str();
  app.add_option("--label-noise", a.label_noise, "positive fraction of pattern-free instances")->capture_default_str();
  app.add_option("--clauses-min", a.clauses_min, "min clauses per pattern (xor)")->capture_default_str();
  app.add_option("--clauses-max", a.clauses_max, "max clauses per pattern (xor)")->capture_default_str();
  app.add_option("--clause-len-min", a.clause_len_min, "min items per clause (xor)")->capture_default_str();
  app.add_option("--clause-len-max", a.clause_len_max, "max items per clause (xor)")->capture_default_str();
  app.add_option("--dim", a.dim, "synthetic embedding dimension (xor)")->capture_default_str();
  app.add_option("--transactions", a.host_transactions, "host size (host preset)")->capture_default_str();
  app.add_option("--vocab", a.host_vocab, "host vocabulary size (host preset)")->capture_default_str();
  app.add_option("--zipf-exponent", a.zipf_exponent, "host token frequency exponent")->capture_default_str();
  app.add_option("--collocation-pairs", a.collocation_pairs, "collocated token pairs (host preset)")
      ->capture_default_str();
  app.add_option("--collocation-strength", a.collocation_strength,
                 "partner co-draw probability (host preset)")
      ->capture_default_str();

  app.callback([&]() {
    const auto t0 = Clock::now();
    auto wall = [&] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    };
    const std::string dir = a.out_dir + "/";

    if (a.preset == "base") {
      BaseGenConfig cfg;
      cfg.seed = a.seed;
      json cj = {{"preset", "base"}, {"seed", a.seed}};
      emit_dataset(dir + "base-seed" + std::to_string(a.seed), gen_base(cfg), cj, a.seed, wall());
      return;
    }
    if (a.preset == "items" || a.preset == "ratio" || a.preset == "shift" ||
        a.preset == "noise") {
      if (a.values.empty())
        throw CLI::ValidationError("--value", "axis presets need at least one --value");
      const Axis axis = axis_from_name(a.preset);
      BaseGenConfig base;
      base.seed = a.seed;
      for (double v : a.values) {
        BaseGenConfig cfg = axis_config(axis, v, base);
        json cj = {{"preset", a.preset}, {"value", v}, {"seed", a.seed},
                   {"derived_seed", cfg.seed}};
        emit_dataset(dir + a.preset + "-" + format_double(v) + "-seed" + std::to_string(a.seed),
                     gen_base(cfg), cj, cfg.seed, wall());
      }
      return;
    }
    if (a.preset == "planted") {
      if (a.host_path.empty()) throw CLI::ValidationError("--host", "planted preset needs --host");
      HostCorpus host = load_host_file(a.host_path);
      PlantedGenConfig cfg;
      cfg.n_patterns = a.n_patterns;
      cfg.pattern_len_min = a.len_min;
      cfg.pattern_len_max = a.len_max;
      cfg.shift_noise = a.shift_noise;
      cfg.label_noise = a.label_noise;
      cfg.seed = a.seed;
      json cj = {{"preset", "planted"},     {"host", a.host_path},
                 {"patterns", a.n_patterns}, {"len_min", a.len_min},
                 {"len_max", a.len_max},     {"shift_noise", a.shift_noise},
                 {"label_noise", a.label_noise}, {"seed", a.seed}};
      emit_dataset(dir + "planted-seed" + std::to_string(a.seed), gen_planted(host, cfg), cj,
                   a.seed, wall());
      return;
    }
    if (a.preset == "xor") {
      if (a.host_path.empty()) throw CLI::ValidationError("--host", "xor preset needs --host");
      HostCorpus host = load_host_file(a.host_path);
      XorGenConfig cfg;
      cfg.n_patterns = a.n_patterns;
      cfg.clause_count_min = a.clauses_min;
      cfg.clause_count_max = a.clauses_max;
      cfg.clause_len_min = a.clause_len_min;
      cfg.clause_len_max = a.clause_len_max;
      cfg.embedding_dim = a.dim;
      cfg.shift_noise = a.shift_noise;
      cfg.label_noise = a.label_noise;
      cfg.seed = a.seed;
      XorGenResult res = gen_xor(host, cfg);
      const std::string stem = dir + "xor-seed" + std::to_string(a.seed);
      json cj = {{"preset", "xor"},          {"host", a.host_path},
                 {"patterns", a.n_patterns}, {"clauses_min", a.clauses_min},
                 {"clauses_max", a.clauses_max}, {"clause_len_min", a.clause_len_min},
                 {"clause_len_max", a.clause_len_max}, {"dim", a.dim},
                 {"shift_noise", a.shift_noise}, {"label_noise", a.label_noise},
                 {"seed", a.seed}};
      write_vectors_file(stem + ".vec", res.embeddings, res.db.vocab());
      emit_dataset(stem, GenResult{std::move(res.db), std::move(res.truth)}, cj, a.seed, wall());
      return;
    }
    if (a.preset == "host") {
      ZipfHostConfig cfg;
      cfg.n_transactions = a.host_transactions;
      cfg.vocab_size = a.host_vocab;
      cfg.exponent = a.zipf_exponent;
      cfg.collocation_pairs = a.collocation_pairs;
      cfg.collocation_strength = a.collocation_strength;
      cfg.seed = a.seed;
      HostCorpus host = gen_zipf_host(cfg);
      const std::string path = dir + "host-seed" + std::to_string(a.seed) + ".data";
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
      for (const auto& tx : host.transactions) {
        out << "-\t";
        for (std::size_t i = 0; i < tx.size(); ++i) {
          if (i) out << ' ';
          out << host.vocab.token(tx[i]);
        }
        out << '\n';
      }
      json cj = {{"preset", "host"},
                 {"transactions", a.host_transactions},
                 {"vocab", a.host_vocab},
                 {"zipf_exponent", a.zipf_exponent},
                 {"collocation_pairs", a.collocation_pairs},
                 {"collocation_strength", a.collocation_strength},
                 {"seed", a.seed}};
      json inputs = json::object();
      json manifest = {{"tool", "premise"},       {"version", kVersion},
                       {"command", "gen"},        {"config", cj},
                       {"inputs", inputs},        {"seed", a.seed},
                       {"run_digest", run_digest_of(cj, inputs)},
                       {"wall_ms", wall()},       {"outputs", {path}}};
      write_manifest(path + ".manifest.json", manifest);
      return;
    }
    throw CLI::ValidationError("--preset", "unknown preset '" + a.preset + "'");
  });
}

// ---- eval ------------------------------------------------------------------

void cmd_eval(CLI::App& app) {
  auto patterns = std::make_shared<std::vector<std::string>>();
  auto truths = std::make_shared<std::vector<std::string>>();
  auto metric = std::make_shared<std::string>("both");

  app.add_option("--patterns", *patterns, "discovered pattern file(s)")->required();
  app.add_option("--truth", *truths, "ground truth file(s); one, or one per pattern file")
      ->required();
  app.add_option("--metric", *metric, "f1|soft-f1|both")->capture_default_str()
      ->check(CLI::IsMember({"f1", "soft-f1", "both"}));

  app.callback([patterns, truths, metric]() {
    if (truths->size() != 1 && truths->size() != patterns->size())
      throw CLI::ValidationError("--truth", "need one truth file or one per pattern file");

    std::vector<double> f1s, softs;
    for (std::size_t i = 0; i < patterns->size(); ++i) {
      const auto found = load_pattern_sets_file((*patterns)[i]);
      const auto truth =
          load_pattern_sets_file(truths->size() == 1 ? (*truths)[0] : (*truths)[i]);
      const auto cmp = compare_pattern_sets(found, truth);
      f1s.push_back(cmp.f1);
      softs.push_back(cmp.soft_f1);
    }
    auto mean_se = [](const std::vector<double>& xs) {
      double mean = 0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double var = 0;
      for (double x : xs) var += (x - mean) * (x - mean);
      const double se =
          xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) /
                              std::sqrt(static_cast<double>(xs.size()))
                        : 0.0;
      return std::pair<double, double>{mean, se};
    };

    const auto [f1m, f1se] = mean_se(f1s);
    const auto [sm, sse] = mean_se(softs);
    std::string line = "RESULT\tn=" + std::to_string(f1s.size());
    char buf[160];
    if (*metric == "f1" || *metric == "both") {
      std::snprintf(buf, sizeof buf, "\tf1_mean=%.6f\tf1_stderr=%.6f", f1m, f1se);
      line += buf;
    }
    if (*metric == "soft-f1" || *metric == "both") {
      std::snprintf(buf, sizeof buf, "\tsoft_f1_mean=%.6f\tsoft_f1_stderr=%.6f", sm, sse);
      line += buf;
    }
    std::cout << line << '\n';
    for (std::size_t i = 0; i < f1s.size(); ++i) {
      std::snprintf(buf, sizeof buf, "  pair %zu: f1 %.4f  soft-f1 %.4f", i + 1, f1s[i],
                    softs[i]);
      std::cout << buf << '\n';
    }
  });
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"MDL-based label-descriptive pattern mining"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* mine = app.add_subcommand("mine", "mine label-descriptive patterns");
  MineArgs mine_args;
  cmd_mine(*mine, mine_args);
  auto* gen = app.add_subcommand("gen", "generate benchmark datasets");
  GenArgs gen_args;
  cmd_gen(*gen, gen_args);
  auto* eval = app.add_subcommand("eval", "score pattern sets against ground truth");
  cmd_eval(*eval);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

}  // namespace premise::cli
