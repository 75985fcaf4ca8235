#include "premise/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "premise/rng.hpp"

namespace premise {

namespace {

bool skip_line(const std::string& line) {
  return line.empty() || line[0] == '#';
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

LabeledDatabase load_data(std::istream& in, const DataLoadOptions& opts) {
  Vocabulary vocab;
  std::vector<Transaction> txs;
  std::string line;
  std::size_t line_no = 0;
  bool saw_neg = false, saw_pos = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_line(line)) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError(line_no, "expected '<label>\\t<tokens>'");
    const std::string label_field = line.substr(0, tab);
    Transaction tx;
    if (label_field == "+")
      tx.label = Label::Pos;
    else if (label_field == "-")
      tx.label = Label::Neg;
    else
      throw FormatError(line_no, "label must be '+' or '-', got '" + label_field + "'");
    (tx.label == Label::Pos ? saw_pos : saw_neg) = true;
    for (const auto& tok : split_ws(line.substr(tab + 1))) tx.items.push_back(vocab.intern(tok));
    txs.push_back(std::move(tx));
  }
  if (txs.empty()) throw DomainError("input contains no transactions");
  if (opts.require_both_labels && (!saw_neg || !saw_pos))
    throw DomainError("input must contain both labels");
  return LabeledDatabase::build(std::move(vocab), std::move(txs));
}

LabeledDatabase load_data_file(const std::string& path, const DataLoadOptions& opts) {
  auto in = open_in(path);
  return load_data(in, opts);
}

void write_data(std::ostream& out, const LabeledDatabase& db) {
  for (Tid t = 0; t < db.size(); ++t) {
    const Transaction& tx = db.transaction(t);
    out << (tx.label == Label::Pos ? '+' : '-') << '\t';
    for (std::size_t i = 0; i < tx.items.size(); ++i) {
      if (i) out << ' ';
      out << db.vocab().token(tx.items[i]);
    }
    out << '\n';
  }
}

void write_data_file(const std::string& path, const LabeledDatabase& db) {
  auto out = open_out(path);
  write_data(out, db);
}

HostCorpus load_host_file(const std::string& path) {
  auto in = open_in(path);
  HostCorpus host;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_line(line)) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError(line_no, "expected '<label>\\t<tokens>'");
    std::vector<ItemId> items;
    for (const auto& tok : split_ws(line.substr(tab + 1))) items.push_back(host.vocab.intern(tok));
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    host.transactions.push_back(std::move(items));
  }
  if (host.transactions.empty()) throw DomainError("host corpus contains no transactions");
  return host;
}

// ---- truth ----------------------------------------------------------------

TokenPattern pattern_to_tokens(const Pattern& p, const Vocabulary& vocab) {
  TokenPattern tp;
  tp.clauses.reserve(p.clauses.size());
  for (const auto& cl : p.clauses) {
    std::vector<std::string> toks;
    toks.reserve(cl.items.size());
    for (ItemId i : cl.items) toks.push_back(vocab.token(i));
    tp.clauses.push_back(std::move(toks));
  }
  return tp;
}

namespace {

void write_token_pattern(std::ostream& out, const TokenPattern& p) {
  for (std::size_t c = 0; c < p.clauses.size(); ++c) {
    if (c) out << " & ";
    for (std::size_t i = 0; i < p.clauses[c].size(); ++i) {
      if (i) out << '|';
      out << p.clauses[c][i];
    }
  }
}

TokenPattern parse_token_pattern(const std::string& text, std::size_t line_no) {
  TokenPattern p;
  std::string buf = text;
  // clause separator is '&' (with optional surrounding spaces)
  std::vector<std::string> clause_texts;
  std::size_t start = 0;
  while (true) {
    const std::size_t amp = buf.find('&', start);
    clause_texts.push_back(buf.substr(start, amp == std::string::npos ? amp : amp - start));
    if (amp == std::string::npos) break;
    start = amp + 1;
  }
  for (auto& ct : clause_texts) {
    std::vector<std::string> items;
    std::istringstream ss(ct);
    std::string field;
    std::string joined;
    while (ss >> field) joined += joined.empty() ? field : (" " + field);
    if (joined.empty()) throw FormatError(line_no, "empty clause");
    std::size_t pos = 0;
    while (true) {
      const std::size_t bar = joined.find('|', pos);
      std::string tok = joined.substr(pos, bar == std::string::npos ? bar : bar - pos);
      if (tok.empty() || tok.find(' ') != std::string::npos)
        throw FormatError(line_no, "malformed clause '" + ct + "'");
      items.push_back(tok);
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    p.clauses.push_back(std::move(items));
  }
  return p;
}

}  // namespace

void write_truth(std::ostream& out, const std::vector<TokenPattern>& patterns) {
  out << "# premise-truth v1\n";
  for (const auto& p : patterns) {
    write_token_pattern(out, p);
    out << '\n';
  }
}

void write_truth_file(const std::string& path, const std::vector<TokenPattern>& patterns) {
  auto out = open_out(path);
  write_truth(out, patterns);
}

std::vector<TokenPattern> load_truth(std::istream& in) {
  std::vector<TokenPattern> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_line(line)) continue;
    out.push_back(parse_token_pattern(line, line_no));
  }
  return out;
}

// ---- report ----------------------------------------------------------------

void write_report(std::ostream& out, const Report& report) {
  out << "# premise-report v1\n";
  out << "# run " << report.run_digest << '\n';
  out << "# baseline_bits " << format_double(report.baseline_bits) << '\n';
  out << "# final_bits " << format_double(report.final_bits) << '\n';
  out << "# rounds " << report.rounds << '\n';
  out << "# columns: side pattern support_neg support_pos gain_bits p_value round\n";
  for (const auto& e : report.entries) {
    out << e.side << '\t';
    write_token_pattern(out, e.pattern);
    out << '\t' << e.support_neg << '\t' << e.support_pos << '\t' << format_double(e.gain_bits)
        << '\t' << format_double(e.p_value) << '\t' << e.round << '\n';
  }
}

void write_report_file(const std::string& path, const Report& report) {
  auto out = open_out(path);
  write_report(out, report);
}

Report load_report(std::istream& in) {
  Report report;
  std::string line;
  std::size_t line_no = 0;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "premise-report") saw_magic = true;
      else if (key == "run") hs >> report.run_digest;
      else if (key == "baseline_bits") hs >> report.baseline_bits;
      else if (key == "final_bits") hs >> report.final_bits;
      else if (key == "rounds") hs >> report.rounds;
      continue;
    }
    if (!saw_magic) throw FormatError(line_no, "not a pattern report (missing header)");
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 7) throw FormatError(line_no, "expected 7 tab-separated fields");
    ReportEntry e;
    if (fields[0] != "+" && fields[0] != "-") throw FormatError(line_no, "bad side field");
    e.side = fields[0];
    e.pattern = parse_token_pattern(fields[1], line_no);
    try {
      e.support_neg = static_cast<std::uint32_t>(std::stoul(fields[2]));
      e.support_pos = static_cast<std::uint32_t>(std::stoul(fields[3]));
      e.gain_bits = std::stod(fields[4]);
      e.p_value = std::stod(fields[5]);
      e.round = static_cast<std::uint32_t>(std::stoul(fields[6]));
    } catch (const std::exception&) {
      throw FormatError(line_no, "malformed numeric field");
    }
    report.entries.push_back(std::move(e));
  }
  if (!saw_magic) throw FormatError(1, "not a pattern report (missing header)");
  return report;
}

Report load_report_file(const std::string& path) {
  auto in = open_in(path);
  return load_report(in);
}

std::vector<TokenPattern> load_pattern_sets_file(const std::string& path) {
  auto in = open_in(path);
  std::string first;
  std::getline(in, first);
  in.seekg(0);
  if (first.rfind("# premise-report", 0) == 0) {
    Report r = load_report(in);
    std::vector<TokenPattern> out;
    out.reserve(r.entries.size());
    for (auto& e : r.entries) out.push_back(std::move(e.pattern));
    return out;
  }
  return load_truth(in);
}

// ---- digests / formatting ---------------------------------------------------

std::uint64_t digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for digest");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    h = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace premise
