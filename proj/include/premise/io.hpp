#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "premise/data.hpp"

namespace premise {

// Parse error with a 1-based line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- data files -----------------------------------------------------------
// One transaction per line: label field ("+" or "-"), a single TAB, then
// space-separated tokens. Blank lines and lines starting with '#' are
// ignored. Tokens repeated within a line collapse to one item.

struct DataLoadOptions {
  bool require_both_labels = false;  // reject single-label input (DomainError)
};

LabeledDatabase load_data(std::istream& in, const DataLoadOptions& opts = {});
LabeledDatabase load_data_file(const std::string& path, const DataLoadOptions& opts = {});

// Serialization is canonical: transactions in tid order, tokens within a
// line in vocabulary order, labels "+"/"-".
void write_data(std::ostream& out, const LabeledDatabase& db);
void write_data_file(const std::string& path, const LabeledDatabase& db);

// Host corpora reuse the data format; the label column is ignored.
struct HostCorpus {
  Vocabulary vocab;
  std::vector<std::vector<ItemId>> transactions;
};
HostCorpus load_host_file(const std::string& path);

// ---- truth files ----------------------------------------------------------
// "# premise-truth v1" header, then one pattern per line: clauses joined by
// " & ", items within a clause joined by "|". Tokens must not contain
// whitespace, '|', '&' or a leading '#'.

struct TokenPattern {
  std::vector<std::vector<std::string>> clauses;
};

TokenPattern pattern_to_tokens(const Pattern& p, const Vocabulary& vocab);

void write_truth(std::ostream& out, const std::vector<TokenPattern>& patterns);
void write_truth_file(const std::string& path, const std::vector<TokenPattern>& patterns);
std::vector<TokenPattern> load_truth(std::istream& in);

// ---- pattern reports ------------------------------------------------------
// "# premise-report v1" header plus run metadata lines, then one TAB-separated
// record per pattern, ordered by acceptance round:
//   side  clauses  support_neg  support_pos  gain_bits  p_value  round

struct ReportEntry {
  std::string side;  // "+" or "-"
  TokenPattern pattern;
  std::uint32_t support_neg = 0, support_pos = 0;
  double gain_bits = 0;
  double p_value = 1;
  std::uint32_t round = 0;
};

struct Report {
  std::string run_digest;  // hex digest of the resolved run configuration
  double baseline_bits = 0;
  double final_bits = 0;
  std::uint32_t rounds = 0;
  std::vector<ReportEntry> entries;
};

void write_report(std::ostream& out, const Report& report);
void write_report_file(const std::string& path, const Report& report);
Report load_report(std::istream& in);
Report load_report_file(const std::string& path);

// Reads pattern sets for evaluation from either a truth file or a report
// (detected by the header line; headerless files parse as truth format).
std::vector<TokenPattern> load_pattern_sets_file(const std::string& path);

// ---- digests / misc -------------------------------------------------------

std::uint64_t digest_file(const std::string& path);  // FNV-1a over the bytes
std::string hex64(std::uint64_t v);

std::string format_double(double v);  // shortest round-trip decimal rendering

}  // namespace premise
