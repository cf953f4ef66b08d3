#pragma once

// Dataset rows and their JSONL/CSV forms, corpus statistics, the corpus
// manifest, parallel corpus processing and the Mace4 exporter.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "puzzte/domains.h"
#include "puzzte/model_finder.h"
#include "puzzte/questions.h"

namespace puzzte {

// Schema (one JSON object per line):
//   {"puzzle_id": "puzzle2", "domain": "comparison", "puzzle_text": "...",
//    "removed_clues": ["Katy is shorter than Mike."],
//    "question": "Is Katy taller than Bob ?", "fol": "taller(Katy,Bob)",
//    "label": "entailment", "ambiguity_level": 0.1}
struct DatasetRow {
  std::string puzzle_id;
  std::string domain;
  std::string puzzle_text;
  std::vector<std::string> removed_clues;
  std::string question;
  std::string fol;
  Label label = Label::kUnknown;
  double ambiguity_level = 0.0;

  bool operator==(const DatasetRow&) const = default;
  auto operator<=>(const DatasetRow&) const = default;
};

std::vector<DatasetRow> to_rows(const AnalyzedPuzzle& puzzle);

enum class DatasetFormat { kJsonl, kCsv };
DatasetFormat parse_format(std::string_view name);
// .csv means CSV, anything else JSONL.
DatasetFormat format_for_path(std::string_view path);

std::string to_json_line(const DatasetRow& row);
// Throws InvalidArgument on malformed JSON or a schema violation.
DatasetRow parse_json_line(std::string_view line);

void write_jsonl(std::ostream& out, const std::vector<DatasetRow>& rows);
// Errors carry the 1-based line number.
std::vector<DatasetRow> read_jsonl(std::istream& in);

// RFC 4180 with a header row; removed_clues is a JSON array in one field.
void write_csv(std::ostream& out, const std::vector<DatasetRow>& rows);
std::vector<DatasetRow> read_csv(std::istream& in);

void write_dataset(const std::string& path, DatasetFormat format,
                   const std::vector<DatasetRow>& rows);
// Throws Io when the file cannot be opened.
std::vector<DatasetRow> read_dataset(const std::string& path);

struct StatsCell {
  std::size_t puzzles = 0;
  std::size_t questions = 0;
  std::size_t entailment = 0;
  std::size_t contradiction = 0;
  std::size_t unknown = 0;

  StatsCell& operator+=(const StatsCell& o);
  bool operator==(const StatsCell&) const = default;
};

// Complete puzzles have no unknown answer; every other puzzle counts as
// ambiguous.
struct DomainStats {
  std::string domain;
  StatsCell complete;
  StatsCell ambiguous;
  std::array<std::size_t, 4> histogram{};  // indexed like kHistogramBins

  StatsCell total() const;
  bool operator==(const DomainStats&) const = default;
};

struct CorpusStats {
  std::vector<DomainStats> domains;  // comparison, knights_knaves, zebra, then others
  DomainStats total;
  std::vector<std::string> violations;

  bool operator==(const CorpusStats&) const = default;
};

// Groups rows by puzzle id and checks that each puzzle's rows agree on
// domain, text and ambiguity level, that the stored level equals
// unknown / total, that no question repeats, and that the totals partition.
CorpusStats compute_stats(const std::vector<DatasetRow>& rows);

// Aligned table with Complete and Ambiguity column groups, then the
// ambiguity histogram.
std::string format_stats(const CorpusStats& stats);

struct ManifestEntry {
  std::string file;
  DomainKind domain = DomainKind::kComparison;
  std::string id;
};

// `manifest.tsv` rows: file, domain, optional id (default: file stem).
// Blank lines and lines starting with '#' are skipped.
std::vector<ManifestEntry> parse_manifest(std::string_view text);
// Throws Io when the manifest is missing.
std::vector<ManifestEntry> read_manifest(const std::string& corpus_dir);

struct DatasetOptions {
  std::size_t ambiguate = 0;     // clues removed per variant; 0 = complete puzzles only
  std::size_t max_variants = 0;  // per puzzle; 0 = every variant
  std::uint64_t seed = 0;        // used only when max_variants caps the variants
  std::size_t cap = kDefaultModelCap;
  std::size_t workers = 0;       // 0 = hardware concurrency
  std::string grammar_dir;       // empty = default_grammar_dir()
  bool equality_extension = false;
};

struct PuzzleFailure {
  std::string file;
  std::string message;
};

struct CorpusResult {
  std::vector<AnalyzedPuzzle> puzzles;  // manifest order, each puzzle before its variants
  std::vector<PuzzleFailure> failures;

  std::vector<DatasetRow> rows() const;
};

// Per-puzzle failures are collected, not thrown. Throws InvalidArgument on
// an empty manifest.
CorpusResult build_corpus(const std::string& corpus_dir, const DatasetOptions& options);

// Writes <dir>/<id>.in with every axiom and clue as assumptions and an empty
// goals block, plus <dir>/<id>.q<N>.in per question with that atom as the
// goal. Returns the paths written.
std::vector<std::string> export_mace4(const PuzzleRecord& record, const DomainProfile& profile,
                                      const std::string& dir);

}  // namespace puzzte
