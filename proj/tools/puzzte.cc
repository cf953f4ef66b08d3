// puzzte: build first-order theories from logic puzzles, enumerate their
// models and emit labeled question datasets.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "puzzte/dataset.h"
#include "puzzte/domains.h"
#include "puzzte/error.h"
#include "puzzte/fol_text.h"
#include "puzzte/ground.h"
#include "puzzte/model_finder.h"
#include "puzzte/questions.h"

namespace {

using namespace puzzte;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

struct PuzzleArgs {
  std::string file;
  std::string domain;
  std::string grammar;
  std::vector<std::size_t> remove;  // 1-based
  bool equality = false;
};

void add_puzzle_args(CLI::App* cmd, PuzzleArgs& a) {
  cmd->add_option("file", a.file, "Puzzle text file")->required();
  cmd->add_option("-d,--domain", a.domain, "comparison, knights_knaves or zebra")->required();
  cmd->add_option("-g,--grammar", a.grammar, "Grammar file overriding the shipped one");
  cmd->add_option("-r,--remove", a.remove, "Clue numbers (1-based) to remove");
  cmd->add_flag("--equality", a.equality, "Enable sameTallAs/sameShortAs");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  DomainProfile profile;
  PuzzleRecord record;
};

Loaded load(const PuzzleArgs& a) {
  DomainKind kind = parse_domain(a.domain);
  Loaded out;
  out.profile = a.grammar.empty() ? load_profile(kind, default_grammar_dir(), a.equality)
                                  : load_profile_with_grammar(kind, a.grammar, a.equality);
  std::string text = slurp(a.file);
  std::string id = std::filesystem::path(a.file).stem().string();
  out.record = build_puzzle(id, text, out.profile);
  if (!a.remove.empty()) {
    std::vector<std::size_t> idx;
    for (std::size_t n : a.remove) {
      if (n == 0) throw Error(ErrorCode::kIndexOutOfRange, "clue numbers start at 1");
      idx.push_back(n - 1);
    }
    out.record = remove_clues(out.record, idx, out.profile);
  }
  return out;
}

int cmd_parse(const PuzzleArgs& a) {
  Loaded l = load(a);
  std::cout << write_theory(l.record.theory);
  return kExitOk;
}

int cmd_solve(const PuzzleArgs& a, bool dump, std::size_t cap) {
  Loaded l = load(a);
  GroundClauseSet clauses = ground(l.record.theory);
  ModelSet models = enumerate_models(clauses, cap);
  std::cout << (models.truncated ? "at least " : "") << models.size()
            << (models.size() == 1 ? " model" : " models") << "\n";
  if (dump) std::cout << models.serialize(clauses);
  return kExitOk;
}

int cmd_questions(const PuzzleArgs& a, std::size_t cap) {
  Loaded l = load(a);
  AnalyzedPuzzle p = analyze(l.record, l.profile, cap);
  for (const auto& q : p.questions) {
    std::cout << fmt::format("{:<13} {:<40} {}\n", to_string(q.label), q.text, to_string(q.query));
  }
  const auto& r = p.report;
  std::cout << fmt::format(
      "{}: {} {}, {} questions, {} entailment, {} contradiction, {} unknown, ambiguity "
      "{:.1f}% ({})\n",
      r.puzzle_id, r.model_count, r.model_count == 1 ? "model" : "models", r.total(), r.entailment, r.contradiction, r.unknown,
      100.0 * r.level, r.bin);
  return kExitOk;
}

int cmd_dataset(const std::string& corpus, const std::string& out_path, const std::string& format,
                const DatasetOptions& options) {
  CorpusResult result = build_corpus(corpus, options);
  auto rows = result.rows();
  DatasetFormat fmt = format.empty() ? format_for_path(out_path) : parse_format(format);
  if (out_path.empty() || out_path == "-") {
    if (fmt == DatasetFormat::kCsv) write_csv(std::cout, rows);
    else write_jsonl(std::cout, rows);
  } else {
    write_dataset(out_path, fmt, rows);
    std::cout << format_stats(compute_stats(rows));
  }
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " puzzle(s) failed\n";
    return kExitInput;
  }
  return kExitOk;
}

int cmd_stats(const std::string& path) {
  CorpusStats stats = compute_stats(read_dataset(path));
  std::cout << format_stats(stats);
  return stats.violations.empty() ? kExitOk : kExitInput;
}

int cmd_export(const PuzzleArgs& a, const std::string& dir) {
  Loaded l = load(a);
  auto files = export_mace4(l.record, l.profile, dir);
  std::cout << "wrote " << files.size() << " files to " << dir << "\n";
  return kExitOk;
}

int cmd_background(const std::string& domain, const std::vector<std::string>& individuals) {
  DomainProfile profile = load_profile(parse_domain(domain));
  Theory t;
  t.signature = profile.signature;
  if (profile.fixed_domain.empty()) {
    if (individuals.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "name at least one individual");
    }
    for (const auto& n : individuals) t.domain.push_back({n});
  } else {
    t.domain = profile.fixed_domain;
  }
  t.axioms = profile.background(t.domain);
  t.validate();
  std::cout << write_theory(t);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("puzzte");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^%l%$: %v");

  CLI::App app{"Logic puzzles to first-order theories and labeled question datasets"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  PuzzleArgs pa;
  std::size_t cap = kDefaultModelCap;
  bool dump = false;

  auto* parse = app.add_subcommand("parse", "Print the theory of a puzzle");
  add_puzzle_args(parse, pa);

  auto* solve = app.add_subcommand("solve", "Count, and optionally list, the models of a puzzle");
  add_puzzle_args(solve, pa);
  solve->add_flag("--dump-models", dump, "Print every model as its true atoms");
  solve->add_option("--cap", cap, "Stop after this many models")->check(CLI::PositiveNumber);

  auto* questions = app.add_subcommand("questions", "Label every atomic question of a puzzle");
  add_puzzle_args(questions, pa);
  questions->add_option("--cap", cap, "Model cap")->check(CLI::PositiveNumber);

  std::string corpus, out_path, format;
  DatasetOptions options;
  auto* dataset = app.add_subcommand("dataset", "Build a dataset from a corpus directory");
  dataset->add_option("corpus", corpus, "Directory with manifest.tsv")->required();
  dataset->add_option("-o,--out", out_path, "Output file; '-' or none for stdout");
  dataset->add_option("-k,--ambiguate", options.ambiguate, "Also emit every k-clue removal");
  dataset->add_option("-f,--format", format, "jsonl or csv (default: from --out)")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  dataset->add_option("--seed", options.seed, "Seed for --max-variants sampling");
  dataset->add_option("--max-variants", options.max_variants, "Sample at most this many variants");
  dataset->add_option("--cap", options.cap, "Model cap")->check(CLI::PositiveNumber);
  dataset->add_option("-j,--workers", options.workers, "Worker threads (0 = all cores)");
  dataset->add_option("-g,--grammar-dir", options.grammar_dir, "Grammar directory");
  dataset->add_flag("--equality", options.equality_extension, "Enable sameTallAs/sameShortAs");

  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "Recompute corpus statistics from a dataset file");
  stats->add_option("dataset", stats_path, "JSONL or CSV dataset")->required();

  std::string export_dir = ".";
  auto* exporter = app.add_subcommand("export-mace4", "Write Mace4/Prover9 input files");
  add_puzzle_args(exporter, pa);
  exporter->add_option("-o,--out", export_dir, "Output directory");

  std::string bg_domain;
  std::vector<std::string> bg_individuals;
  auto* background = app.add_subcommand("background", "Print the background theory of a domain");
  background->add_option("-d,--domain", bg_domain, "comparison, knights_knaves or zebra")
      ->required();
  background->add_option("individuals", bg_individuals, "Individuals (ignored for zebra)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

  try {
    if (*parse) return cmd_parse(pa);
    if (*solve) return cmd_solve(pa, dump, cap);
    if (*questions) return cmd_questions(pa, cap);
    if (*dataset) return cmd_dataset(corpus, out_path, format, options);
    if (*stats) return cmd_stats(stats_path);
    if (*exporter) return cmd_export(pa, export_dir);
    if (*background) return cmd_background(bg_domain, bg_individuals);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kIo ? kExitIo : kExitInput;
  }
  return kExitInput;
}
