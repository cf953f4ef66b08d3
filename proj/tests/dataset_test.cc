#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "puzzte/dataset.h"
#include "puzzte/error.h"
#include "puzzte/fol_text.h"

namespace puzzte {
namespace {

namespace fs = std::filesystem;

const std::string kCorpus = std::string(PUZZTE_DATA_DIR) + "/corpus";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A scratch corpus directory holding copies of the named corpus files.
fs::path make_corpus(const std::string& name, const std::string& manifest) {
  fs::path dir = fs::path(::testing::TempDir()) / ("puzzte_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& e : fs::directory_iterator(kCorpus)) {
    if (e.path().extension() == ".txt") fs::copy_file(e.path(), dir / e.path().filename());
  }
  std::ofstream(dir / "manifest.tsv") << manifest;
  return dir;
}

DatasetRow sample_row() {
  DatasetRow r;
  r.puzzle_id = "puzzle2";
  r.domain = "comparison";
  r.puzzle_text = "Mike is taller than Sally, \"really\".\nTed is short.";
  r.removed_clues = {"Katy is shorter than Mike.", "a, \"b\""};
  r.question = "Is Katy taller than Bob ?";
  r.fol = "taller(Katy,Bob)";
  r.label = Label::kEntailment;
  r.ambiguity_level = 0.1;
  return r;
}

const CorpusResult& demo() {
  static const CorpusResult r = build_corpus(kCorpus, {});
  return r;
}

struct CliRun {
  int status;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(PUZZTE_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(Json, RoundTrip) {
  DatasetRow r = sample_row();
  std::string line = to_json_line(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(parse_json_line(line), r);
}

TEST(Json, RejectsSchemaViolations) {
  std::string good = to_json_line(sample_row());
  auto bad = [&](std::string from, std::string to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    try {
      parse_json_line(s);
      ADD_FAILURE() << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument) << s;
    }
  };
  bad("\"entailment\"", "\"maybe\"");
  bad("\"fol\":\"taller(Katy,Bob)\"", "\"fol\":\"taller(Katy,Bob) & p(A)\"");
  bad("\"fol\":\"taller(Katy,Bob)\"", "\"fol\":\"all x p(x)\"");
  bad("\"ambiguity_level\":0.1", "\"ambiguity_level\":\"0.1\"");
  bad("\"ambiguity_level\":0.1", "\"ambiguity_level\":1.5");
  bad("\"puzzle_id\":\"puzzle2\",", "");
  bad("{", "[");
  std::istringstream in(good + "\n\n" + good.substr(0, 10) + "\n");
  try {
    read_jsonl(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(Csv, RoundTripWithQuotesAndNewlines) {
  std::vector<DatasetRow> rows = {sample_row(), demo().rows().front()};
  std::stringstream s;
  write_csv(s, rows);
  EXPECT_EQ(read_csv(s), rows);
}

TEST(Csv, SameRowMultisetAsJsonl) {
  auto rows = demo().rows();
  std::stringstream j, c;
  write_jsonl(j, rows);
  write_csv(c, rows);
  auto a = read_jsonl(j);
  auto b = read_csv(c);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(Csv, RejectsMalformed) {
  std::stringstream s;
  write_csv(s, {sample_row()});
  std::string text = s.str();
  std::istringstream bad_header("puzzle_id,question\r\n");
  EXPECT_THROW(read_csv(bad_header), Error);
  std::istringstream unterminated(text + "\"oops,a,b\r\n");
  EXPECT_THROW(read_csv(unterminated), Error);
  std::string maybe = text;
  maybe.replace(maybe.find(",entailment,"), 12, ",maybe,");
  std::istringstream label(maybe);
  EXPECT_THROW(read_csv(label), Error);
}

TEST(Stats, DemoCorpusTotals) {
  CorpusStats s = compute_stats(demo().rows());
  EXPECT_TRUE(s.violations.empty());
  StatsCell t = s.total.total();
  EXPECT_EQ(t.puzzles, 5u);
  EXPECT_EQ(t.questions, 60u + 60u + 8u + 8u + 125u);
  EXPECT_EQ(t.entailment, 22u + 19u + 4u + 2u + 25u);
  EXPECT_EQ(t.contradiction, 38u + 35u + 4u + 2u + 100u);
  EXPECT_EQ(t.unknown, 6u + 4u);
  EXPECT_EQ(s.total.complete.puzzles, 3u);
  EXPECT_EQ(s.total.ambiguous.puzzles, 2u);
  ASSERT_EQ(s.domains.size(), 3u);
  EXPECT_EQ(s.domains[0].domain, "comparison");
  EXPECT_EQ(s.domains[2].domain, "zebra");
  EXPECT_EQ(s.total.histogram, (std::array<std::size_t, 4>{4, 0, 1, 0}));
}

TEST(Stats, PublishedPairs) {
  std::vector<DatasetRow> p12, p2;
  for (const auto& r : demo().rows()) {
    if (r.puzzle_id == "puzzle1" || r.puzzle_id == "puzzle2") p12.push_back(r);
    if (r.puzzle_id == "puzzle2") p2.push_back(r);
  }
  StatsCell t = compute_stats(p12).total.total();
  EXPECT_EQ(t.questions, 120u);
  EXPECT_EQ(t.entailment, 41u);
  EXPECT_EQ(t.contradiction, 73u);
  EXPECT_EQ(t.unknown, 6u);
  EXPECT_EQ(compute_stats(p2).total.histogram[0], 1u);
}

TEST(Stats, JsonlRoundTripReproducesStats) {
  auto rows = demo().rows();
  fs::path path = fs::path(::testing::TempDir()) / "puzzte_demo.jsonl";
  write_dataset(path.string(), DatasetFormat::kJsonl, rows);
  EXPECT_EQ(compute_stats(read_dataset(path.string())), compute_stats(rows));
  fs::path csv = fs::path(::testing::TempDir()) / "puzzte_demo.csv";
  write_dataset(csv.string(), DatasetFormat::kCsv, rows);
  EXPECT_EQ(compute_stats(read_dataset(csv.string())), compute_stats(rows));
}

TEST(Stats, ReportsViolations) {
  auto rows = demo().rows();
  rows[3].ambiguity_level = 0.5;
  EXPECT_FALSE(compute_stats(rows).violations.empty());
  rows = demo().rows();
  rows.push_back(rows.front());
  EXPECT_FALSE(compute_stats(rows).violations.empty());
}

TEST(Stats, TableLayout) {
  std::string table = format_stats(compute_stats(demo().rows()));
  EXPECT_NE(table.find("Complete"), std::string::npos);
  EXPECT_NE(table.find("Ambiguity"), std::string::npos);
  EXPECT_NE(table.find("5 puzzles, 261 questions: 72 entailment, 179 contradiction, 10 unknown"),
            std::string::npos);
}

TEST(Manifest, ParsesAndDefaultsIds) {
  auto m = parse_manifest("# comment\n\na.txt\tcomparison\nb.txt\tknights\tbee\r\n");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].id, "a");
  EXPECT_EQ(m[1].domain, DomainKind::kKnightsKnaves);
  EXPECT_EQ(m[1].id, "bee");
  try {
    parse_manifest("a.txt\tcomparison\nb.txt\tsudoku\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_manifest("a.txt\n"), Error);
  EXPECT_THROW(read_manifest("/nonexistent"), Error);
}

TEST(Corpus, OutputIndependentOfWorkers) {
  DatasetOptions one, many;
  one.workers = 1;
  many.workers = 5;
  one.ambiguate = many.ambiguate = 1;
  std::stringstream a, b;
  write_jsonl(a, build_corpus(kCorpus, one).rows());
  write_jsonl(b, build_corpus(kCorpus, many).rows());
  EXPECT_EQ(a.str(), b.str());
  EXPECT_FALSE(a.str().empty());
}

TEST(Corpus, AmbiguateOnePuzzle) {
  fs::path dir = make_corpus("p1", "puzzle1.txt\tcomparison\n");
  DatasetOptions opt;
  opt.ambiguate = 1;
  CorpusResult r = build_corpus(dir.string(), opt);
  ASSERT_EQ(r.puzzles.size(), 4u);
  EXPECT_EQ(r.puzzles[0].record.id, "puzzle1");
  std::size_t rows = 0;
  for (const auto& p : r.puzzles) rows += p.questions.size();
  EXPECT_EQ(r.rows().size(), rows);
  const AmbiguityReport& minus3 = r.puzzles[3].report;
  EXPECT_EQ(r.puzzles[3].record.id, "puzzle1-minus-3");
  EXPECT_EQ(minus3.entailment, 19u);
  EXPECT_EQ(minus3.contradiction, 35u);
  EXPECT_EQ(minus3.unknown, 6u);
}

TEST(Corpus, SeededVariantSampling) {
  fs::path dir = make_corpus("zebra", "zebra.txt\tzebra\n");
  DatasetOptions opt;
  opt.ambiguate = 1;
  opt.max_variants = 4;
  auto ids = [&](std::uint64_t seed) {
    opt.seed = seed;
    std::vector<std::string> out;
    for (const auto& p : build_corpus(dir.string(), opt).puzzles) out.push_back(p.record.id);
    return out;
  };
  auto a = ids(1);
  EXPECT_EQ(a.size(), 5u);
  EXPECT_EQ(a, ids(1));
  bool differs = false;
  for (std::uint64_t s = 2; s < 10 && !differs; ++s) differs = ids(s) != a;
  EXPECT_TRUE(differs);
}

TEST(Corpus, FailuresAreCollected) {
  fs::path dir = make_corpus("bad", "puzzle1.txt\tcomparison\nmissing.txt\tcomparison\n"
                                    "puzzle3.txt\tcomparison\n");
  CorpusResult r = build_corpus(dir.string(), {});
  EXPECT_EQ(r.puzzles.size(), 1u);
  ASSERT_EQ(r.failures.size(), 2u);
  EXPECT_EQ(r.failures[0].file, "missing.txt");
  EXPECT_EQ(r.failures[1].file, "puzzle3.txt");
  fs::path empty = make_corpus("empty", "# nothing\n");
  EXPECT_THROW(build_corpus(empty.string(), {}), Error);
}

TEST(Mace4, ExportReparsesAndCarriesGoals) {
  const DomainProfile kk = load_profile(DomainKind::kKnightsKnaves);
  PuzzleRecord p3 = build_puzzle("puzzle3", slurp(kCorpus + "/puzzle3.txt"), kk);
  fs::path dir = fs::path(::testing::TempDir()) / "puzzte_mace4";
  fs::remove_all(dir);
  auto files = export_mace4(p3, kk, dir.string());
  ASSERT_EQ(files.size(), 9u);
  std::string main = slurp(files[0]);
  EXPECT_NE(main.find("all x (knight(x) <-> -knave(x)).\n"), std::string::npos);
  EXPECT_NE(main.find("formulas(goals).\nend_of_list.\n"), std::string::npos);
  EXPECT_EQ(read_theory(main), p3.theory);
  EXPECT_EQ(fs::path(files[1]).filename(), "puzzle3.q1.in");
  EXPECT_NE(slurp(files[1]).find("formulas(goals).\nknight(Bart).\nend_of_list.\n"),
            std::string::npos);

  const DomainProfile cmp = load_profile(DomainKind::kComparison);
  PuzzleRecord p1 = build_puzzle("puzzle1", slurp(kCorpus + "/puzzle1.txt"), cmp);
  files = export_mace4(p1, cmp, dir.string());
  ASSERT_EQ(files.size(), 61u);
  EXPECT_NE(slurp(files[0]).find("taller(Mike,Sally) & shorter(Sally,Katy).\n"),
            std::string::npos);
  EXPECT_NE(slurp(files[12]).find("formulas(goals).\ntaller(Mike,Sally).\n"), std::string::npos);
  EXPECT_EQ(read_theory(slurp(files[0])), p1.theory);
}

TEST(Mace4, EmptyClueVariantHasBackgroundOnly) {
  const DomainProfile z = load_profile(DomainKind::kZebra);
  PuzzleRecord full = build_puzzle("zebra", slurp(kCorpus + "/zebra.txt"), z);
  std::vector<std::size_t> all(full.clues.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  PuzzleRecord bare = remove_clues(full, all, z);
  fs::path dir = fs::path(::testing::TempDir()) / "puzzte_mace4_bare";
  auto files = export_mace4(bare, z, dir.string());
  std::string main = slurp(files[0]);
  EXPECT_EQ(main.find("% clue"), std::string::npos);
  Theory back = read_theory(main);
  EXPECT_TRUE(back.clues.empty());
  EXPECT_EQ(back.axioms, bare.theory.axioms);
}

TEST(Cli, ParseSolveAndErrors) {
  CliRun r = cli("parse " + kCorpus + "/puzzle1.txt -d comparison");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("shorter(Katy,Mike)."), std::string::npos);
  EXPECT_NE(r.out.find("% background"), std::string::npos);

  r = cli("parse " + kCorpus + "/puzzle3.txt -d knights_knaves");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("m(Rex) <-> knave(Bart)."), std::string::npos);

  EXPECT_EQ(cli("solve " + kCorpus + "/puzzle1.txt -d comparison").out, "1 model\n");
  EXPECT_EQ(cli("solve " + kCorpus + "/puzzle2.txt -d comparison").out, "2 models\n");
  EXPECT_EQ(cli("solve " + kCorpus + "/zebra.txt -d zebra -r 9").out, "17 models\n");
  r = cli("solve " + kCorpus + "/puzzle3.txt -d knights --dump-models");
  EXPECT_NE(r.out.find("knave(Bart) knave(Dave) knight(Rex) knight(Sue)"), std::string::npos);

  fs::path bad = fs::path(::testing::TempDir()) / "malformed.txt";
  std::ofstream(bad) << "Katy are the tallest. Mike is taller than Bob.";
  r = cli("parse " + bad.string() + " -d comparison");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("sentence 1"), std::string::npos);

  EXPECT_EQ(cli("parse /nonexistent/p.txt -d comparison").status, 3);
  EXPECT_EQ(cli("parse " + kCorpus + "/puzzle1.txt -d sudoku").status, 2);
  EXPECT_EQ(cli("solve " + kCorpus + "/puzzle1.txt -d comparison -r 7").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
}

TEST(Cli, DatasetAndStats) {
  fs::path out = fs::path(::testing::TempDir()) / "puzzte_cli.jsonl";
  CliRun r = cli("dataset " + kCorpus + " -o " + out.string());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("261 questions"), std::string::npos);
  CliRun s = cli("stats " + out.string());
  EXPECT_EQ(s.status, 0);
  EXPECT_EQ(s.out, r.out);

  std::string text = slurp(out);
  text.replace(text.find("\"entailment\""), 12, "\"maybe\"");
  fs::path tampered = fs::path(::testing::TempDir()) / "puzzte_maybe.jsonl";
  std::ofstream(tampered) << text;
  EXPECT_EQ(cli("stats " + tampered.string()).status, 2);
  EXPECT_EQ(cli("stats /nonexistent.jsonl").status, 3);

  fs::path empty = make_corpus("cli_empty", "");
  EXPECT_EQ(cli("dataset " + empty.string() + " -o " + out.string()).status, 2);

  fs::path csv = fs::path(::testing::TempDir()) / "puzzte_cli.csv";
  EXPECT_EQ(cli("dataset " + kCorpus + " -o " + csv.string()).status, 0);
  EXPECT_EQ(cli("stats " + csv.string()).out, r.out);
}

TEST(Cli, ExportMace4) {
  fs::path dir = fs::path(::testing::TempDir()) / "puzzte_cli_mace4";
  fs::remove_all(dir);
  CliRun r = cli("export-mace4 " + kCorpus + "/puzzle3.txt -d knights -o " + dir.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(dir / "puzzle3.in"));
  EXPECT_TRUE(fs::exists(dir / "puzzle3.q8.in"));
}

}  // namespace
}  // namespace puzzte
