#include "puzzte/dataset.h"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "puzzte/error.h"
#include "puzzte/fol_text.h"

namespace puzzte {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* const kColumns[] = {"puzzle_id", "question", "fol",           "label",
                                "domain",    "puzzle_text", "removed_clues", "ambiguity_level"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Error schema_error(const std::string& what) {
  return Error(ErrorCode::kInvalidArgument, "malformed dataset row: " + what);
}

DatasetRow from_json(const json& j) {
  if (!j.is_object()) throw schema_error("not a JSON object");
  auto text = [&](const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      throw schema_error(std::string("field ") + key + " missing or not a string");
    }
    return it->get<std::string>();
  };
  DatasetRow r;
  r.puzzle_id = text("puzzle_id");
  r.domain = text("domain");
  r.puzzle_text = text("puzzle_text");
  r.question = text("question");
  r.fol = text("fol");
  try {
    r.label = parse_label(text("label"));
  } catch (const Error& e) {
    throw schema_error(e.detail());
  }
  auto removed = j.find("removed_clues");
  if (removed == j.end() || !removed->is_array()) {
    throw schema_error("field removed_clues missing or not an array");
  }
  for (const auto& c : *removed) {
    if (!c.is_string()) throw schema_error("removed_clues holds a non-string");
    r.removed_clues.push_back(c.get<std::string>());
  }
  auto level = j.find("ambiguity_level");
  if (level == j.end() || !level->is_number()) {
    throw schema_error("field ambiguity_level missing or not a number");
  }
  r.ambiguity_level = level->get<double>();
  if (r.ambiguity_level < 0.0 || r.ambiguity_level > 1.0) {
    throw schema_error("ambiguity_level outside [0,1]");
  }
  try {
    Formula f = parse_formula(r.fol);
    if (f.kind() != Formula::Kind::kAtom || !is_closed(f)) {
      throw schema_error("fol is not a ground atom: " + r.fol);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) throw;
    throw schema_error("fol: " + e.detail());
  }
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits one CSV record; returns false at end of input.
bool next_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  ++line;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty() || was_quoted) {
        throw Error(ErrorCode::kInvalidArgument, "stray quote in CSV field", line);
      }
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\r' && in.peek() == '\n') {
      continue;
    } else if (c == '\n') {
      break;
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kInvalidArgument, "unterminated quoted CSV field", line);
  fields.push_back(std::move(field));
  return true;
}

const std::string& domain_name_for_order(std::size_t i) {
  static const std::string kNames[] = {"comparison", "knights_knaves", "zebra"};
  return kNames[i];
}

}  // namespace

std::vector<DatasetRow> to_rows(const AnalyzedPuzzle& puzzle) {
  std::vector<DatasetRow> out;
  const auto removed = puzzle.record.removed_clue_texts();
  for (const auto& q : puzzle.questions) {
    DatasetRow r;
    r.puzzle_id = puzzle.record.id;
    r.domain = std::string(to_string(puzzle.record.domain));
    r.puzzle_text = puzzle.record.text;
    r.removed_clues = removed;
    r.question = q.text;
    r.fol = to_string(q.query);
    r.label = q.label;
    r.ambiguity_level = puzzle.report.level;
    out.push_back(std::move(r));
  }
  return out;
}

DatasetFormat parse_format(std::string_view name) {
  if (name == "jsonl") return DatasetFormat::kJsonl;
  if (name == "csv") return DatasetFormat::kCsv;
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + std::string(name) + "'");
}

DatasetFormat format_for_path(std::string_view path) {
  return fs::path(path).extension() == ".csv" ? DatasetFormat::kCsv : DatasetFormat::kJsonl;
}

std::string to_json_line(const DatasetRow& row) {
  json j = json::object();
  j["puzzle_id"] = row.puzzle_id;
  j["domain"] = row.domain;
  j["puzzle_text"] = row.puzzle_text;
  j["removed_clues"] = row.removed_clues;
  j["question"] = row.question;
  j["fol"] = row.fol;
  j["label"] = std::string(to_string(row.label));
  j["ambiguity_level"] = row.ambiguity_level;
  return j.dump();
}

DatasetRow parse_json_line(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw schema_error("invalid JSON");
  return from_json(j);
}

void write_jsonl(std::ostream& out, const std::vector<DatasetRow>& rows) {
  for (const auto& r : rows) out << to_json_line(r) << '\n';
}

std::vector<DatasetRow> read_jsonl(std::istream& in) {
  std::vector<DatasetRow> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("line {}: {}", n, e.detail()), n);
    }
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<DatasetRow>& rows) {
  for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i ? "," : "") << kColumns[i];
  out << "\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.puzzle_id) << ',' << csv_field(r.question) << ',' << csv_field(r.fol)
        << ',' << to_string(r.label) << ',' << csv_field(r.domain) << ','
        << csv_field(r.puzzle_text) << ',' << csv_field(json(r.removed_clues).dump()) << ','
        << json(r.ambiguity_level).dump() << "\r\n";
  }
}

std::vector<DatasetRow> read_csv(std::istream& in) {
  std::vector<DatasetRow> out;
  std::vector<std::string> fields;
  std::size_t line = 0;
  if (!next_record(in, fields, line)) return out;
  if (fields.size() != std::size(kColumns) ||
      !std::equal(fields.begin(), fields.end(), std::begin(kColumns))) {
    throw Error(ErrorCode::kInvalidArgument, "unexpected CSV header", 1);
  }
  while (true) {
    std::size_t start = line + 1;
    if (!next_record(in, fields, line)) break;
    if (fields.size() == 1 && fields[0].empty()) continue;
    try {
      if (fields.size() != std::size(kColumns)) {
        throw schema_error(fmt::format("{} fields, expected {}", fields.size(),
                                       std::size(kColumns)));
      }
      json j = json::object();
      for (std::size_t i = 0; i < 6; ++i) j[kColumns[i]] = fields[i];
      j["removed_clues"] = json::parse(fields[6], nullptr, false);
      j["ambiguity_level"] = json::parse(fields[7], nullptr, false);
      out.push_back(from_json(j));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("line {}: {}", start, e.detail()), start);
    }
  }
  return out;
}

void write_dataset(const std::string& path, DatasetFormat format,
                   const std::vector<DatasetRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  if (format == DatasetFormat::kCsv) {
    write_csv(out, rows);
  } else {
    write_jsonl(out, rows);
  }
  if (!out) throw Error(ErrorCode::kIo, "error writing " + path);
}

std::vector<DatasetRow> read_dataset(const std::string& path) {
  std::istringstream in(read_file(path));
  return format_for_path(path) == DatasetFormat::kCsv ? read_csv(in) : read_jsonl(in);
}

StatsCell& StatsCell::operator+=(const StatsCell& o) {
  puzzles += o.puzzles;
  questions += o.questions;
  entailment += o.entailment;
  contradiction += o.contradiction;
  unknown += o.unknown;
  return *this;
}

StatsCell DomainStats::total() const {
  StatsCell t = complete;
  t += ambiguous;
  return t;
}

CorpusStats compute_stats(const std::vector<DatasetRow>& rows) {
  struct Group {
    const DatasetRow* first = nullptr;
    StatsCell cell;
    std::set<std::string> seen;
  };
  std::vector<std::string> order;
  std::map<std::string, Group> groups;
  CorpusStats stats;

  for (const auto& r : rows) {
    auto [it, fresh] = groups.try_emplace(r.puzzle_id);
    Group& g = it->second;
    if (fresh) {
      order.push_back(r.puzzle_id);
      g.first = &r;
    } else if (r.domain != g.first->domain || r.puzzle_text != g.first->puzzle_text ||
               r.removed_clues != g.first->removed_clues ||
               r.ambiguity_level != g.first->ambiguity_level) {
      stats.violations.push_back(r.puzzle_id + ": rows disagree on puzzle attributes");
    }
    if (!g.seen.insert(r.fol).second) {
      stats.violations.push_back(r.puzzle_id + ": repeated question " + r.fol);
    }
    ++g.cell.questions;
    switch (r.label) {
      case Label::kEntailment: ++g.cell.entailment; break;
      case Label::kContradiction: ++g.cell.contradiction; break;
      case Label::kUnknown: ++g.cell.unknown; break;
    }
  }

  std::map<std::string, DomainStats> by_domain;
  std::vector<std::string> extra_domains;
  for (const auto& id : order) {
    Group& g = groups[id];
    g.cell.puzzles = 1;
    const std::string& domain = g.first->domain;
    auto [it, fresh] = by_domain.try_emplace(domain);
    if (fresh) {
      it->second.domain = domain;
      bool known = false;
      for (std::size_t i = 0; i < 3; ++i) known = known || domain_name_for_order(i) == domain;
      if (!known) extra_domains.push_back(domain);
    }
    DomainStats& d = it->second;
    (g.cell.unknown == 0 ? d.complete : d.ambiguous) += g.cell;
    double level = static_cast<double>(g.cell.unknown) / static_cast<double>(g.cell.questions);
    if (std::abs(level - g.first->ambiguity_level) > 1e-9) {
      stats.violations.push_back(fmt::format("{}: stored ambiguity level {} but {}/{} unknown",
                                             id, g.first->ambiguity_level, g.cell.unknown,
                                             g.cell.questions));
    }
    std::string_view bin = histogram_bin(level);
    for (std::size_t i = 0; i < 4; ++i) d.histogram[i] += kHistogramBins[i] == bin ? 1 : 0;
  }

  stats.total.domain = "total";
  auto add = [&](const DomainStats& d) {
    stats.domains.push_back(d);
    stats.total.complete += d.complete;
    stats.total.ambiguous += d.ambiguous;
    for (std::size_t i = 0; i < 4; ++i) stats.total.histogram[i] += d.histogram[i];
  };
  for (std::size_t i = 0; i < 3; ++i) {
    auto it = by_domain.find(domain_name_for_order(i));
    if (it != by_domain.end()) add(it->second);
  }
  for (const auto& name : extra_domains) add(by_domain[name]);

  StatsCell t = stats.total.total();
  if (t.entailment + t.contradiction + t.unknown != t.questions || t.questions != rows.size()) {
    stats.violations.push_back(fmt::format("label counts {}+{}+{} do not partition {} questions",
                                           t.entailment, t.contradiction, t.unknown,
                                           rows.size()));
  }
  std::size_t binned = std::accumulate(stats.total.histogram.begin(),
                                       stats.total.histogram.end(), std::size_t{0});
  if (binned != t.puzzles || t.puzzles != order.size()) {
    stats.violations.push_back(fmt::format("histogram holds {} of {} puzzles", binned,
                                           order.size()));
  }
  return stats;
}

std::string format_stats(const CorpusStats& stats) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"", "Complete", "", "", "", "Ambiguity", "", "", "", ""});
  table.push_back({"Domain", "No", "Questions", "Ent", "Contr", "No", "Questions", "Ent", "Contr",
                   "Unknown"});
  auto row = [&](const DomainStats& d) {
    const StatsCell& c = d.complete;
    const StatsCell& a = d.ambiguous;
    table.push_back({d.domain, std::to_string(c.puzzles), std::to_string(c.questions),
                     std::to_string(c.entailment), std::to_string(c.contradiction),
                     std::to_string(a.puzzles), std::to_string(a.questions),
                     std::to_string(a.entailment), std::to_string(a.contradiction),
                     std::to_string(a.unknown)});
  };
  for (const auto& d : stats.domains) row(d);
  row(stats.total);

  std::vector<std::size_t> width(table[1].size(), 0);
  for (const auto& r : table) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : table) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i == 1 || i == 5) line += " | ";
      else if (i > 0) line += "  ";
      line += i == 0 ? fmt::format("{:<{}}", r[i], width[i]) : fmt::format("{:>{}}", r[i], width[i]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }

  const StatsCell t = stats.total.total();
  out += fmt::format("\n{} puzzles, {} questions: {} entailment, {} contradiction, {} unknown\n",
                     t.puzzles, t.questions, t.entailment, t.contradiction, t.unknown);
  out += "\nAmbiguity histogram\n";
  for (std::size_t i = 0; i < 4; ++i) {
    out += fmt::format("  {:<7} {}\n", kHistogramBins[i], stats.total.histogram[i]);
  }
  if (!stats.violations.empty()) {
    out += "\nConsistency violations\n";
    for (const auto& v : stats.violations) out += "  " + v + "\n";
  }
  return out;
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, '\t');) cols.push_back(c);
    if (cols.size() < 2 || cols.size() > 3 || cols[0].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("manifest line {}: expected file, domain and optional id", n), n);
    }
    ManifestEntry e;
    e.file = cols[0];
    try {
      e.domain = parse_domain(cols[1]);
    } catch (const Error& err) {
      throw Error(err.code(), fmt::format("manifest line {}: {}", n, err.detail()), n);
    }
    e.id = cols.size() == 3 && !cols[2].empty() ? cols[2] : fs::path(e.file).stem().string();
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::string& corpus_dir) {
  return parse_manifest(read_file((fs::path(corpus_dir) / "manifest.tsv").string()));
}

std::vector<DatasetRow> CorpusResult::rows() const {
  std::vector<DatasetRow> out;
  for (const auto& p : puzzles) {
    auto r = to_rows(p);
    out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  return out;
}

CorpusResult build_corpus(const std::string& corpus_dir, const DatasetOptions& options) {
  const auto entries = read_manifest(corpus_dir);
  if (entries.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "corpus " + corpus_dir + " lists no puzzles");
  }
  const std::string grammar_dir =
      options.grammar_dir.empty() ? default_grammar_dir() : options.grammar_dir;

  std::map<DomainKind, DomainProfile> profiles;
  std::map<DomainKind, std::string> profile_errors;
  for (const auto& e : entries) {
    if (profiles.count(e.domain) || profile_errors.count(e.domain)) continue;
    try {
      profiles.emplace(e.domain, load_profile(e.domain, grammar_dir, options.equality_extension));
    } catch (const Error& err) {
      profile_errors.emplace(e.domain, err.what());
    }
  }

  struct Slot {
    std::vector<AnalyzedPuzzle> puzzles;
    std::optional<PuzzleFailure> failure;
  };
  std::vector<Slot> slots(entries.size());

  auto work = [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    Slot& slot = slots[i];
    try {
      if (auto err = profile_errors.find(e.domain); err != profile_errors.end()) {
        throw Error(ErrorCode::kInvalidArgument, err->second);
      }
      const DomainProfile& profile = profiles.at(e.domain);
      std::string text = read_file((fs::path(corpus_dir) / e.file).string());
      PuzzleRecord rec = build_puzzle(e.id, text, profile);
      slot.puzzles.push_back(analyze(rec, profile, options.cap));
      if (options.ambiguate > 0) {
        auto variants = ambiguate(rec, profile, options.ambiguate);
        if (options.max_variants > 0 && variants.size() > options.max_variants) {
          std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                            static_cast<std::uint32_t>(options.seed >> 32),
                            static_cast<std::uint32_t>(i)};
          std::mt19937_64 rng(seq);
          std::vector<PuzzleRecord> kept;
          std::sample(variants.begin(), variants.end(), std::back_inserter(kept),
                      options.max_variants, rng);
          variants = std::move(kept);
        }
        for (const auto& v : variants) slot.puzzles.push_back(analyze(v, profile, options.cap));
      }
    } catch (const Error& err) {
      slot.puzzles.clear();
      slot.failure = PuzzleFailure{e.file, err.what()};
    }
  };

  std::size_t workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, entries.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < entries.size(); i = next++) work(i);
    });
  }
  for (auto& t : pool) t.join();

  CorpusResult out;
  for (auto& s : slots) {
    if (s.failure) {
      spdlog::error("{}: {}", s.failure->file, s.failure->message);
      out.failures.push_back(std::move(*s.failure));
    }
    for (auto& p : s.puzzles) out.puzzles.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> export_mace4(const PuzzleRecord& record, const DomainProfile& profile,
                                      const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw Error(ErrorCode::kIo, "cannot write " + path);
    written.push_back(path);
  };
  emit(record.id + ".in", write_theory(record.theory));
  const auto questions = generate_questions(record, profile);
  const int digits = static_cast<int>(std::to_string(questions.size()).size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    emit(fmt::format("{}.q{:0{}}.in", record.id, i + 1, digits),
         write_theory(record.theory, {questions[i]}));
  }
  return written;
}

}  // namespace puzzte
