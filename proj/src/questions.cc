#include "puzzte/questions.h"

#include <limits>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "puzzte/error.h"

namespace puzzte {

std::vector<Formula> generate_questions(const PuzzleRecord& record, const DomainProfile& profile) {
  const auto& domain = record.theory.domain;
  std::vector<Formula> out;
  for (const auto& p : profile.unary_predicates) {
    for (const auto& a : domain) out.push_back(Formula::atom(p.name, {Term::individual(a.name)}));
  }
  for (const auto& p : profile.binary_predicates) {
    for (const auto& a : domain) {
      for (const auto& b : domain) {
        out.push_back(
            Formula::atom(p.name, {Term::individual(a.name), Term::individual(b.name)}));
      }
    }
  }
  return out;
}

namespace {

std::vector<LabeledQuestion> label_with(const SolvedTheory& solved, const PuzzleRecord& record,
                                        const DomainProfile& profile) {
  std::vector<LabeledQuestion> out;
  for (auto& q : generate_questions(record, profile)) {
    std::vector<Individual> args;
    for (const auto& t : q.args()) args.push_back({t.name});
    LabeledQuestion lq;
    lq.puzzle_id = record.id;
    lq.text = verbalize({q.predicate(), static_cast<int>(args.size())}, args, profile);
    lq.label = solved.classify(q);
    lq.query = std::move(q);
    out.push_back(std::move(lq));
  }
  return out;
}

}  // namespace

std::vector<LabeledQuestion> label_all(const PuzzleRecord& record, const DomainProfile& profile,
                                       std::size_t cap) {
  SolvedTheory solved(record.theory, cap);
  return label_with(solved, record, profile);
}

std::string_view histogram_bin(double level) {
  if (level < 0.15) return kHistogramBins[0];
  if (level < 0.25) return kHistogramBins[1];
  if (level <= 0.5) return kHistogramBins[2];
  return kHistogramBins[3];
}

AnalyzedPuzzle analyze(const PuzzleRecord& record, const DomainProfile& profile,
                       std::size_t cap) {
  SolvedTheory solved(record.theory, cap);
  AnalyzedPuzzle out;
  out.record = record;
  out.questions = label_with(solved, record, profile);
  AmbiguityReport& r = out.report;
  r.puzzle_id = record.id;
  r.removed_clues = record.removed_clues;
  r.model_count = solved.models().size();
  for (const auto& q : out.questions) {
    switch (q.label) {
      case Label::kEntailment: ++r.entailment; break;
      case Label::kContradiction: ++r.contradiction; break;
      case Label::kUnknown: ++r.unknown; break;
    }
  }
  r.level = r.total() == 0 ? 0.0 : static_cast<double>(r.unknown) / static_cast<double>(r.total());
  r.bin = std::string(histogram_bin(r.level));
  return out;
}

AmbiguityReport ambiguity_report(const PuzzleRecord& record, const DomainProfile& profile,
                                 std::size_t cap) {
  return analyze(record, profile, cap).report;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    std::size_t num = n - k + i;
    if (r > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    r = r * num / i;
  }
  return r;
}

std::vector<PuzzleRecord> ambiguate(const PuzzleRecord& record, const DomainProfile& profile,
                                    std::size_t k, AmbiguateMode mode,
                                    const std::vector<std::size_t>& indices) {
  std::vector<std::vector<std::size_t>> subsets;
  const std::size_t n = record.clues.size();
  if (mode == AmbiguateMode::kIndices) {
    for (std::size_t i : indices) {
      if (i >= n) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    fmt::format("clue {} does not exist; puzzle {} has {} clues", i + 1,
                                record.id, n));
      }
    }
    subsets.push_back(indices);
  } else {
    if (k < 1 || k >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("cannot remove {} of {} clues from {}", k, n, record.id));
    }
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      subsets.push_back(pick);
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  std::vector<PuzzleRecord> out;
  for (const auto& s : subsets) {
    try {
      out.push_back(remove_clues(record, s, profile));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyPuzzle) throw;
      spdlog::warn("dropping variant of {}: {}", record.id, e.detail());
    }
  }
  return out;
}

}  // namespace puzzte
