#pragma once

// Exhaustive atomic questions, labeling, clue-removal variants and the
// ambiguity level of a puzzle.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "puzzte/domains.h"
#include "puzzte/fol.h"
#include "puzzte/model_finder.h"

namespace puzzte {

struct LabeledQuestion {
  std::string puzzle_id;
  std::string text;
  Formula query;  // ground atom
  Label label = Label::kUnknown;
};

// Unary predicates over every individual, then binary predicates over every
// ordered pair (reflexive pairs included). Predicates in profile order,
// individuals in domain order.
std::vector<Formula> generate_questions(const PuzzleRecord& record, const DomainProfile& profile);

// One classification per question against a single model set.
// Propagates InconsistentTheory and Truncated.
std::vector<LabeledQuestion> label_all(const PuzzleRecord& record, const DomainProfile& profile,
                                       std::size_t cap = kDefaultModelCap);

// "<15%", "15-25%", "25-50%" or ">50%".
std::string_view histogram_bin(double level);
inline constexpr std::string_view kHistogramBins[] = {"<15%", "15-25%", "25-50%", ">50%"};

struct AmbiguityReport {
  std::string puzzle_id;
  std::vector<std::size_t> removed_clues;  // 0-based
  std::size_t model_count = 0;
  std::size_t entailment = 0;
  std::size_t contradiction = 0;
  std::size_t unknown = 0;
  double level = 0.0;  // unknown / total
  std::string bin;

  std::size_t total() const { return entailment + contradiction + unknown; }
};

struct AnalyzedPuzzle {
  PuzzleRecord record;
  std::vector<LabeledQuestion> questions;
  AmbiguityReport report;
};

// Solves once, labels every question and summarizes.
AnalyzedPuzzle analyze(const PuzzleRecord& record, const DomainProfile& profile,
                       std::size_t cap = kDefaultModelCap);

AmbiguityReport ambiguity_report(const PuzzleRecord& record, const DomainProfile& profile,
                                 std::size_t cap = kDefaultModelCap);

enum class AmbiguateMode { kAllSubsets, kIndices };

// kAllSubsets: one variant per size-k subset of the clues, in lexicographic
// subset order; requires 1 <= k < clue count. kIndices: a single variant
// without the given clues (0-based). Variants left without any individual
// are dropped with a warning.
std::vector<PuzzleRecord> ambiguate(const PuzzleRecord& record, const DomainProfile& profile,
                                    std::size_t k, AmbiguateMode mode = AmbiguateMode::kAllSubsets,
                                    const std::vector<std::size_t>& indices = {});

// Number of size-k subsets; saturates at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace puzzte
