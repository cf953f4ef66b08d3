#pragma once

// Puzzle families: background theories, signatures, question templates and
// the text-to-theory assembly of a puzzle.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "puzzte/fol.h"
#include "puzzte/grammar.h"

namespace puzzte {

enum class DomainKind { kComparison, kKnightsKnaves, kZebra };

// "comparison", "knights_knaves", "zebra".
std::string_view to_string(DomainKind kind);
// Also accepts "knights" for knights_knaves.
DomainKind parse_domain(std::string_view name);

using Categories = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Zebra categories in question order: nationality, color, pet, drink, cigar.
const Categories& zebra_categories();
// A, B, C, D, E from left to right.
std::vector<Individual> zebra_houses();

std::vector<Formula> comparison_background(const std::vector<Individual>& domain,
                                           bool equality_extension = false);
std::vector<Formula> knights_background(const std::vector<Individual>& domain);
// Throws CategoryArityError when a category does not have one predicate per
// house, InvalidArgument unless there are exactly five houses.
std::vector<Formula> zebra_background(const std::vector<Individual>& houses,
                                      const Categories& categories);

struct DomainProfile {
  DomainKind kind = DomainKind::kComparison;
  std::string grammar_path;
  std::shared_ptr<const Grammar> grammar;
  std::vector<Predicate> signature;          // every predicate, auxiliaries included
  std::vector<Predicate> unary_predicates;   // question-facing, in question order
  std::vector<Predicate> binary_predicates;  // question-facing, in question order
  std::map<std::string, std::string> templates;  // predicate -> "Is {x} taller than {y} ?"
  std::vector<Individual> fixed_domain;      // zebra houses; empty when harvested
  bool equality_extension = false;           // comparison: sameTallAs / sameShortAs

  std::string_view name() const { return to_string(kind); }
  std::vector<Formula> background(const std::vector<Individual>& domain) const;
};

// Directory holding comparison.fcfg, knights.fcfg and zebra.fcfg:
// $PUZZTE_GRAMMAR_DIR if set, else the installed data directory.
std::string default_grammar_dir();
std::string grammar_file_name(DomainKind kind);

// Builds the profile, loads its grammar, checks template placeholders and
// that the background alone is satisfiable.
DomainProfile load_profile(DomainKind kind, const std::string& grammar_dir = default_grammar_dir(),
                           bool equality_extension = false);
// Same, with an explicit grammar file.
DomainProfile load_profile_with_grammar(DomainKind kind, const std::string& grammar_path,
                                        bool equality_extension = false);

// Fills the template for `predicate` with the argument names.
// Throws MissingTemplate, or InvalidArgument on an arity mismatch.
std::string verbalize(const Predicate& predicate, const std::vector<Individual>& args,
                      const DomainProfile& profile);

struct Sentence {
  std::string text;  // trimmed, terminator included
  bool interrogative = false;
};

// Splits on '.', '?' and '!'.
std::vector<Sentence> split_sentences(std::string_view text);

struct PuzzleRecord {
  std::string id;
  DomainKind domain = DomainKind::kComparison;
  std::string text;
  std::vector<Clue> clues;                  // every declarative sentence, parsed
  std::vector<std::size_t> removed_clues;   // 0-based indices into clues, ascending
  Theory theory;                            // background + remaining clues

  std::vector<std::string> removed_clue_texts() const;
};

// Parses one declarative sentence and applies the disambiguation policy:
// keep readings whose predicates are all declared, then those with the
// fewest connectives. Throws NoParse, UnknownPredicate or AmbiguousClue.
Formula translate_sentence(std::string_view sentence, const DomainProfile& profile);

// Sentence-splits, drops interrogatives, translates every declarative and
// assembles the theory. Errors carry the 1-based sentence number.
PuzzleRecord build_puzzle(const std::string& id, std::string_view text,
                          const DomainProfile& profile);

// The record with the given clues removed; individuals are harvested again
// from the remaining clues. Throws IndexOutOfRange, or EmptyPuzzle when no
// individual remains.
PuzzleRecord remove_clues(const PuzzleRecord& record, const std::vector<std::size_t>& indices,
                          const DomainProfile& profile);

}  // namespace puzzte
