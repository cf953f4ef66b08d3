#pragma once

// Textual FOL syntax, a strict subset of Prover9/Mace4 input:
//
//   % comment
//   all x (knight(x) <-> -knave(x)).
//   exists y (neighbor(A,y) & water(y)).
//
// Connectives by increasing precedence: <->, ->, |, &, -. Quantifier bodies
// are unary (an atom, a negation, another quantifier or a parenthesized
// formula). Identifiers bound by an enclosing quantifier are variables; all
// others are individual constants. `formulas(assumptions).`, `formulas(goals).`
// and `end_of_list.` delimit sections; `assign(...)`, `set(...)` and
// `clear(...)` directives are accepted and ignored.
//
// Three comment annotations make a file self-describing so that a written
// theory reads back identically:
//
//   % domain: Mike Sally Katy
//   % signature: taller/2 tallest/1
//   % clue 3: Katy is shorter than Mike.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "puzzte/fol.h"

namespace puzzte {

// Parses one formula (no terminating period). Throws Error(kSyntaxError).
Formula parse_formula(std::string_view text);

struct FolDocument {
  std::vector<Formula> axioms;
  std::vector<Clue> clues;
  std::vector<Formula> goals;
  std::optional<std::vector<Individual>> domain;
  std::optional<std::vector<Predicate>> signature;
};

// Throws Error(kSyntaxError) with the 1-based line of the offending statement.
FolDocument read_fol(std::string_view text);

// Builds a theory from a document. Missing domain/signature annotations are
// inferred from the formulas (first-occurrence order). Validates the result.
Theory to_theory(const FolDocument& doc);

Theory read_theory(std::string_view text);

// Canonical text of a theory, readable by read_theory and by Mace4/Prover9.
std::string write_theory(const Theory& theory, const std::vector<Formula>& goals = {});

}  // namespace puzzte
