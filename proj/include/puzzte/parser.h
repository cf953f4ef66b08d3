#pragma once

// Earley chart parsing with feature unification and SEM composition.

#include <string>
#include <string_view>
#include <vector>

#include "puzzte/fol.h"
#include "puzzte/grammar.h"
#include "puzzte/lambda.h"

namespace puzzte {

// Splits on whitespace, drops punctuation, splits a possessive "'s" into its
// own token and lowercases every token that does not start with a capital.
std::vector<std::string> tokenize(std::string_view sentence);

struct ParseTree {
  std::string label;  // category, or the word for a leaf
  std::vector<ParseTree> children;

  bool is_leaf() const { return children.empty(); }
  // (S (NP (PropN Mike)) (VP ...))
  std::string to_string() const;
};

struct Reading {
  ParseTree tree;
  LambdaTerm sem;  // beta-normal
  Formula formula;
};

struct ParseResult {
  std::string sentence;
  std::vector<std::string> tokens;
  std::vector<Reading> readings;  // distinct formulas, in chart order

  std::vector<Formula> formulas() const;
  // Deterministic text form, one line per token list and per reading.
  std::string serialize() const;
};

// All complete parses of the start category spanning the sentence. Throws
// NoParse when there is none, ResidualLambda when a SEM does not reduce to
// a formula and ReductionBudgetExceeded from composition.
ParseResult parse(std::string_view sentence, const Grammar& grammar);
ParseResult parse_tokens(const std::vector<std::string>& tokens, const Grammar& grammar);

}  // namespace puzzte
