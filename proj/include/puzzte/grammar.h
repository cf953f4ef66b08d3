#pragma once

// Feature-based context-free grammars in a line-oriented .fcfg format:
//
//   %start S
//   %names PropN
//   S[SEM=<?vp(?np)>] -> NP[NUM=?n,SEM=?np] VP[NUM=?n,SEM=?vp]
//   N[NUM=sg,SEM=<\x.knight(x)>] -> 'knight' | 'inhabitant'
//   # comment
//
// Terminals are quoted with ' or ". `%start` defaults to S and `%names`
// (the category for automatically promoted proper names) to PropN.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "puzzte/feature.h"

namespace puzzte {

struct Symbol {
  std::string category;
  FeatureStructure features;

  std::string to_string() const;
};

struct RhsItem {
  bool terminal = false;
  std::string word;  // when terminal
  Symbol symbol;     // otherwise
};

struct GrammarRule {
  Symbol lhs;
  std::vector<RhsItem> rhs;
  std::size_t line = 0;

  // Exactly one item, and it is a terminal.
  bool is_lexical() const { return rhs.size() == 1 && rhs.front().terminal; }
  std::string to_string() const;
};

class Grammar {
 public:
  const std::string& start() const { return start_; }
  const std::string& names_category() const { return names_category_; }
  const std::vector<GrammarRule>& rules() const { return rules_; }

  // Indices into rules() of non-lexical rules with this left-hand category.
  const std::vector<std::size_t>& phrase_rules_for(const std::string& category) const;
  // Indices of lexical rules whose terminal matches `token` exactly or after
  // lowercasing.
  std::vector<std::size_t> lexical_rules_for(const std::string& token) const;
  // Whether `word` occurs as a terminal anywhere in the grammar.
  bool has_terminal(const std::string& word) const { return terminals_.count(word) > 0; }

  std::size_t phrase_rule_count() const;
  std::size_t lexical_rule_count() const;

 private:
  friend Grammar parse_grammar(std::string_view text);
  void index();

  std::string start_ = "S";
  std::string names_category_ = "PropN";
  std::vector<GrammarRule> rules_;
  std::map<std::string, std::vector<std::size_t>> phrase_index_;
  std::map<std::string, std::vector<std::size_t>> lexical_index_;
  std::set<std::string> terminals_;
};

// Throws GrammarSyntaxError (with line number) or DuplicateStartSymbol.
Grammar parse_grammar(std::string_view text);
// As parse_grammar; Io error when the file cannot be read.
Grammar load_grammar(const std::string& path);

}  // namespace puzzte
