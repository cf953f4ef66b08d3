#include "puzzte/parser.h"

#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <set>

#include <spdlog/spdlog.h>

#include "puzzte/error.h"

namespace puzzte {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '-' ||
         c == '_';
}

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

using TreePtr = std::shared_ptr<const ParseTree>;

struct Edge {
  std::size_t rule;  // index into grammar rules; npos for promoted names
  std::size_t dot;
  std::size_t start;
  std::size_t end;
  Bindings bindings;
  std::vector<TreePtr> children;
  // Set once complete.
  Symbol result;
};

constexpr std::size_t kNoRule = static_cast<std::size_t>(-1);

std::string serialize_bindings(const Bindings& b) {
  std::string out;
  for (const auto& [k, v] : b) out += k + "=" + v.to_string() + ";";
  return out;
}

// Resolves the left-hand side of a finished rule: variables through the
// bindings, SEM terms by meta substitution followed by beta reduction.
FeatureStructure finish_features(const FeatureStructure& lhs, const Bindings& bindings) {
  FeatureStructure out;
  for (const auto& [name, value] : lhs) {
    if (value.kind() == FeatureValue::Kind::kTerm) {
      std::map<std::string, LambdaTerm> subst;
      for (const auto& m : metas_in(value.lambda())) {
        FeatureValue v = resolve(FeatureValue::variable(m), bindings);
        if (v.kind() == FeatureValue::Kind::kTerm) {
          subst.emplace(m, v.lambda());
        } else if (v.kind() == FeatureValue::Kind::kAtom) {
          subst.emplace(m, LambdaTerm::constant(v.text()));
        }
      }
      out.emplace(name, FeatureValue::term(beta_reduce(substitute_metas(value.lambda(), subst))));
      continue;
    }
    FeatureValue v = resolve(value, bindings);
    if (!v.is_variable()) out.emplace(name, std::move(v));
  }
  return out;
}

class Chart {
 public:
  Chart(const Grammar& g, const std::vector<std::string>& tokens)
      : g_(g), tokens_(tokens), n_(tokens.size()), columns_(n_ + 1), seen_(n_ + 1),
        predicted_(n_ + 1), waiting_(n_ + 1) {}

  std::vector<const Edge*> run() {
    seed_lexicon();
    predict(g_.start(), 0);
    for (std::size_t i = 0; i <= n_; ++i) {
      for (std::size_t k = 0; k < columns_[i].size(); ++k) {
        const Edge& e = *columns_[i][k];
        if (complete(e)) {
          on_complete(e);
        } else {
          const RhsItem& next = rule(e).rhs[e.dot];
          if (next.terminal) {
            scan(e, next.word);
          } else {
            waiting_[i][next.symbol.category].push_back(&e);
            predict(next.symbol.category, i);
          }
        }
      }
    }
    std::vector<const Edge*> roots;
    for (const auto& e : columns_[n_]) {
      if (complete(*e) && e->start == 0 && e->result.category == g_.start()) {
        roots.push_back(e.get());
      }
    }
    return roots;
  }

 private:
  const GrammarRule& rule(const Edge& e) const { return g_.rules()[e.rule]; }
  bool complete(const Edge& e) const {
    return e.rule == kNoRule || e.dot == rule(e).rhs.size();
  }

  void add(Edge e) {
    std::string key;
    if (complete(e)) {
      key = "C|" + e.result.to_string() + "|" + std::to_string(e.start);
    } else {
      key = "A|" + std::to_string(e.rule) + "|" + std::to_string(e.dot) + "|" +
            std::to_string(e.start) + "|" + serialize_bindings(e.bindings);
    }
    if (!seen_[e.end].insert(key).second) return;
    columns_[e.end].push_back(std::make_unique<Edge>(std::move(e)));
  }

  Edge finish(Edge e) {
    const GrammarRule& r = rule(e);
    e.result = Symbol{r.lhs.category, finish_features(r.lhs.features, e.bindings)};
    return e;
  }

  void seed_lexicon() {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::string& tok = tokens_[i];
      auto leaf = std::make_shared<const ParseTree>(ParseTree{tok, {}});
      for (std::size_t ri : g_.lexical_rules_for(tok)) {
        Edge e{ri, 1, i, i + 1, {}, {leaf}, {}};
        add(finish(std::move(e)));
      }
      bool capital = std::isupper(static_cast<unsigned char>(tok[0]));
      if (capital && !g_.has_terminal(tok) && !g_.has_terminal(lowercase(tok))) {
        spdlog::debug("promoting '{}' to {}", tok, g_.names_category());
        Edge e{kNoRule, 1, i, i + 1, {}, {leaf}, {}};
        e.result.category = g_.names_category();
        e.result.features.emplace("NUM", FeatureValue::atom("sg"));
        e.result.features.emplace("SEM", FeatureValue::term(LambdaTerm::constant(tok)));
        add(std::move(e));
      }
    }
  }

  void predict(const std::string& category, std::size_t i) {
    if (i >= n_ || !predicted_[i].insert(category).second) return;
    for (std::size_t ri : g_.phrase_rules_for(category)) add(Edge{ri, 0, i, i, {}, {}, {}});
  }

  void scan(const Edge& e, const std::string& word) {
    if (e.end >= n_) return;
    const std::string& tok = tokens_[e.end];
    if (tok != word && lowercase(tok) != word) return;
    Edge next = e;
    next.dot += 1;
    next.end += 1;
    next.children.push_back(std::make_shared<const ParseTree>(ParseTree{tok, {}}));
    advance(std::move(next));
  }

  void advance(Edge e) {
    if (e.dot == rule(e).rhs.size()) {
      try {
        add(finish(std::move(e)));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kReductionBudgetExceeded) throw;
        spdlog::warn("dropping edge: {}", err.detail());
      }
    } else {
      add(std::move(e));
    }
  }

  void on_complete(const Edge& child) {
    auto it = waiting_[child.start].find(child.result.category);
    if (it == waiting_[child.start].end()) return;
    TreePtr subtree = tree_of(child);
    // The waiting list may grow while we iterate only for later columns.
    for (const Edge* parent : it->second) {
      const Symbol& expected = rule(*parent).rhs[parent->dot].symbol;
      Bindings b = parent->bindings;
      if (!unify(expected.features, child.result.features, b)) continue;
      Edge next = *parent;
      next.bindings = std::move(b);
      next.dot += 1;
      next.end = child.end;
      next.children.push_back(subtree);
      advance(std::move(next));
    }
  }

  TreePtr tree_of(const Edge& e) const {
    ParseTree t{e.result.category, {}};
    for (const auto& c : e.children) t.children.push_back(*c);
    return std::make_shared<const ParseTree>(std::move(t));
  }

 public:
  TreePtr tree(const Edge& e) const { return tree_of(e); }

 private:
  const Grammar& g_;
  const std::vector<std::string>& tokens_;
  std::size_t n_;
  std::vector<std::vector<std::unique_ptr<Edge>>> columns_;
  std::vector<std::set<std::string>> seen_;
  std::vector<std::set<std::string>> predicted_;
  std::vector<std::map<std::string, std::vector<const Edge*>>> waiting_;
};

}  // namespace

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && !is_word_char(sentence[i])) ++i;
    std::size_t start = i;
    while (i < sentence.size() && is_word_char(sentence[i])) ++i;
    if (start == i) continue;
    std::string word(sentence.substr(start, i - start));
    // Quotes and hyphens only count inside a word.
    while (!word.empty() && (word.front() == '\'' || word.front() == '-')) word.erase(0, 1);
    while (!word.empty() && (word.back() == '\'' || word.back() == '-')) word.pop_back();
    if (word.empty()) continue;
    std::string possessive;
    if (word.size() > 2 && word.compare(word.size() - 2, 2, "'s") == 0) {
      possessive = "'s";
      word.resize(word.size() - 2);
    }
    if (!std::isupper(static_cast<unsigned char>(word[0]))) word = lowercase(word);
    out.push_back(std::move(word));
    if (!possessive.empty()) out.push_back(possessive);
  }
  return out;
}

std::string ParseTree::to_string() const {
  if (is_leaf()) return label;
  std::string out = "(" + label;
  for (const auto& c : children) out += " " + c.to_string();
  return out + ")";
}

std::vector<Formula> ParseResult::formulas() const {
  std::vector<Formula> out;
  for (const auto& r : readings) out.push_back(r.formula);
  return out;
}

std::string ParseResult::serialize() const {
  std::string out = "sentence: " + sentence + "\ntokens:";
  for (const auto& t : tokens) out += " " + t;
  out += "\n";
  for (std::size_t i = 0; i < readings.size(); ++i) {
    const Reading& r = readings[i];
    out += "reading " + std::to_string(i + 1) + "\n  tree: " + r.tree.to_string() +
           "\n  sem: " + to_string(r.sem) + "\n  fol: " + to_string(r.formula) + "\n";
  }
  return out;
}

ParseResult parse_tokens(const std::vector<std::string>& tokens, const Grammar& grammar) {
  ParseResult result;
  result.tokens = tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) result.sentence += ' ';
    result.sentence += tokens[i];
  }
  if (tokens.empty()) throw Error(ErrorCode::kNoParse, "empty sentence");
  Chart chart(grammar, tokens);
  std::set<std::string> seen;
  for (const Edge* root : chart.run()) {
    auto sem = root->result.features.find("SEM");
    if (sem == root->result.features.end() || sem->second.kind() != FeatureValue::Kind::kTerm) {
      throw Error(ErrorCode::kResidualLambda,
                  "complete parse of '" + result.sentence + "' has no SEM term");
    }
    Reading r{*chart.tree(*root), sem->second.lambda(), to_formula(sem->second.lambda())};
    if (seen.insert(to_string(r.formula)).second) result.readings.push_back(std::move(r));
  }
  if (result.readings.empty()) {
    throw Error(ErrorCode::kNoParse, "no parse for '" + result.sentence + "'");
  }
  return result;
}

ParseResult parse(std::string_view sentence, const Grammar& grammar) {
  ParseResult r = parse_tokens(tokenize(sentence), grammar);
  r.sentence = std::string(sentence);
  return r;
}

}  // namespace puzzte
