#include "puzzte/grammar.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "puzzte/error.h"

namespace puzzte {

std::string Symbol::to_string() const { return category + puzzte::to_string(features); }

std::string GrammarRule::to_string() const {
  std::string out = lhs.to_string() + " ->";
  for (const auto& item : rhs) {
    out += ' ';
    out += item.terminal ? "'" + item.word + "'" : item.symbol.to_string();
  }
  return out;
}

namespace {

const std::vector<std::size_t> kNone;

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::kGrammarSyntaxError, msg, line_);
  }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  std::string identifier(const std::string& what) {
    skip_ws();
    std::size_t start = i_;
    while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
    if (start == i_) fail("expected " + what);
    return std::string(s_.substr(start, i_ - start));
  }

  std::string quoted() {
    char q = s_[i_++];
    std::size_t start = i_;
    while (i_ < s_.size() && s_[i_] != q) ++i_;
    if (i_ >= s_.size()) fail("unterminated terminal");
    std::string word(s_.substr(start, i_ - start));
    ++i_;
    if (word.empty() || word.find_first_of(" \t") != std::string::npos) {
      fail("terminal must be a single non-empty word");
    }
    return word;
  }

  FeatureValue value() {
    skip_ws();
    if (i_ < s_.size() && s_[i_] == '<') {
      std::size_t start = ++i_;
      while (i_ < s_.size()) {
        if (s_.substr(i_, 3) == "<->") {
          i_ += 3;
        } else if (s_.substr(i_, 2) == "->") {
          i_ += 2;
        } else if (s_[i_] == '>') {
          break;
        } else {
          ++i_;
        }
      }
      if (i_ >= s_.size()) fail("unterminated lambda term");
      std::string_view body = s_.substr(start, i_ - start);
      ++i_;
      try {
        return FeatureValue::term(parse_lambda(body));
      } catch (const Error& e) {
        fail(e.detail());
      }
    }
    if (accept("?")) return FeatureValue::variable(identifier("variable name"));
    return FeatureValue::atom(identifier("feature value"));
  }

  Symbol symbol() {
    Symbol sym;
    sym.category = identifier("category");
    if (i_ < s_.size() && s_[i_] == '[') {
      ++i_;
      if (!accept("]")) {
        do {
          std::string name = identifier("feature name");
          if (!accept("=")) fail("expected '=' after feature " + name);
          if (!sym.features.emplace(name, value()).second) fail("repeated feature " + name);
        } while (accept(","));
        if (!accept("]")) fail("expected ']'");
      }
    }
    return sym;
  }

  std::vector<std::vector<RhsItem>> alternatives() {
    std::vector<std::vector<RhsItem>> out(1);
    while (!done()) {
      char c = peek();
      if (c == '|') {
        ++i_;
        if (out.back().empty()) fail("empty alternative");
        out.emplace_back();
      } else if (c == '\'' || c == '"') {
        RhsItem item;
        item.terminal = true;
        item.word = quoted();
        out.back().push_back(std::move(item));
      } else {
        RhsItem item;
        item.symbol = symbol();
        out.back().push_back(std::move(item));
      }
    }
    if (out.back().empty()) fail("rule has an empty right-hand side");
    return out;
  }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

// Strips a '#' comment that is not inside a quoted terminal or lambda term.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  bool in_term = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (in_term) {
      if (c == '>' && (i == 0 || line[i - 1] != '-')) in_term = false;
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '<') {
      in_term = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

void check_semantics(const GrammarRule& rule, LineParser& lp) {
  auto it = rule.lhs.features.find("SEM");
  std::set<std::string> rhs_vars;
  for (const auto& item : rule.rhs) {
    if (item.terminal) continue;
    auto sem = item.symbol.features.find("SEM");
    if (sem == item.symbol.features.end()) continue;
    if (!sem->second.is_variable()) {
      lp.fail("SEM of right-hand constituent " + item.symbol.category + " must be a variable");
    }
    rhs_vars.insert(sem->second.text());
  }
  if (it == rule.lhs.features.end()) return;
  std::set<std::string> needed;
  if (it->second.kind() == FeatureValue::Kind::kTerm) {
    needed = metas_in(it->second.lambda());
  } else if (it->second.is_variable()) {
    needed.insert(it->second.text());
  }
  for (const auto& v : needed) {
    if (!rhs_vars.count(v)) lp.fail("SEM variable ?" + v + " is not bound by the right-hand side");
  }
}

}  // namespace

const std::vector<std::size_t>& Grammar::phrase_rules_for(const std::string& category) const {
  auto it = phrase_index_.find(category);
  return it == phrase_index_.end() ? kNone : it->second;
}

std::vector<std::size_t> Grammar::lexical_rules_for(const std::string& token) const {
  std::vector<std::size_t> out;
  auto add = [&](const std::string& w) {
    auto it = lexical_index_.find(w);
    if (it != lexical_index_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  };
  add(token);
  std::string lower = lowercase(token);
  if (lower != token) add(lower);
  return out;
}

std::size_t Grammar::phrase_rule_count() const {
  std::size_t n = 0;
  for (const auto& r : rules_) n += r.is_lexical() ? 0 : 1;
  return n;
}

std::size_t Grammar::lexical_rule_count() const { return rules_.size() - phrase_rule_count(); }

void Grammar::index() {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const GrammarRule& r = rules_[i];
    if (r.is_lexical()) {
      lexical_index_[r.rhs.front().word].push_back(i);
    } else {
      phrase_index_[r.lhs.category].push_back(i);
    }
    for (const auto& item : r.rhs) {
      if (item.terminal) terminals_.insert(item.word);
    }
  }
}

Grammar parse_grammar(std::string_view text) {
  Grammar g;
  bool start_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    LineParser lp(strip_comment(raw), line_no);
    if (lp.done()) {
      if (eol == text.size()) break;
      continue;
    }
    if (lp.accept("%")) {
      std::string directive = lp.identifier("directive");
      std::string arg = lp.identifier("category after %" + directive);
      if (!lp.done()) lp.fail("trailing text after %" + directive);
      if (directive == "start") {
        if (start_seen) {
          throw Error(ErrorCode::kDuplicateStartSymbol, "second %start directive", line_no);
        }
        start_seen = true;
        g.start_ = arg;
      } else if (directive == "names") {
        g.names_category_ = arg;
      } else {
        lp.fail("unknown directive %" + directive);
      }
    } else {
      Symbol lhs = lp.symbol();
      if (!lp.accept("->")) lp.fail("expected '->'");
      for (auto& rhs : lp.alternatives()) {
        GrammarRule rule{lhs, std::move(rhs), line_no};
        check_semantics(rule, lp);
        g.rules_.push_back(std::move(rule));
      }
    }
    if (eol == text.size()) break;
  }
  if (g.rules_.empty()) {
    throw Error(ErrorCode::kGrammarSyntaxError, "grammar has no rules", line_no);
  }
  g.index();
  return g;
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read grammar file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_grammar(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail(), e.position());
  }
}

}  // namespace puzzte
