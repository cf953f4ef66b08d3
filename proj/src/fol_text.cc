#include "puzzte/fol_text.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "puzzte/error.h"

namespace puzzte {

namespace {

enum class Tok { kIdent, kLParen, kRParen, kComma, kNot, kAnd, kOr, kImplies, kIff, kTrue, kFalse, kEnd };

struct Token {
  Tok kind;
  std::string text;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i))});
      i = j;
    } else if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::kIff, "<->"});
      i += 3;
    } else if (s.substr(i, 2) == "->") {
      out.push_back({Tok::kImplies, "->"});
      i += 2;
    } else if (s.substr(i, 2) == "$T") {
      out.push_back({Tok::kTrue, "$T"});
      i += 2;
    } else if (s.substr(i, 2) == "$F") {
      out.push_back({Tok::kFalse, "$F"});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::kLParen; break;
        case ')': k = Tok::kRParen; break;
        case ',': k = Tok::kComma; break;
        case '-': k = Tok::kNot; break;
        case '&': k = Tok::kAnd; break;
        case '|': k = Tok::kOr; break;
        default:
          throw Error(ErrorCode::kSyntaxError,
                      std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c)});
      ++i;
    }
  }
  out.push_back({Tok::kEnd, ""});
  return out;
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : toks_(lex(text)) {}

  Formula parse() {
    Formula f = parse_iff();
    expect(Tok::kEnd, "end of formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) {
      throw Error(ErrorCode::kSyntaxError,
                  std::string("expected ") + what + " near '" + peek().text + "'");
    }
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (accept(Tok::kIff)) return Formula::iff(lhs, parse_implies());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (accept(Tok::kImplies)) return Formula::implies(lhs, parse_implies());
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (accept(Tok::kOr)) parts.push_back(parse_and());
    return parts.size() == 1 ? parts.front() : Formula::disjunction(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_unary()};
    while (accept(Tok::kAnd)) parts.push_back(parse_unary());
    return parts.size() == 1 ? parts.front() : Formula::conjunction(std::move(parts));
  }

  Formula parse_unary() {
    if (accept(Tok::kNot)) return Formula::negation(parse_unary());
    if (peek().kind == Tok::kIdent && (peek().text == "all" || peek().text == "exists")) {
      bool universal = peek().text == "all";
      ++pos_;
      if (peek().kind != Tok::kIdent) {
        throw Error(ErrorCode::kSyntaxError, "expected variable after quantifier");
      }
      std::string var = peek().text;
      ++pos_;
      bound_.push_back(var);
      Formula body = parse_unary();
      bound_.pop_back();
      return universal ? Formula::forall(var, body) : Formula::exists(var, body);
    }
    return parse_primary();
  }

  Formula parse_primary() {
    if (accept(Tok::kLParen)) {
      Formula f = parse_iff();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (accept(Tok::kTrue)) return Formula::truth();
    if (accept(Tok::kFalse)) return Formula::falsity();
    if (peek().kind != Tok::kIdent) {
      throw Error(ErrorCode::kSyntaxError, "expected atom near '" + peek().text + "'");
    }
    std::string pred = peek().text;
    ++pos_;
    expect(Tok::kLParen, "'(' after predicate name");
    std::vector<Term> args;
    do {
      if (peek().kind != Tok::kIdent) {
        throw Error(ErrorCode::kSyntaxError, "expected term in " + pred + "(...)");
      }
      const std::string& name = peek().text;
      bool is_var = std::find(bound_.begin(), bound_.end(), name) != bound_.end();
      args.push_back(is_var ? Term::variable(name) : Term::individual(name));
      ++pos_;
    } while (accept(Tok::kComma));
    expect(Tok::kRParen, "')'");
    return Formula::atom(std::move(pred), std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Predicate parse_predicate_decl(const std::string& word, std::size_t line) {
  auto slash = word.rfind('/');
  if (slash == std::string::npos || slash == 0) {
    throw Error(ErrorCode::kSyntaxError, "bad signature entry '" + word + "'", line);
  }
  try {
    return {word.substr(0, slash), std::stoi(word.substr(slash + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kSyntaxError, "bad arity in '" + word + "'", line);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

FolDocument read_fol(std::string_view text) {
  enum class Section { kAssumptions, kGoals };
  FolDocument doc;
  Section section = Section::kAssumptions;
  std::optional<std::string> pending_clue;
  std::string statement;
  std::size_t statement_line = 0;
  std::size_t line_no = 0;

  auto finish_statement = [&](std::string_view raw) {
    std::string_view st = trim(raw);
    if (st.empty()) {
      throw Error(ErrorCode::kSyntaxError, "empty statement", statement_line);
    }
    if (st == "formulas(assumptions)" || st == "formulas(sos)") {
      section = Section::kAssumptions;
      return;
    }
    if (st == "formulas(goals)") {
      section = Section::kGoals;
      return;
    }
    if (st == "end_of_list") {
      section = Section::kAssumptions;
      return;
    }
    if (starts_with(st, "assign(") || starts_with(st, "set(") || starts_with(st, "clear(")) {
      return;
    }
    Formula f;
    try {
      f = parse_formula(st);
    } catch (const Error& e) {
      throw Error(ErrorCode::kSyntaxError, e.detail(), statement_line);
    }
    if (section == Section::kGoals) {
      doc.goals.push_back(f);
    } else if (pending_clue) {
      doc.clues.push_back({*pending_clue, f});
    } else {
      doc.axioms.push_back(f);
    }
    pending_clue.reset();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::string_view code = line;
    if (auto pct = line.find('%'); pct != std::string_view::npos) {
      code = line.substr(0, pct);
      std::string_view comment = trim(line.substr(pct + 1));
      if (trim(code).empty() && statement.empty()) {
        if (starts_with(comment, "domain:")) {
          std::vector<Individual> dom;
          for (auto& w : split_words(comment.substr(7))) dom.push_back({w});
          doc.domain = std::move(dom);
        } else if (starts_with(comment, "signature:")) {
          std::vector<Predicate> sig;
          for (auto& w : split_words(comment.substr(10))) {
            sig.push_back(parse_predicate_decl(w, line_no));
          }
          doc.signature = std::move(sig);
        } else if (starts_with(comment, "clue")) {
          auto colon = comment.find(':');
          if (colon != std::string_view::npos) {
            pending_clue = std::string(trim(comment.substr(colon + 1)));
          }
        }
      }
    }

    for (char c : code) {
      if (c == '.') {
        finish_statement(statement);
        statement.clear();
        continue;
      }
      if (statement.empty()) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        statement_line = line_no;
      }
      statement += c;
    }
    if (!statement.empty()) statement += ' ';
    if (eol == text.size()) break;
  }
  if (!trim(statement).empty()) {
    throw Error(ErrorCode::kSyntaxError, "statement not terminated by '.'", statement_line);
  }
  return doc;
}

Theory to_theory(const FolDocument& doc) {
  Theory t;
  t.axioms = doc.axioms;
  t.clues = doc.clues;

  std::vector<const Formula*> all;
  for (const auto& f : doc.axioms) all.push_back(&f);
  for (const auto& c : doc.clues) all.push_back(&c.formula);
  for (const auto& g : doc.goals) all.push_back(&g);

  if (doc.domain) {
    t.domain = *doc.domain;
  } else {
    for (const Formula* f : all) {
      for (auto& ind : individuals_in(*f)) {
        if (std::find(t.domain.begin(), t.domain.end(), ind) == t.domain.end()) {
          t.domain.push_back(ind);
        }
      }
    }
  }
  if (doc.signature) {
    t.signature = *doc.signature;
  } else {
    for (const Formula* f : all) {
      for (auto& p : predicates_in(*f)) {
        if (std::find(t.signature.begin(), t.signature.end(), p) == t.signature.end()) {
          t.signature.push_back(p);
        }
      }
    }
  }
  t.validate();
  return t;
}

Theory read_theory(std::string_view text) { return to_theory(read_fol(text)); }

std::string write_theory(const Theory& theory, const std::vector<Formula>& goals) {
  std::string out;
  out += "% domain:";
  for (const auto& ind : theory.domain) out += " " + ind.name;
  out += "\n% signature:";
  for (const auto& p : theory.signature) {
    out += " " + p.name + "/" + std::to_string(p.arity);
  }
  out += "\n\nformulas(assumptions).\n";
  if (!theory.axioms.empty()) out += "% background\n";
  for (const auto& f : theory.axioms) out += to_string(f) + ".\n";
  for (std::size_t i = 0; i < theory.clues.size(); ++i) {
    out += "% clue " + std::to_string(i + 1) + ": " + theory.clues[i].text + "\n";
    out += to_string(theory.clues[i].formula) + ".\n";
  }
  out += "end_of_list.\n\nformulas(goals).\n";
  for (const auto& g : goals) out += to_string(g) + ".\n";
  out += "end_of_list.\n";
  return out;
}

}  // namespace puzzte
