#include "puzzte/lambda.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <utility>

#include "puzzte/error.h"

namespace puzzte {

struct LambdaTerm::Node {
  Kind kind;
  std::string name;
  std::vector<LambdaTerm> kids;
};

LambdaTerm LambdaTerm::make(Kind kind, std::string name, std::vector<LambdaTerm> kids) {
  return LambdaTerm(std::make_shared<const Node>(Node{kind, std::move(name), std::move(kids)}));
}

LambdaTerm LambdaTerm::var(std::string name) { return make(Kind::kVar, std::move(name), {}); }
LambdaTerm LambdaTerm::constant(std::string name) {
  return make(Kind::kConst, std::move(name), {});
}
LambdaTerm LambdaTerm::meta(std::string name) { return make(Kind::kMeta, std::move(name), {}); }
LambdaTerm LambdaTerm::abs(std::string var, LambdaTerm body) {
  return make(Kind::kAbs, std::move(var), {std::move(body)});
}
LambdaTerm LambdaTerm::app(LambdaTerm fn, LambdaTerm arg) {
  return make(Kind::kApp, {}, {std::move(fn), std::move(arg)});
}
LambdaTerm LambdaTerm::atom(std::string predicate, std::vector<LambdaTerm> args) {
  return make(Kind::kAtom, std::move(predicate), std::move(args));
}
LambdaTerm LambdaTerm::negation(LambdaTerm a) { return make(Kind::kNot, {}, {std::move(a)}); }
LambdaTerm LambdaTerm::conjunction(LambdaTerm a, LambdaTerm b) {
  return make(Kind::kAnd, {}, {std::move(a), std::move(b)});
}
LambdaTerm LambdaTerm::disjunction(LambdaTerm a, LambdaTerm b) {
  return make(Kind::kOr, {}, {std::move(a), std::move(b)});
}
LambdaTerm LambdaTerm::implies(LambdaTerm a, LambdaTerm b) {
  return make(Kind::kImplies, {}, {std::move(a), std::move(b)});
}
LambdaTerm LambdaTerm::iff(LambdaTerm a, LambdaTerm b) {
  return make(Kind::kIff, {}, {std::move(a), std::move(b)});
}
LambdaTerm LambdaTerm::forall(std::string var, LambdaTerm body) {
  return make(Kind::kForAll, std::move(var), {std::move(body)});
}
LambdaTerm LambdaTerm::exists(std::string var, LambdaTerm body) {
  return make(Kind::kExists, std::move(var), {std::move(body)});
}

LambdaTerm::Kind LambdaTerm::kind() const { return node_->kind; }
bool LambdaTerm::is_binder() const {
  Kind k = kind();
  return k == Kind::kAbs || k == Kind::kForAll || k == Kind::kExists;
}
const std::string& LambdaTerm::name() const { return node_->name; }
const std::vector<LambdaTerm>& LambdaTerm::children() const { return node_->kids; }

bool LambdaTerm::operator==(const LambdaTerm& other) const {
  if (node_ == other.node_) return true;
  return kind() == other.kind() && name() == other.name() && children() == other.children();
}

namespace {

using Kind = LambdaTerm::Kind;

LambdaTerm rebuild(const LambdaTerm& t, std::vector<LambdaTerm> kids) {
  switch (t.kind()) {
    case Kind::kAbs: return LambdaTerm::abs(t.name(), std::move(kids[0]));
    case Kind::kForAll: return LambdaTerm::forall(t.name(), std::move(kids[0]));
    case Kind::kExists: return LambdaTerm::exists(t.name(), std::move(kids[0]));
    case Kind::kApp: return LambdaTerm::app(std::move(kids[0]), std::move(kids[1]));
    case Kind::kAtom: return LambdaTerm::atom(t.name(), std::move(kids));
    case Kind::kNot: return LambdaTerm::negation(std::move(kids[0]));
    case Kind::kAnd: return LambdaTerm::conjunction(std::move(kids[0]), std::move(kids[1]));
    case Kind::kOr: return LambdaTerm::disjunction(std::move(kids[0]), std::move(kids[1]));
    case Kind::kImplies: return LambdaTerm::implies(std::move(kids[0]), std::move(kids[1]));
    case Kind::kIff: return LambdaTerm::iff(std::move(kids[0]), std::move(kids[1]));
    default: return t;
  }
}

LambdaTerm rebind(const LambdaTerm& binder, std::string var, LambdaTerm body) {
  switch (binder.kind()) {
    case Kind::kForAll: return LambdaTerm::forall(std::move(var), std::move(body));
    case Kind::kExists: return LambdaTerm::exists(std::move(var), std::move(body));
    default: return LambdaTerm::abs(std::move(var), std::move(body));
  }
}

// ---- lexing and parsing ----

enum class Tok {
  kIdent, kMeta, kLambda, kDot, kLParen, kRParen, kComma,
  kNot, kAnd, kOr, kImplies, kIff, kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kSyntaxError, msg + " in lambda term '" + std::string(s) + "'", i + 1);
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_char(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::kIdent, std::string(s.substr(start, i - start)), start});
    } else if (c == '?') {
      ++i;
      while (i < s.size() && ident_char(s[i])) ++i;
      if (i == start + 1) fail("empty metavariable name");
      out.push_back({Tok::kMeta, std::string(s.substr(start + 1, i - start - 1)), start});
    } else if (s.substr(i, 3) == "<->") {
      i += 3;
      out.push_back({Tok::kIff, "<->", start});
    } else if (s.substr(i, 2) == "->") {
      i += 2;
      out.push_back({Tok::kImplies, "->", start});
    } else {
      Tok k;
      switch (c) {
        case '\\': k = Tok::kLambda; break;
        case '.': k = Tok::kDot; break;
        case '(': k = Tok::kLParen; break;
        case ')': k = Tok::kRParen; break;
        case ',': k = Tok::kComma; break;
        case '-': k = Tok::kNot; break;
        case '&': k = Tok::kAnd; break;
        case '|': k = Tok::kOr; break;
        default: fail(std::string("unexpected character '") + c + "'");
      }
      ++i;
      out.push_back({k, std::string(1, c), start});
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), toks_(lex(text)) {}

  LambdaTerm parse() {
    LambdaTerm t = parse_iff();
    expect(Tok::kEnd, "end of term");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kSyntaxError,
                "expected " + what + " in lambda term '" + std::string(text_) + "'",
                peek().offset + 1);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(what);
  }

  LambdaTerm parse_iff() {
    LambdaTerm lhs = parse_implies();
    if (accept(Tok::kIff)) return LambdaTerm::iff(lhs, parse_implies());
    return lhs;
  }
  LambdaTerm parse_implies() {
    LambdaTerm lhs = parse_or();
    if (accept(Tok::kImplies)) return LambdaTerm::implies(lhs, parse_implies());
    return lhs;
  }
  LambdaTerm parse_or() {
    LambdaTerm t = parse_and();
    while (accept(Tok::kOr)) t = LambdaTerm::disjunction(t, parse_and());
    return t;
  }
  LambdaTerm parse_and() {
    LambdaTerm t = parse_unary();
    while (accept(Tok::kAnd)) t = LambdaTerm::conjunction(t, parse_unary());
    return t;
  }

  LambdaTerm parse_unary() {
    if (accept(Tok::kNot)) return LambdaTerm::negation(parse_unary());
    Kind binder;
    if (accept(Tok::kLambda)) {
      binder = Kind::kAbs;
    } else if (peek().kind == Tok::kIdent && (peek().text == "all" || peek().text == "exists")) {
      binder = peek().text == "all" ? Kind::kForAll : Kind::kExists;
      ++pos_;
    } else {
      return parse_postfix();
    }
    std::vector<std::string> vars;
    while (peek().kind == Tok::kIdent) {
      vars.push_back(peek().text);
      ++pos_;
    }
    if (vars.empty()) fail("bound variable");
    expect(Tok::kDot, "'.' after bound variables");
    for (const auto& v : vars) bound_.push_back(v);
    LambdaTerm body = parse_iff();
    bound_.resize(bound_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      switch (binder) {
        case Kind::kForAll: body = LambdaTerm::forall(*it, body); break;
        case Kind::kExists: body = LambdaTerm::exists(*it, body); break;
        default: body = LambdaTerm::abs(*it, body); break;
      }
    }
    return body;
  }

  std::vector<LambdaTerm> parse_args() {
    std::vector<LambdaTerm> args;
    do {
      args.push_back(parse_iff());
    } while (accept(Tok::kComma));
    expect(Tok::kRParen, "')'");
    return args;
  }

  LambdaTerm apply_all(LambdaTerm head) {
    while (accept(Tok::kLParen)) {
      for (auto& a : parse_args()) head = LambdaTerm::app(head, std::move(a));
    }
    return head;
  }

  LambdaTerm parse_postfix() {
    if (accept(Tok::kLParen)) {
      LambdaTerm inner = parse_iff();
      expect(Tok::kRParen, "')'");
      return apply_all(inner);
    }
    if (peek().kind == Tok::kMeta) {
      std::string name = peek().text;
      ++pos_;
      return apply_all(LambdaTerm::meta(name));
    }
    if (peek().kind != Tok::kIdent) fail("term");
    std::string name = peek().text;
    ++pos_;
    if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) {
      return apply_all(LambdaTerm::var(name));
    }
    if (accept(Tok::kLParen)) return LambdaTerm::atom(name, parse_args());
    return LambdaTerm::constant(name);
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

// ---- printing ----

void print(const LambdaTerm& t, std::string& out);

void print_operand(const LambdaTerm& t, std::string& out) {
  if (t.is_binder()) {
    out += '(';
    print(t, out);
    out += ')';
  } else {
    print(t, out);
  }
}

void print_args(const std::vector<LambdaTerm>& args, std::string& out) {
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    print(args[i], out);
  }
  out += ')';
}

void print(const LambdaTerm& t, std::string& out) {
  switch (t.kind()) {
    case Kind::kVar:
    case Kind::kConst: out += t.name(); return;
    case Kind::kMeta: out += '?' + t.name(); return;
    case Kind::kAbs: {
      out += '\\' + t.name();
      const LambdaTerm* body = &t.body();
      while (body->kind() == Kind::kAbs) {
        out += ' ' + body->name();
        body = &body->body();
      }
      out += '.';
      print(*body, out);
      return;
    }
    case Kind::kForAll:
    case Kind::kExists:
      out += (t.kind() == Kind::kForAll ? "all " : "exists ") + t.name() + '.';
      print(t.body(), out);
      return;
    case Kind::kApp: {
      std::vector<LambdaTerm> args;
      const LambdaTerm* head = &t;
      while (head->kind() == Kind::kApp) {
        args.push_back(head->children()[1]);
        head = &head->children()[0];
      }
      std::reverse(args.begin(), args.end());
      if (head->kind() == Kind::kVar || head->kind() == Kind::kMeta) {
        print(*head, out);
      } else {
        out += '(';
        print(*head, out);
        out += ')';
      }
      print_args(args, out);
      return;
    }
    case Kind::kAtom:
      out += t.name();
      print_args(t.children(), out);
      return;
    case Kind::kNot:
      out += '-';
      print_operand(t.children()[0], out);
      return;
    case Kind::kAnd:
    case Kind::kOr:
    case Kind::kImplies:
    case Kind::kIff: {
      const char* op = t.kind() == Kind::kAnd       ? " & "
                       : t.kind() == Kind::kOr      ? " | "
                       : t.kind() == Kind::kImplies ? " -> "
                                                    : " <-> ";
      out += '(';
      print_operand(t.children()[0], out);
      out += op;
      print(t.children()[1], out);
      out += ')';
      return;
    }
  }
}

// ---- variables and substitution ----

void collect_free(const LambdaTerm& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  if (t.kind() == Kind::kVar) {
    if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
    return;
  }
  if (t.is_binder()) {
    bound.push_back(t.name());
    collect_free(t.body(), bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& c : t.children()) collect_free(c, bound, out);
}

void collect_names(const LambdaTerm& t, std::set<std::string>& out) {
  if (t.kind() == Kind::kVar || t.is_binder()) out.insert(t.name());
  for (const auto& c : t.children()) collect_names(c, out);
}

class Substituter {
 public:
  explicit Substituter(std::size_t& counter) : counter_(counter) {}

  LambdaTerm run(const LambdaTerm& t, const std::string& x, const LambdaTerm& s) {
    std::set<std::string> fvs = free_variables(s);
    return go(t, x, s, fvs);
  }

 private:
  LambdaTerm go(const LambdaTerm& t, const std::string& x, const LambdaTerm& s,
                const std::set<std::string>& fvs) {
    switch (t.kind()) {
      case Kind::kVar: return t.name() == x ? s : t;
      case Kind::kConst:
      case Kind::kMeta: return t;
      default: break;
    }
    if (t.is_binder()) {
      const std::string& y = t.name();
      if (y == x || !free_variables(t.body()).count(x)) return t;
      if (fvs.count(y)) {
        std::set<std::string> avoid = fvs;
        collect_names(t.body(), avoid);
        avoid.insert(x);
        std::string fresh;
        do {
          fresh = y + std::to_string(++counter_);
        } while (avoid.count(fresh));
        std::set<std::string> fresh_fv{fresh};
        LambdaTerm renamed = go(t.body(), y, LambdaTerm::var(fresh), fresh_fv);
        return rebind(t, fresh, go(renamed, x, s, fvs));
      }
      return rebind(t, y, go(t.body(), x, s, fvs));
    }
    std::vector<LambdaTerm> kids;
    kids.reserve(t.children().size());
    for (const auto& c : t.children()) kids.push_back(go(c, x, s, fvs));
    return rebuild(t, std::move(kids));
  }

  std::size_t& counter_;
};

bool is_redex(const LambdaTerm& t) {
  return t.kind() == Kind::kApp && t.children()[0].kind() == Kind::kAbs;
}

class Reducer {
 public:
  explicit Reducer(ReductionOrder order) : order_(order) {}

  std::optional<LambdaTerm> step(const LambdaTerm& t) {
    if (order_ == ReductionOrder::kNormal && is_redex(t)) return contract(t);
    const auto& kids = t.children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (auto r = step(kids[i])) {
        std::vector<LambdaTerm> next = kids;
        next[i] = std::move(*r);
        return rebuild(t, std::move(next));
      }
    }
    if (order_ == ReductionOrder::kApplicative && is_redex(t)) return contract(t);
    return std::nullopt;
  }

 private:
  LambdaTerm contract(const LambdaTerm& t) {
    const LambdaTerm& fn = t.children()[0];
    return Substituter(counter_).run(fn.body(), fn.name(), t.children()[1]);
  }

  ReductionOrder order_;
  std::size_t counter_ = 0;
};

bool alpha_eq(const LambdaTerm& a, const LambdaTerm& b, std::vector<std::string>& env_a,
              std::vector<std::string>& env_b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Kind::kVar) {
    auto find = [](const std::vector<std::string>& env, const std::string& n) -> long {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (env[i] == n) return static_cast<long>(i);
      }
      return -1;
    };
    long ia = find(env_a, a.name());
    long ib = find(env_b, b.name());
    if (ia < 0 && ib < 0) return a.name() == b.name();
    return ia == ib;
  }
  if (a.is_binder()) {
    env_a.push_back(a.name());
    env_b.push_back(b.name());
    bool r = alpha_eq(a.body(), b.body(), env_a, env_b);
    env_a.pop_back();
    env_b.pop_back();
    return r;
  }
  if (a.name() != b.name() || a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!alpha_eq(a.children()[i], b.children()[i], env_a, env_b)) return false;
  }
  return true;
}

std::string canonical_variable(std::size_t depth) {
  static const char* kNames[] = {"x", "y", "z", "u", "v", "w"};
  if (depth < 6) return kNames[depth];
  return "x" + std::to_string(depth + 1);
}

class FormulaBuilder {
 public:
  Formula build(const LambdaTerm& t) {
    switch (t.kind()) {
      case Kind::kAtom: {
        std::vector<Term> args;
        for (const auto& a : t.children()) args.push_back(term(a));
        return Formula::atom(t.name(), std::move(args));
      }
      case Kind::kNot: return Formula::negation(build(t.children()[0]));
      case Kind::kAnd:
        return Formula::conjunction({build(t.children()[0]), build(t.children()[1])});
      case Kind::kOr:
        return Formula::disjunction({build(t.children()[0]), build(t.children()[1])});
      case Kind::kImplies:
        return Formula::implies(build(t.children()[0]), build(t.children()[1]));
      case Kind::kIff: return Formula::iff(build(t.children()[0]), build(t.children()[1]));
      case Kind::kForAll:
      case Kind::kExists: {
        std::string v = canonical_variable(env_.size());
        env_.emplace_back(t.name(), v);
        Formula body = build(t.body());
        env_.pop_back();
        return t.kind() == Kind::kForAll ? Formula::forall(v, body) : Formula::exists(v, body);
      }
      default:
        throw Error(ErrorCode::kResidualLambda,
                    "'" + to_string(t) + "' is not a formula after reduction");
    }
  }

 private:
  Term term(const LambdaTerm& t) {
    if (t.kind() == Kind::kConst) return Term::individual(t.name());
    if (t.kind() == Kind::kVar) {
      for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
        if (it->first == t.name()) return Term::variable(it->second);
      }
      throw Error(ErrorCode::kUnboundVariable, "variable '" + t.name() + "' is free");
    }
    throw Error(ErrorCode::kResidualLambda,
                "argument '" + to_string(t) + "' is not an individual or variable");
  }

  std::vector<std::pair<std::string, std::string>> env_;
};

}  // namespace

LambdaTerm parse_lambda(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const LambdaTerm& t) {
  std::string out;
  print(t, out);
  return out;
}

std::set<std::string> free_variables(const LambdaTerm& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

std::set<std::string> metas_in(const LambdaTerm& t) {
  std::set<std::string> out;
  std::function<void(const LambdaTerm&)> go = [&](const LambdaTerm& u) {
    if (u.kind() == Kind::kMeta) out.insert(u.name());
    for (const auto& c : u.children()) go(c);
  };
  go(t);
  return out;
}

LambdaTerm substitute_metas(const LambdaTerm& t,
                            const std::map<std::string, LambdaTerm>& bindings) {
  if (t.kind() == Kind::kMeta) {
    auto it = bindings.find(t.name());
    return it == bindings.end() ? t : it->second;
  }
  if (t.children().empty()) return t;
  std::vector<LambdaTerm> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(substitute_metas(c, bindings));
  return rebuild(t, std::move(kids));
}

LambdaTerm substitute(const LambdaTerm& t, const std::string& var, const LambdaTerm& value) {
  std::size_t counter = 0;
  return Substituter(counter).run(t, var, value);
}

LambdaTerm beta_reduce(const LambdaTerm& t, ReductionOrder order, std::size_t budget,
                       std::size_t* steps) {
  Reducer reducer(order);
  LambdaTerm cur = t;
  std::size_t n = 0;
  while (auto next = reducer.step(cur)) {
    if (++n > budget) {
      throw Error(ErrorCode::kReductionBudgetExceeded,
                  "no normal form within " + std::to_string(budget) + " beta steps");
    }
    cur = std::move(*next);
  }
  if (steps) *steps = n;
  return cur;
}

bool alpha_equivalent(const LambdaTerm& a, const LambdaTerm& b) {
  std::vector<std::string> env_a, env_b;
  return alpha_eq(a, b, env_a, env_b);
}

Formula to_formula(const LambdaTerm& t) { return FormulaBuilder().build(t); }

}  // namespace puzzte
