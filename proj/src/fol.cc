#include "puzzte/fol.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <utility>

#include "puzzte/error.h"

namespace puzzte {

struct Formula::Node {
  Kind kind;
  std::string name;  // predicate or bound variable
  std::vector<Term> args;
  std::vector<Formula> children;
};

namespace {

const std::vector<Term> kNoArgs;
const std::vector<Formula> kNoChildren;
const std::string kEmpty;

}  // namespace

Formula Formula::truth() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::kTrue, {}, {}, {}}));
  return f;
}

Formula Formula::falsity() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::kFalse, {}, {}, {}}));
  return f;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kAtom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::kNot, {}, {}, {std::move(f)}}));
}

namespace {

std::vector<Formula> flatten(Formula::Kind kind, std::vector<Formula> parts) {
  std::vector<Formula> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p.kind() == kind) {
      const auto& inner = p.children();
      flat.insert(flat.end(), inner.begin(), inner.end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  return flat;
}

}  // namespace

Formula Formula::conjunction(std::vector<Formula> parts) {
  auto flat = flatten(Kind::kAnd, std::move(parts));
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat.front();
  return Formula(std::make_shared<const Node>(Node{Kind::kAnd, {}, {}, std::move(flat)}));
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  auto flat = flatten(Kind::kOr, std::move(parts));
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return flat.front();
  return Formula(std::make_shared<const Node>(Node{Kind::kOr, {}, {}, std::move(flat)}));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kImplies, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kIff, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kForAll, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kExists, std::move(var), {}, {std::move(body)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::predicate() const {
  assert(kind() == Kind::kAtom);
  return node_->name;
}

const std::vector<Term>& Formula::args() const {
  return kind() == Kind::kAtom ? node_->args : kNoArgs;
}

const std::vector<Formula>& Formula::children() const {
  return is_quantifier() ? kNoChildren : node_->children;
}

const std::string& Formula::variable() const {
  return is_quantifier() ? node_->name : kEmpty;
}

const Formula& Formula::body() const {
  assert(is_quantifier());
  return node_->children.front();
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  return a.kind == b.kind && a.name == b.name && a.args == b.args &&
         a.children == b.children;
}

// {{{ Printing

std::string to_string(const Term& t) { return t.name; }

namespace {

bool needs_parens(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
    case Formula::Kind::kAtom:
    case Formula::Kind::kNot:
      return false;
    default:
      return true;
  }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out) {
  if (needs_parens(f)) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue: out += "$T"; break;
    case K::kFalse: out += "$F"; break;
    case K::kAtom: {
      out += f.predicate();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ',';
        out += f.args()[i].name;
      }
      out += ')';
      break;
    }
    case K::kNot: {
      out += '-';
      print_operand(f.children()[0], out);
      break;
    }
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
    case K::kIff: {
      const char* op = f.kind() == K::kAnd       ? " & "
                       : f.kind() == K::kOr      ? " | "
                       : f.kind() == K::kImplies ? " -> "
                                                 : " <-> ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += op;
        print_operand(f.children()[i], out);
      }
      break;
    }
    case K::kForAll:
    case K::kExists: {
      out += f.kind() == K::kForAll ? "all " : "exists ";
      out += f.variable();
      out += ' ';
      const Formula& body = f.body();
      // Nested quantifiers chain without parentheses: all x all y (...).
      if (body.is_quantifier()) {
        print(body, out);
      } else {
        print_operand(body, out);
      }
      break;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

// }}}

Formula substitute(const Formula& f, std::string_view var, const Individual& ind) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
    case K::kFalse:
      return f;
    case K::kAtom: {
      bool changed = false;
      std::vector<Term> args = f.args();
      for (auto& a : args) {
        if (a.is_variable() && a.name == var) {
          a = Term::individual(ind.name);
          changed = true;
        }
      }
      return changed ? Formula::atom(f.predicate(), std::move(args)) : f;
    }
    case K::kNot:
      return Formula::negation(substitute(f.children()[0], var, ind));
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(substitute(c, var, ind));
      return f.kind() == K::kAnd ? Formula::conjunction(std::move(parts))
                                 : Formula::disjunction(std::move(parts));
    }
    case K::kImplies:
      return Formula::implies(substitute(f.children()[0], var, ind),
                              substitute(f.children()[1], var, ind));
    case K::kIff:
      return Formula::iff(substitute(f.children()[0], var, ind),
                          substitute(f.children()[1], var, ind));
    case K::kForAll:
    case K::kExists: {
      if (f.variable() == var) return f;  // shadowed
      auto body = substitute(f.body(), var, ind);
      return f.kind() == K::kForAll ? Formula::forall(f.variable(), std::move(body))
                                    : Formula::exists(f.variable(), std::move(body));
    }
  }
  return f;
}

namespace {

Formula nnf(const Formula& f, bool negate) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
      return negate ? Formula::falsity() : f;
    case K::kFalse:
      return negate ? Formula::truth() : f;
    case K::kAtom:
      return negate ? Formula::negation(f) : f;
    case K::kNot:
      return nnf(f.children()[0], !negate);
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(nnf(c, negate));
      bool conj = (f.kind() == K::kAnd) != negate;
      return conj ? Formula::conjunction(std::move(parts))
                  : Formula::disjunction(std::move(parts));
    }
    case K::kImplies: {
      // a -> b  ==  -a | b
      const auto& a = f.children()[0];
      const auto& b = f.children()[1];
      if (negate) return Formula::conjunction({nnf(a, false), nnf(b, true)});
      return Formula::disjunction({nnf(a, true), nnf(b, false)});
    }
    case K::kIff: {
      // a <-> b  ==  (-a | b) & (-b | a)
      // -(a <-> b)  ==  (a | b) & (-a | -b)
      const auto& a = f.children()[0];
      const auto& b = f.children()[1];
      if (negate) {
        return Formula::conjunction(
            {Formula::disjunction({nnf(a, false), nnf(b, false)}),
             Formula::disjunction({nnf(a, true), nnf(b, true)})});
      }
      return Formula::conjunction(
          {Formula::disjunction({nnf(a, true), nnf(b, false)}),
           Formula::disjunction({nnf(b, true), nnf(a, false)})});
    }
    case K::kForAll:
    case K::kExists: {
      bool universal = (f.kind() == K::kForAll) != negate;
      auto body = nnf(f.body(), negate);
      return universal ? Formula::forall(f.variable(), std::move(body))
                       : Formula::exists(f.variable(), std::move(body));
    }
  }
  return f;
}

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  if (f.is_atom()) {
    for (const auto& a : f.args()) {
      if (a.is_variable() &&
          std::find(bound.begin(), bound.end(), a.name) == bound.end()) {
        out.insert(a.name);
      }
    }
    return;
  }
  if (f.is_quantifier()) {
    bound.push_back(f.variable());
    collect_free(f.body(), bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& c : f.children()) collect_free(c, bound, out);
}

template <typename Visit>
void visit_atoms(const Formula& f, Visit&& visit) {
  if (f.is_atom()) {
    visit(f);
  } else if (f.is_quantifier()) {
    visit_atoms(f.body(), visit);
  } else {
    for (const auto& c : f.children()) visit_atoms(c, visit);
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

std::vector<Individual> individuals_in(const Formula& f) {
  std::vector<Individual> out;
  visit_atoms(f, [&](const Formula& a) {
    for (const auto& t : a.args()) {
      if (t.is_variable()) continue;
      Individual ind{t.name};
      if (std::find(out.begin(), out.end(), ind) == out.end()) out.push_back(ind);
    }
  });
  return out;
}

std::vector<Predicate> predicates_in(const Formula& f) {
  std::vector<Predicate> out;
  visit_atoms(f, [&](const Formula& a) {
    Predicate p{a.predicate(), static_cast<int>(a.args().size())};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  });
  return out;
}

std::size_t connective_count(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
    case K::kFalse:
    case K::kAtom:
      return 0;
    case K::kForAll:
    case K::kExists:
      return 1 + connective_count(f.body());
    default: {
      std::size_t n = f.kind() == K::kNot ? 1 : f.children().size() - 1;
      for (const auto& c : f.children()) n += connective_count(c);
      return n;
    }
  }
}

// {{{ Theory

const Predicate* Theory::find_predicate(std::string_view name) const {
  for (const auto& p : signature) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void Theory::validate() const {
  if (domain.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "theory has an empty domain");
  }
  std::set<std::string> names;
  for (const auto& ind : domain) {
    if (ind.name.empty() ||
        ind.name.find_first_of(" \t\r\n") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid individual name '" + ind.name + "'");
    }
    if (!names.insert(ind.name).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate individual '" + ind.name + "'");
    }
  }
  std::set<std::string> preds;
  for (const auto& p : signature) {
    if (p.arity < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "predicate '" + p.name + "' must have arity >= 1");
    }
    if (!preds.insert(p.name).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate predicate '" + p.name + "'");
    }
  }
  auto check = [&](const Formula& f) {
    if (auto free = free_variables(f); !free.empty()) {
      throw Error(ErrorCode::kUnboundVariable,
                  "variable '" + *free.begin() + "' is free in " + to_string(f));
    }
    visit_atoms(f, [&](const Formula& a) {
      const Predicate* p = find_predicate(a.predicate());
      if (!p || p->arity != static_cast<int>(a.args().size())) {
        throw Error(ErrorCode::kUnknownPredicate,
                    a.predicate() + "/" + std::to_string(a.args().size()) +
                        " is not in the signature");
      }
      for (const auto& t : a.args()) {
        if (!t.is_variable() && !names.count(t.name)) {
          throw Error(ErrorCode::kUnknownIndividual,
                      "'" + t.name + "' is not in the domain");
        }
      }
    });
  };
  for (const auto& f : axioms) check(f);
  for (const auto& c : clues) check(c.formula);
}

// }}}

}  // namespace puzzte
