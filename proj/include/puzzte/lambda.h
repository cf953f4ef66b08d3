#pragma once

// Typed-in-practice lambda terms used as grammar semantics, with NLTK-style
// text syntax:
//   \x y.body   all x.body   exists x.body   -a   (a & b)   (a | b)
//   (a -> b)    (a <-> b)    p(a,b)          ?meta(a)
// f(a,b) abbreviates f(a)(b). An identifier applied to arguments is a
// predicate constant unless it is bound or a metavariable.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "puzzte/fol.h"

namespace puzzte {

class LambdaTerm {
 public:
  enum class Kind : unsigned char {
    kVar,
    kConst,
    kMeta,
    kAbs,
    kApp,
    kAtom,
    kNot,
    kAnd,
    kOr,
    kImplies,
    kIff,
    kForAll,
    kExists,
  };

  LambdaTerm() : LambdaTerm(constant("_")) {}

  static LambdaTerm var(std::string name);
  static LambdaTerm constant(std::string name);
  static LambdaTerm meta(std::string name);
  static LambdaTerm abs(std::string var, LambdaTerm body);
  static LambdaTerm app(LambdaTerm fn, LambdaTerm arg);
  static LambdaTerm atom(std::string predicate, std::vector<LambdaTerm> args);
  static LambdaTerm negation(LambdaTerm a);
  static LambdaTerm conjunction(LambdaTerm a, LambdaTerm b);
  static LambdaTerm disjunction(LambdaTerm a, LambdaTerm b);
  static LambdaTerm implies(LambdaTerm a, LambdaTerm b);
  static LambdaTerm iff(LambdaTerm a, LambdaTerm b);
  static LambdaTerm forall(std::string var, LambdaTerm body);
  static LambdaTerm exists(std::string var, LambdaTerm body);

  Kind kind() const;
  bool is_binder() const;
  // Variable, constant, metavariable or predicate name; binder variable.
  const std::string& name() const;
  // Abs/ForAll/Exists: {body}; App: {fn, arg}; Atom: args; connectives: operands.
  const std::vector<LambdaTerm>& children() const;
  const LambdaTerm& body() const { return children()[0]; }

  // Node identity; cheap pointer comparison used to detect "no change".
  bool same_node(const LambdaTerm& other) const { return node_ == other.node_; }

  bool operator==(const LambdaTerm& other) const;
  bool operator!=(const LambdaTerm& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit LambdaTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static LambdaTerm make(Kind kind, std::string name, std::vector<LambdaTerm> kids);

  std::shared_ptr<const Node> node_;
};

// Throws SyntaxError with the 1-based character offset.
LambdaTerm parse_lambda(std::string_view text);
std::string to_string(const LambdaTerm& t);

std::set<std::string> free_variables(const LambdaTerm& t);
std::set<std::string> metas_in(const LambdaTerm& t);

// Replaces metavariables that have a binding; others are left in place.
LambdaTerm substitute_metas(const LambdaTerm& t, const std::map<std::string, LambdaTerm>& bindings);

// Capture-avoiding substitution of `value` for free occurrences of `var`.
LambdaTerm substitute(const LambdaTerm& t, const std::string& var, const LambdaTerm& value);

enum class ReductionOrder { kNormal, kApplicative };

inline constexpr std::size_t kReductionBudget = 10000;

// Beta-normal form. Throws ReductionBudgetExceeded after `budget` steps.
LambdaTerm beta_reduce(const LambdaTerm& t, ReductionOrder order = ReductionOrder::kNormal,
                       std::size_t budget = kReductionBudget, std::size_t* steps = nullptr);

bool alpha_equivalent(const LambdaTerm& a, const LambdaTerm& b);

// Converts a beta-normal closed term to a Formula. Bound variables are
// renamed by nesting depth (x, y, z, u, v, w, x7, x8, ...). Throws
// ResidualLambda on abstractions, applications or metavariables, and
// UnboundVariable on free variables.
Formula to_formula(const LambdaTerm& t);

}  // namespace puzzte
