#pragma once

// Function-free first-order logic over named individuals.

#include <compare>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace puzzte {

struct Individual {
  std::string name;

  auto operator<=>(const Individual&) const = default;
};

struct Predicate {
  std::string name;
  int arity = 1;

  auto operator<=>(const Predicate&) const = default;
};

struct Term {
  enum class Kind : unsigned char { kVariable, kIndividual };

  Kind kind = Kind::kIndividual;
  std::string name;

  static Term variable(std::string name) {
    return {Kind::kVariable, std::move(name)};
  }
  static Term individual(std::string name) {
    return {Kind::kIndividual, std::move(name)};
  }
  bool is_variable() const { return kind == Kind::kVariable; }

  auto operator<=>(const Term&) const = default;
};

// Immutable formula tree with shared structure. And/Or are n-ary and kept
// flat: a conjunction never has a conjunction as a direct child.
class Formula {
 public:
  enum class Kind : unsigned char {
    kTrue,
    kFalse,
    kAtom,
    kNot,
    kAnd,
    kOr,
    kImplies,
    kIff,
    kForAll,
    kExists,
  };

  Formula() : Formula(truth()) {}

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> parts);
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::kAtom; }
  bool is_quantifier() const {
    return kind() == Kind::kForAll || kind() == Kind::kExists;
  }

  // Atom accessors.
  const std::string& predicate() const;
  const std::vector<Term>& args() const;
  // Connective operands (Not: 1, Implies/Iff: 2, And/Or: n >= 2).
  const std::vector<Formula>& children() const;
  // Quantifier accessors.
  const std::string& variable() const;
  const Formula& body() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f);
std::string to_string(const Term& t);

// Replace free occurrences of `var` by `ind`. Individuals cannot capture.
Formula substitute(const Formula& f, std::string_view var, const Individual& ind);

// Negation normal form: only atoms are negated; -> and <-> eliminated.
Formula to_nnf(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
bool is_closed(const Formula& f);

// Individuals in order of first occurrence (left to right).
std::vector<Individual> individuals_in(const Formula& f);
// Predicates in order of first occurrence.
std::vector<Predicate> predicates_in(const Formula& f);

// Number of connective and quantifier nodes; an n-ary And/Or counts n-1.
std::size_t connective_count(const Formula& f);

struct Clue {
  std::string text;
  Formula formula;

  bool operator==(const Clue&) const = default;
};

struct Theory {
  std::vector<Predicate> signature;
  std::vector<Individual> domain;
  std::vector<Formula> axioms;  // background knowledge
  std::vector<Clue> clues;      // puzzle-specific, in sentence order

  // Throws Error when an invariant is violated: empty or duplicate domain,
  // duplicate predicate names, undeclared predicate, arity mismatch, open
  // sentence, or an individual outside the domain.
  void validate() const;

  const Predicate* find_predicate(std::string_view name) const;
  bool operator==(const Theory&) const = default;
};

}  // namespace puzzte
