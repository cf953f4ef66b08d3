#pragma once

// Grounding a theory over its finite domain into propositional CNF.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "puzzte/fol.h"

namespace puzzte {

struct GroundAtom {
  std::string predicate;
  std::vector<std::uint32_t> args;  // indices into the domain

  auto operator<=>(const GroundAtom&) const = default;
};

struct Literal {
  std::uint32_t atom;
  bool positive;

  auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

class GroundClauseSet {
 public:
  GroundClauseSet() = default;
  // Atoms must already be in canonical order; clauses index into them.
  GroundClauseSet(std::vector<Individual> domain, std::vector<GroundAtom> atoms,
                  std::vector<Clause> clauses);

  const std::vector<Individual>& domain() const { return domain_; }
  const std::vector<GroundAtom>& atoms() const { return atoms_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t atom_count() const { return atoms_.size(); }

  std::optional<std::uint32_t> find_atom(const std::string& predicate,
                                         const std::vector<std::uint32_t>& args) const;
  std::optional<std::uint32_t> find_individual(const std::string& name) const;

  bool has_empty_clause() const;

  // "taller(Mike,Sally)"
  std::string atom_text(std::uint32_t atom) const;
  // Deterministic text form: one atom per line, then one clause per line.
  std::string serialize() const;

 private:
  std::vector<Individual> domain_;
  std::vector<GroundAtom> atoms_;
  std::vector<Clause> clauses_;
  std::map<GroundAtom, std::uint32_t> index_;
  std::map<std::string, std::uint32_t> individuals_;
};

// Every atom of the signature over the domain, ordered by predicate name and
// then by argument indices in domain order.
std::vector<GroundAtom> enumerate_atoms(const std::vector<Predicate>& signature,
                                        std::size_t domain_size);

// Expands quantifiers over the domain: all -> conjunction, exists -> disjunction.
Formula expand_quantifiers(const Formula& f, const std::vector<Individual>& domain);

// Validates the theory, expands, converts to NNF and distributes to CNF.
// Tautological clauses are dropped and duplicates removed. If unit
// propagation alone refutes the clauses, an empty clause is appended.
GroundClauseSet ground(const Theory& theory);

// CNF of a quantifier-free ground formula against the atoms of `clauses`.
std::vector<Clause> clausify(const Formula& ground_formula, const GroundClauseSet& atoms);

}  // namespace puzzte
