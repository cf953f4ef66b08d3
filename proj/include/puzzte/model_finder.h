#pragma once

// Embedded finite model finder: exhaustive DPLL enumeration over a ground
// clause set, and three-way classification of queries against all models.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "puzzte/fol.h"
#include "puzzte/ground.h"

namespace puzzte {

inline constexpr std::size_t kDefaultModelCap = 100000;

// Total truth assignment over GroundClauseSet::atoms().
class Model {
 public:
  Model() = default;
  explicit Model(std::vector<bool> bits) : bits_(std::move(bits)) {}

  bool value(std::uint32_t atom) const { return bits_.at(atom); }
  std::size_t size() const { return bits_.size(); }
  const std::vector<bool>& bits() const { return bits_; }

  bool satisfies(const GroundClauseSet& clauses) const;

  // True atoms in atom order, space separated: "knave(Bart) knight(Rex)".
  std::string describe(const GroundClauseSet& clauses) const;

  auto operator<=>(const Model&) const = default;

 private:
  std::vector<bool> bits_;
};

struct ModelSet {
  std::vector<Model> models;
  bool truncated = false;
  std::size_t cap = kDefaultModelCap;

  std::size_t size() const { return models.size(); }
  bool empty() const { return models.empty(); }
  // One line per model, as Model::describe.
  std::string serialize(const GroundClauseSet& clauses) const;
};

// All satisfying assignments, at most `cap`, in lexicographic order over the
// atom order with false < true. Branching follows the atom order; unit
// propagation only, no pure-literal rule. `truncated` is set iff a model
// beyond the cap exists.
ModelSet enumerate_models(const GroundClauseSet& clauses, std::size_t cap = kDefaultModelCap);

// Tarskian evaluation of a closed query after grounding it over the domain.
// Throws UnknownPredicate / UnboundVariable / UnknownIndividual.
bool evaluate(const Model& model, const Formula& query, const GroundClauseSet& clauses);

enum class Label { kEntailment, kContradiction, kUnknown };

std::string_view to_string(Label label);
// Accepts exactly "entailment", "contradiction", "unknown".
Label parse_label(std::string_view text);

// A theory together with its grounding and complete model set. Immutable
// once built, so classify() may be called concurrently.
class SolvedTheory {
 public:
  explicit SolvedTheory(Theory theory, std::size_t cap = kDefaultModelCap);

  const Theory& theory() const { return theory_; }
  const GroundClauseSet& clauses() const { return clauses_; }
  const ModelSet& models() const { return models_; }

  // Entailment if the query holds in every model, Contradiction if in none,
  // Unknown otherwise. Throws InconsistentTheory when there is no model and
  // Truncated when the model set was capped.
  Label classify(const Formula& query) const;

 private:
  Theory theory_;
  GroundClauseSet clauses_;
  ModelSet models_;
};

Label classify(const Theory& theory, const Formula& query, std::size_t cap = kDefaultModelCap);

}  // namespace puzzte
