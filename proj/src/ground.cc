#include "puzzte/ground.h"

#include <algorithm>
#include <set>

#include "puzzte/error.h"

namespace puzzte {

namespace {

constexpr std::size_t kMaxClausesPerSentence = 1u << 20;

// Sorts, removes duplicate literals; returns false for a tautology.
bool normalize(Clause& c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i].atom == c[i - 1].atom) return false;
  }
  return true;
}

Literal literal_of(const Formula& atom, bool positive, const GroundClauseSet& cs) {
  std::vector<std::uint32_t> args;
  args.reserve(atom.args().size());
  for (const auto& t : atom.args()) {
    if (t.is_variable()) {
      throw Error(ErrorCode::kUnboundVariable, "variable '" + t.name + "' is free");
    }
    auto idx = cs.find_individual(t.name);
    if (!idx) {
      throw Error(ErrorCode::kUnknownIndividual, "'" + t.name + "' is not in the domain");
    }
    args.push_back(*idx);
  }
  auto a = cs.find_atom(atom.predicate(), args);
  if (!a) {
    throw Error(ErrorCode::kUnknownPredicate,
                atom.predicate() + "/" + std::to_string(args.size()) +
                    " is not in the signature");
  }
  return {*a, positive};
}

std::vector<Clause> cnf(const Formula& f, const GroundClauseSet& cs) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
      return {};
    case K::kFalse:
      return {Clause{}};
    case K::kAtom:
      return {Clause{literal_of(f, true, cs)}};
    case K::kNot: {
      const Formula& inner = f.children()[0];
      if (!inner.is_atom()) {
        throw Error(ErrorCode::kInvalidArgument, "clausify expects NNF input");
      }
      return {Clause{literal_of(inner, false, cs)}};
    }
    case K::kAnd: {
      std::vector<Clause> out;
      for (const auto& c : f.children()) {
        auto part = cnf(c, cs);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    case K::kOr: {
      std::vector<Clause> acc{Clause{}};
      for (const auto& c : f.children()) {
        auto part = cnf(c, cs);
        if (part.empty()) return {};  // a true disjunct
        std::vector<Clause> next;
        for (const auto& a : acc) {
          for (const auto& b : part) {
            Clause merged = a;
            merged.insert(merged.end(), b.begin(), b.end());
            if (normalize(merged)) next.push_back(std::move(merged));
          }
        }
        if (next.size() > kMaxClausesPerSentence) {
          throw Error(ErrorCode::kInvalidArgument, "CNF expansion too large");
        }
        acc = std::move(next);
        if (acc.empty()) return {};
      }
      return acc;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "clausify expects a quantifier-free NNF formula");
  }
}

// True when unit propagation over `clauses` reaches a conflict.
bool unit_refutable(const std::vector<Clause>& clauses, std::size_t atom_count) {
  std::vector<signed char> value(atom_count, 0);  // 0 unassigned, 1 true, -1 false
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : clauses) {
      std::size_t unassigned = 0;
      const Literal* last = nullptr;
      bool satisfied = false;
      for (const auto& lit : c) {
        signed char v = value[lit.atom];
        if (v == 0) {
          ++unassigned;
          last = &lit;
        } else if ((v > 0) == lit.positive) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) return true;
      if (unassigned == 1) {
        value[last->atom] = last->positive ? 1 : -1;
        changed = true;
      }
    }
  }
  return false;
}

}  // namespace

GroundClauseSet::GroundClauseSet(std::vector<Individual> domain,
                                 std::vector<GroundAtom> atoms,
                                 std::vector<Clause> clauses)
    : domain_(std::move(domain)), atoms_(std::move(atoms)), clauses_(std::move(clauses)) {
  for (std::uint32_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i], i);
  for (std::uint32_t i = 0; i < domain_.size(); ++i) individuals_.emplace(domain_[i].name, i);
}

std::optional<std::uint32_t> GroundClauseSet::find_atom(
    const std::string& predicate, const std::vector<std::uint32_t>& args) const {
  auto it = index_.find(GroundAtom{predicate, args});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> GroundClauseSet::find_individual(const std::string& name) const {
  auto it = individuals_.find(name);
  if (it == individuals_.end()) return std::nullopt;
  return it->second;
}

bool GroundClauseSet::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.empty(); });
}

std::string GroundClauseSet::atom_text(std::uint32_t atom) const {
  const GroundAtom& a = atoms_.at(atom);
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += domain_[a.args[i]].name;
  }
  return out + ")";
}

std::string GroundClauseSet::serialize() const {
  std::string out;
  for (std::uint32_t i = 0; i < atoms_.size(); ++i) {
    out += std::to_string(i) + " " + atom_text(i) + "\n";
  }
  for (const auto& c : clauses_) {
    out += "c";
    for (const auto& lit : c) {
      out += lit.positive ? " " : " -";
      out += std::to_string(lit.atom);
    }
    out += "\n";
  }
  return out;
}

std::vector<GroundAtom> enumerate_atoms(const std::vector<Predicate>& signature,
                                        std::size_t domain_size) {
  std::vector<Predicate> sorted = signature;
  std::sort(sorted.begin(), sorted.end(),
            [](const Predicate& a, const Predicate& b) { return a.name < b.name; });
  std::vector<GroundAtom> atoms;
  for (const auto& p : sorted) {
    std::vector<std::uint32_t> args(static_cast<std::size_t>(p.arity), 0);
    if (domain_size == 0) continue;
    // Odometer over domain^arity, last argument fastest.
    while (true) {
      atoms.push_back({p.name, args});
      int k = p.arity - 1;
      while (k >= 0 && ++args[k] == domain_size) {
        args[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  return atoms;
}

Formula expand_quantifiers(const Formula& f, const std::vector<Individual>& domain) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
    case K::kFalse:
    case K::kAtom:
      return f;
    case K::kNot:
      return Formula::negation(expand_quantifiers(f.children()[0], domain));
    case K::kAnd:
    case K::kOr: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(expand_quantifiers(c, domain));
      return f.kind() == K::kAnd ? Formula::conjunction(std::move(parts))
                                 : Formula::disjunction(std::move(parts));
    }
    case K::kImplies:
      return Formula::implies(expand_quantifiers(f.children()[0], domain),
                              expand_quantifiers(f.children()[1], domain));
    case K::kIff:
      return Formula::iff(expand_quantifiers(f.children()[0], domain),
                          expand_quantifiers(f.children()[1], domain));
    case K::kForAll:
    case K::kExists: {
      std::vector<Formula> instances;
      instances.reserve(domain.size());
      for (const auto& ind : domain) {
        instances.push_back(
            expand_quantifiers(substitute(f.body(), f.variable(), ind), domain));
      }
      return f.kind() == K::kForAll ? Formula::conjunction(std::move(instances))
                                    : Formula::disjunction(std::move(instances));
    }
  }
  return f;
}

std::vector<Clause> clausify(const Formula& ground_formula, const GroundClauseSet& atoms) {
  auto clauses = cnf(to_nnf(ground_formula), atoms);
  std::vector<Clause> out;
  for (auto& c : clauses) {
    if (normalize(c)) out.push_back(std::move(c));
  }
  return out;
}

GroundClauseSet ground(const Theory& theory) {
  theory.validate();
  GroundClauseSet table(theory.domain, enumerate_atoms(theory.signature, theory.domain.size()), {});

  std::vector<Clause> clauses;
  std::set<Clause> seen;
  auto add = [&](const Formula& sentence) {
    for (auto& c : clausify(expand_quantifiers(sentence, theory.domain), table)) {
      if (seen.insert(c).second) clauses.push_back(std::move(c));
    }
  };
  for (const auto& f : theory.axioms) add(f);
  for (const auto& c : theory.clues) add(c.formula);

  if (!seen.count(Clause{}) && unit_refutable(clauses, table.atom_count())) {
    clauses.push_back(Clause{});
  }
  return GroundClauseSet(theory.domain, table.atoms(), std::move(clauses));
}

}  // namespace puzzte
