#include "puzzte/model_finder.h"

#include <algorithm>

#include "puzzte/error.h"

namespace puzzte {

namespace {

// Literal code: 2 * atom + (positive ? 1 : 0); negation flips the low bit.
using Code = std::uint32_t;

Code encode(const Literal& lit) { return 2 * lit.atom + (lit.positive ? 1u : 0u); }

class Enumerator {
 public:
  explicit Enumerator(const GroundClauseSet& cs)
      : n_(cs.atom_count()), value_(n_, kUnassigned), watches_(2 * n_) {
    for (const auto& c : cs.clauses()) {
      if (c.empty()) {
        unsat_ = true;
        return;
      }
      if (c.size() == 1) {
        units_.push_back(encode(c.front()));
        continue;
      }
      std::vector<Code> lits;
      lits.reserve(c.size());
      for (const auto& l : c) lits.push_back(encode(l));
      auto idx = static_cast<std::uint32_t>(clauses_.size());
      watches_[lits[0]].push_back(idx);
      watches_[lits[1]].push_back(idx);
      clauses_.push_back(std::move(lits));
    }
  }

  ModelSet run(std::size_t cap) {
    ModelSet out;
    out.cap = cap;
    if (unsat_) return out;
    for (Code u : units_) {
      if (is_false(u)) return out;
      if (!is_true(u)) assign(u);
    }
    if (!propagate()) return out;

    while (true) {
      auto v = pick();
      if (!v) {
        if (out.models.size() == cap) {
          out.truncated = true;
          break;
        }
        std::vector<bool> bits(n_);
        for (std::size_t i = 0; i < n_; ++i) bits[i] = value_[i] == kTrue;
        out.models.emplace_back(std::move(bits));
        // Treat the model as a conflict to continue enumeration.
        if (!backtrack()) break;
        continue;
      }
      decisions_.push_back({*v, trail_.size(), false});
      assign(2 * *v);  // false first
      if (!propagate() && !backtrack()) break;
    }
    return out;
  }

 private:
  static constexpr signed char kUnassigned = -1;
  static constexpr signed char kFalse = 0;
  static constexpr signed char kTrue = 1;

  struct Decision {
    std::uint32_t atom;
    std::size_t trail_pos;
    bool flipped;
  };

  bool is_true(Code c) const { return value_[c >> 1] == static_cast<signed char>(c & 1u); }
  bool is_false(Code c) const {
    signed char v = value_[c >> 1];
    return v != kUnassigned && v != static_cast<signed char>(c & 1u);
  }

  void assign(Code c) {
    value_[c >> 1] = static_cast<signed char>(c & 1u);
    trail_.push_back(c);
  }

  void undo_to(std::size_t pos) {
    while (trail_.size() > pos) {
      value_[trail_.back() >> 1] = kUnassigned;
      trail_.pop_back();
    }
    head_ = std::min(head_, pos);
  }

  std::optional<std::uint32_t> pick() const {
    // Atoms before the latest decision were all assigned when it was made.
    std::size_t from = decisions_.empty() ? 0 : decisions_.back().atom + 1;
    for (std::size_t i = from; i < n_; ++i) {
      if (value_[i] == kUnassigned) return static_cast<std::uint32_t>(i);
    }
    return std::nullopt;
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      Code falsified = trail_[head_++] ^ 1u;
      auto& ws = watches_[falsified];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        std::uint32_t ci = ws[i];
        auto& lits = clauses_[ci];
        if (lits[0] == falsified) std::swap(lits[0], lits[1]);
        if (is_true(lits[0])) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < lits.size(); ++k) {
          if (!is_false(lits[k])) {
            std::swap(lits[1], lits[k]);
            watches_[lits[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (is_false(lits[0])) {
          for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
          ws.resize(keep);
          head_ = trail_.size();
          return false;
        }
        assign(lits[0]);
      }
      ws.resize(keep);
    }
    return true;
  }

  // Chronological backtracking: flip the deepest unflipped decision.
  bool backtrack() {
    while (!decisions_.empty()) {
      Decision& d = decisions_.back();
      undo_to(d.trail_pos);
      if (d.flipped) {
        decisions_.pop_back();
        continue;
      }
      d.flipped = true;
      assign(2 * d.atom + 1);
      if (propagate()) return true;
    }
    return false;
  }

  std::size_t n_;
  std::vector<signed char> value_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::vector<Code>> clauses_;
  std::vector<Code> units_;
  std::vector<Code> trail_;
  std::size_t head_ = 0;
  std::vector<Decision> decisions_;
  bool unsat_ = false;
};

bool eval_ground(const Formula& f, const Model& m, const GroundClauseSet& cs) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue: return true;
    case K::kFalse: return false;
    case K::kAtom: {
      std::vector<std::uint32_t> args;
      for (const auto& t : f.args()) {
        if (t.is_variable()) {
          throw Error(ErrorCode::kUnboundVariable, "variable '" + t.name + "' is free");
        }
        auto idx = cs.find_individual(t.name);
        if (!idx) {
          throw Error(ErrorCode::kUnknownIndividual, "'" + t.name + "' is not in the domain");
        }
        args.push_back(*idx);
      }
      auto a = cs.find_atom(f.predicate(), args);
      if (!a) {
        throw Error(ErrorCode::kUnknownPredicate,
                    f.predicate() + "/" + std::to_string(args.size()) +
                        " is not in the signature");
      }
      return m.value(*a);
    }
    case K::kNot: return !eval_ground(f.children()[0], m, cs);
    case K::kAnd:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return eval_ground(c, m, cs); });
    case K::kOr:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return eval_ground(c, m, cs); });
    case K::kImplies:
      return !eval_ground(f.children()[0], m, cs) || eval_ground(f.children()[1], m, cs);
    case K::kIff:
      return eval_ground(f.children()[0], m, cs) == eval_ground(f.children()[1], m, cs);
    case K::kForAll:
    case K::kExists:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "quantifier left after expansion");
}

}  // namespace

bool Model::satisfies(const GroundClauseSet& clauses) const {
  if (bits_.size() != clauses.atom_count()) return false;
  return std::all_of(clauses.clauses().begin(), clauses.clauses().end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(),
                       [&](const Literal& l) { return bits_[l.atom] == l.positive; });
  });
}

std::string Model::describe(const GroundClauseSet& clauses) const {
  std::string out;
  for (std::uint32_t i = 0; i < bits_.size(); ++i) {
    if (!bits_[i]) continue;
    if (!out.empty()) out += ' ';
    out += clauses.atom_text(i);
  }
  return out;
}

std::string ModelSet::serialize(const GroundClauseSet& clauses) const {
  std::string out;
  for (const auto& m : models) out += m.describe(clauses) + "\n";
  return out;
}

ModelSet enumerate_models(const GroundClauseSet& clauses, std::size_t cap) {
  if (cap < 1) throw Error(ErrorCode::kInvalidArgument, "model cap must be >= 1");
  return Enumerator(clauses).run(cap);
}

bool evaluate(const Model& model, const Formula& query, const GroundClauseSet& clauses) {
  if (auto free = free_variables(query); !free.empty()) {
    throw Error(ErrorCode::kUnboundVariable, "variable '" + *free.begin() + "' is free");
  }
  return eval_ground(expand_quantifiers(query, clauses.domain()), model, clauses);
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kEntailment: return "entailment";
    case Label::kContradiction: return "contradiction";
    case Label::kUnknown: return "unknown";
  }
  return "unknown";
}

Label parse_label(std::string_view text) {
  if (text == "entailment") return Label::kEntailment;
  if (text == "contradiction") return Label::kContradiction;
  if (text == "unknown") return Label::kUnknown;
  throw Error(ErrorCode::kInvalidArgument, "invalid label '" + std::string(text) + "'");
}

SolvedTheory::SolvedTheory(Theory theory, std::size_t cap)
    : theory_(std::move(theory)),
      clauses_(ground(theory_)),
      models_(enumerate_models(clauses_, cap)) {}

Label SolvedTheory::classify(const Formula& query) const {
  if (models_.empty()) {
    throw Error(ErrorCode::kInconsistentTheory, "theory has no models");
  }
  if (models_.truncated) {
    throw Error(ErrorCode::kTruncated,
                "model enumeration stopped at cap " + std::to_string(models_.cap));
  }
  // Ground once, then evaluate against every model.
  if (auto free = free_variables(query); !free.empty()) {
    throw Error(ErrorCode::kUnboundVariable, "variable '" + *free.begin() + "' is free");
  }
  Formula g = expand_quantifiers(query, clauses_.domain());
  std::size_t holds = 0;
  for (const auto& m : models_.models) holds += eval_ground(g, m, clauses_) ? 1 : 0;
  if (holds == models_.size()) return Label::kEntailment;
  if (holds == 0) return Label::kContradiction;
  return Label::kUnknown;
}

Label classify(const Theory& theory, const Formula& query, std::size_t cap) {
  return SolvedTheory(theory, cap).classify(query);
}

}  // namespace puzzte
