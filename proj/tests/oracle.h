#pragma once

// Independent brute-force oracles shared by the unit and acceptance tests.
// Nothing here uses the grounder or the model finder.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "puzzte/fol.h"
#include "puzzte/model_finder.h"

namespace puzzte::oracle {

using Interpretation =
    std::function<bool(const std::string& predicate, const std::vector<std::string>& args)>;

// Tarskian truth of a closed formula over a finite domain.
inline bool truth_value(const Formula& f, const std::vector<Individual>& domain,
                        const Interpretation& v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue: return true;
    case K::kFalse: return false;
    case K::kAtom: {
      std::vector<std::string> args;
      for (const auto& t : f.args()) args.push_back(t.name);
      return v(f.predicate(), args);
    }
    case K::kNot: return !truth_value(f.children()[0], domain, v);
    case K::kAnd:
      for (const auto& c : f.children()) {
        if (!truth_value(c, domain, v)) return false;
      }
      return true;
    case K::kOr:
      for (const auto& c : f.children()) {
        if (truth_value(c, domain, v)) return true;
      }
      return false;
    case K::kImplies:
      return !truth_value(f.children()[0], domain, v) || truth_value(f.children()[1], domain, v);
    case K::kIff:
      return truth_value(f.children()[0], domain, v) == truth_value(f.children()[1], domain, v);
    case K::kForAll:
    case K::kExists: {
      bool universal = f.kind() == K::kForAll;
      for (const auto& d : domain) {
        bool r = truth_value(substitute(f.body(), f.variable(), d), domain, v);
        if (universal && !r) return false;
        if (!universal && r) return true;
      }
      return universal;
    }
  }
  return false;
}

inline Label label_of(const std::vector<Interpretation>& models, const std::string& predicate,
                      const std::vector<std::string>& args) {
  std::size_t yes = 0;
  for (const auto& m : models) yes += m(predicate, args) ? 1 : 0;
  if (yes == models.size()) return Label::kEntailment;
  if (yes == 0) return Label::kContradiction;
  return Label::kUnknown;
}

inline bool all_true(const std::vector<Formula>& clues, const std::vector<Individual>& domain,
                     const Interpretation& v) {
  for (const auto& c : clues) {
    if (!truth_value(c, domain, v)) return false;
  }
  return true;
}

// Comparison puzzles: every strict total order of the domain (n! of them)
// that satisfies the clues. taller(a,b) means a ranks above b; tallest is the
// top element.
inline std::vector<Interpretation> comparison_models(const std::vector<Formula>& clues,
                                                     const std::vector<Individual>& domain) {
  const std::size_t n = domain.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Interpretation> out;
  do {
    std::map<std::string, int> rank;
    for (std::size_t i = 0; i < n; ++i) rank[domain[i].name] = perm[i];
    const int top = static_cast<int>(n) - 1;
    Interpretation v = [rank, top](const std::string& p, const std::vector<std::string>& a) {
      if (p == "taller") return rank.at(a[0]) > rank.at(a[1]);
      if (p == "shorter") return rank.at(a[0]) < rank.at(a[1]);
      if (p == "tallest") return rank.at(a[0]) == top;
      if (p == "shortest") return rank.at(a[0]) == 0;
      if (p == "sameTallAs" || p == "sameShortAs") return a[0] == a[1];
      return false;
    };
    if (all_true(clues, domain, v)) out.push_back(v);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Knights and knaves: every knight/knave assignment (2^n) satisfying the
// clues, with a message true exactly when its speaker is a knight.
inline std::vector<Interpretation> knights_models(const std::vector<Formula>& clues,
                                                  const std::vector<Individual>& domain) {
  const std::size_t n = domain.size();
  std::vector<Interpretation> out;
  for (std::uint32_t code = 0; code < (1u << n); ++code) {
    std::map<std::string, bool> knight;
    for (std::size_t i = 0; i < n; ++i) knight[domain[i].name] = (code >> i) & 1;
    Interpretation v = [knight](const std::string& p, const std::vector<std::string>& a) {
      if (p == "knight" || p == "m") return knight.at(a[0]);
      if (p == "knave") return !knight.at(a[0]);
      return p == "inhabitant";
    };
    if (all_true(clues, domain, v)) out.push_back(v);
  }
  return out;
}

inline const std::vector<std::vector<std::string>>& zebra_categories() {
  static const std::vector<std::vector<std::string>> kCats = {
      {"brit", "swede", "dane", "norwegian", "german"},
      {"red", "green", "white", "yellow", "blue"},
      {"dog", "bird", "cat", "horse", "fish"},
      {"tea", "coffee", "milk", "beer", "water"},
      {"pallmall", "dunhill", "blends", "bluemaster", "prince"},
  };
  return kCats;
}

// Zebra puzzles over houses A..E: one permutation per category, searched
// category by category; a clue is checked as soon as every category it
// mentions is placed.
inline std::vector<Interpretation> zebra_models(const std::vector<Formula>& clues) {
  const auto& cats = zebra_categories();
  const std::vector<Individual> houses = {{"A"}, {"B"}, {"C"}, {"D"}, {"E"}};
  // predicate -> (category, slot)
  static const std::map<std::string, std::pair<int, int>> where = [&cats] {
    std::map<std::string, std::pair<int, int>> w;
    for (int c = 0; c < 5; ++c) {
      for (int s = 0; s < 5; ++s) w[cats[c][s]] = {c, s};
    }
    return w;
  }();
  // The deepest category each clue needs.
  std::vector<int> ready(clues.size(), -1);
  for (std::size_t i = 0; i < clues.size(); ++i) {
    for (const auto& p : predicates_in(clues[i])) {
      auto it = where.find(p.name);
      if (it != where.end()) ready[i] = std::max(ready[i], it->second.first);
    }
  }

  using Assignment = std::vector<std::vector<int>>;  // category -> house -> slot
  auto interpret = [](const Assignment* a) -> Interpretation {
    return [a](const std::string& p, const std::vector<std::string>& args) {
      auto house = [](const std::string& h) { return h[0] - 'A'; };
      if (p == "rightneighbor") return house(args[0]) == house(args[1]) + 1;
      if (p == "neighbor") return std::abs(house(args[0]) - house(args[1])) == 1;
      if (p == "differentFrom") return args[0] != args[1];
      if (p == "first") return house(args[0]) == 0;
      if (p == "center") return house(args[0]) == 2;
      auto [c, s] = where.at(p);
      return c < static_cast<int>(a->size()) && (*a)[c][house(args[0])] == s;
    };
  };

  std::vector<Interpretation> out;
  Assignment partial;
  const Interpretation live = interpret(&partial);
  std::function<void()> search = [&] {
    const int depth = static_cast<int>(partial.size());
    if (depth == 5) {
      auto owned = std::make_shared<Assignment>(partial);
      Interpretation v = interpret(owned.get());
      out.push_back([owned, v](const std::string& p, const std::vector<std::string>& a) {
        return v(p, a);
      });
      return;
    }
    std::vector<int> perm = {0, 1, 2, 3, 4};
    do {
      partial.push_back(perm);
      bool ok = true;
      for (std::size_t i = 0; i < clues.size() && ok; ++i) {
        if (ready[i] == depth) ok = truth_value(clues[i], houses, live);
      }
      if (ok) search();
      partial.pop_back();
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  std::vector<Formula> always;
  for (std::size_t i = 0; i < clues.size(); ++i) {
    if (ready[i] < 0) always.push_back(clues[i]);
  }
  if (!all_true(always, houses, interpret(&partial))) return out;
  search();
  return out;
}

}  // namespace puzzte::oracle
