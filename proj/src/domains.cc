#include "puzzte/domains.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "puzzte/error.h"
#include "puzzte/fol_text.h"
#include "puzzte/ground.h"
#include "puzzte/model_finder.h"
#include "puzzte/parser.h"

#ifndef PUZZTE_DATA_DIR
#define PUZZTE_DATA_DIR "data"
#endif

namespace puzzte {

namespace {

Formula atom(const std::string& p, std::initializer_list<std::string> args) {
  std::vector<Term> terms;
  for (const auto& a : args) terms.push_back(Term::individual(a));
  return Formula::atom(p, std::move(terms));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Individuals in order of first mention across the clues.
std::vector<Individual> harvest(const std::vector<const Clue*>& clues) {
  std::vector<Individual> out;
  for (const Clue* c : clues) {
    for (auto& ind : individuals_in(c->formula)) {
      if (std::find(out.begin(), out.end(), ind) == out.end()) out.push_back(ind);
    }
  }
  return out;
}

Theory assemble(const std::vector<Clue>& clues, const std::vector<std::size_t>& removed,
                const DomainProfile& profile) {
  std::vector<const Clue*> kept;
  for (std::size_t i = 0; i < clues.size(); ++i) {
    if (!std::binary_search(removed.begin(), removed.end(), i)) kept.push_back(&clues[i]);
  }
  Theory t;
  t.signature = profile.signature;
  t.domain = profile.fixed_domain.empty() ? harvest(kept) : profile.fixed_domain;
  if (t.domain.empty()) throw Error(ErrorCode::kEmptyPuzzle, "no individuals in the puzzle");
  t.axioms = profile.background(t.domain);
  for (const Clue* c : kept) t.clues.push_back(*c);
  t.validate();
  return t;
}

std::size_t placeholder_count(const std::string& tmpl) {
  std::size_t n = 0;
  for (const char* p : {"{x}", "{y}"}) n += tmpl.find(p) != std::string::npos ? 1 : 0;
  return n;
}

}  // namespace

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::kComparison: return "comparison";
    case DomainKind::kKnightsKnaves: return "knights_knaves";
    case DomainKind::kZebra: return "zebra";
  }
  return "comparison";
}

DomainKind parse_domain(std::string_view name) {
  if (name == "comparison") return DomainKind::kComparison;
  if (name == "knights_knaves" || name == "knights") return DomainKind::kKnightsKnaves;
  if (name == "zebra") return DomainKind::kZebra;
  throw Error(ErrorCode::kInvalidArgument, "unknown domain '" + std::string(name) + "'");
}

const Categories& zebra_categories() {
  static const Categories kCategories = {
      {"nationality", {"brit", "swede", "dane", "norwegian", "german"}},
      {"color", {"red", "green", "white", "yellow", "blue"}},
      {"pet", {"dog", "bird", "cat", "horse", "fish"}},
      {"drink", {"tea", "coffee", "milk", "beer", "water"}},
      {"cigar", {"pallmall", "dunhill", "blends", "bluemaster", "prince"}},
  };
  return kCategories;
}

std::vector<Individual> zebra_houses() { return {{"A"}, {"B"}, {"C"}, {"D"}, {"E"}}; }

std::vector<Formula> comparison_background(const std::vector<Individual>& domain,
                                           bool equality_extension) {
  std::vector<Formula> out = {
      parse_formula("all x all y all z (taller(x,y) & taller(y,z) -> taller(x,z))"),
      parse_formula("all x -taller(x,x)"),
      parse_formula("all x all y (taller(x,y) -> -taller(y,x))"),
      parse_formula("all x all y (shorter(x,y) <-> taller(y,x))"),
  };
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      const std::string& a = domain[i].name;
      const std::string& b = domain[j].name;
      out.push_back(Formula::disjunction({atom("taller", {a, b}), atom("taller", {b, a})}));
    }
  }
  for (const auto& c : domain) {
    std::vector<Formula> above, below;
    for (const auto& d : domain) {
      if (d == c) continue;
      above.push_back(atom("taller", {c.name, d.name}));
      below.push_back(atom("shorter", {c.name, d.name}));
    }
    out.push_back(Formula::iff(atom("tallest", {c.name}), Formula::conjunction(above)));
    out.push_back(Formula::iff(atom("shortest", {c.name}), Formula::conjunction(below)));
  }
  if (equality_extension) {
    for (const char* p : {"sameTallAs", "sameShortAs"}) {
      out.push_back(parse_formula(fmt::format("all x {}(x,x)", p)));
      for (const auto& a : domain) {
        for (const auto& b : domain) {
          if (a != b) out.push_back(Formula::negation(atom(p, {a.name, b.name})));
        }
      }
    }
  }
  return out;
}

std::vector<Formula> knights_background(const std::vector<Individual>& domain) {
  std::vector<Formula> out = {
      parse_formula("all x (inhabitant(x) -> knight(x) | knave(x))"),
      parse_formula("all x (knight(x) <-> -knave(x))"),
      parse_formula("all x (knight(x) -> m(x))"),
      parse_formula("all x (knave(x) -> -m(x))"),
  };
  for (const auto& c : domain) out.push_back(atom("inhabitant", {c.name}));
  return out;
}

std::vector<Formula> zebra_background(const std::vector<Individual>& houses,
                                      const Categories& categories) {
  if (houses.size() != 5) {
    throw Error(ErrorCode::kInvalidArgument, "zebra puzzles have exactly five houses");
  }
  std::vector<Formula> out;
  for (const auto& [category, preds] : categories) {
    if (preds.size() != houses.size()) {
      throw Error(ErrorCode::kCategoryArityError,
                  fmt::format("category {} has {} predicates, expected {}", category,
                              preds.size(), houses.size()));
    }
    std::vector<std::string> disj;
    for (const auto& p : preds) disj.push_back(p + "(x)");
    out.push_back(parse_formula(fmt::format("all x ({})", fmt::join(disj, " | "))));
    for (std::size_t i = 0; i < preds.size(); ++i) {
      for (std::size_t j = i + 1; j < preds.size(); ++j) {
        out.push_back(parse_formula(fmt::format("all x -({}(x) & {}(x))", preds[i], preds[j])));
      }
    }
    for (const auto& p : preds) {
      out.push_back(parse_formula(
          fmt::format("all x all y (differentFrom(x,y) -> -({0}(x) & {0}(y)))", p)));
      out.push_back(parse_formula(fmt::format("exists x {}(x)", p)));
    }
  }
  out.push_back(parse_formula("all x all y (differentFrom(x,y) -> differentFrom(y,x))"));
  out.push_back(parse_formula("all x -differentFrom(x,x)"));
  for (const auto& a : houses) {
    for (const auto& b : houses) {
      if (a != b) out.push_back(atom("differentFrom", {a.name, b.name}));
    }
  }
  for (std::size_t i = 0; i < houses.size(); ++i) {
    for (std::size_t j = 0; j < houses.size(); ++j) {
      // rightneighbor(y,x): y is immediately to the right of x.
      Formula f = atom("rightneighbor", {houses[i].name, houses[j].name});
      out.push_back(i == j + 1 ? f : Formula::negation(f));
    }
  }
  out.push_back(
      parse_formula("all x all y (rightneighbor(x,y) | rightneighbor(y,x) <-> neighbor(x,y))"));
  for (std::size_t i = 0; i < houses.size(); ++i) {
    Formula first = atom("first", {houses[i].name});
    Formula center = atom("center", {houses[i].name});
    out.push_back(i == 0 ? first : Formula::negation(first));
    out.push_back(i == houses.size() / 2 ? center : Formula::negation(center));
  }
  return out;
}

std::vector<Formula> DomainProfile::background(const std::vector<Individual>& domain) const {
  switch (kind) {
    case DomainKind::kComparison: return comparison_background(domain, equality_extension);
    case DomainKind::kKnightsKnaves: return knights_background(domain);
    case DomainKind::kZebra: return zebra_background(domain, zebra_categories());
  }
  return {};
}

std::string default_grammar_dir() {
  if (const char* env = std::getenv("PUZZTE_GRAMMAR_DIR"); env && *env) return env;
  return std::string(PUZZTE_DATA_DIR) + "/grammars";
}

std::string grammar_file_name(DomainKind kind) {
  switch (kind) {
    case DomainKind::kComparison: return "comparison.fcfg";
    case DomainKind::kKnightsKnaves: return "knights.fcfg";
    case DomainKind::kZebra: return "zebra.fcfg";
  }
  return "";
}

DomainProfile load_profile(DomainKind kind, const std::string& grammar_dir,
                           bool equality_extension) {
  return load_profile_with_grammar(kind, grammar_dir + "/" + grammar_file_name(kind),
                                   equality_extension);
}

DomainProfile load_profile_with_grammar(DomainKind kind, const std::string& grammar_path,
                                        bool equality_extension) {
  DomainProfile p;
  p.kind = kind;
  p.grammar_path = grammar_path;
  p.grammar = std::make_shared<const Grammar>(load_grammar(grammar_path));
  switch (kind) {
    case DomainKind::kComparison:
      p.unary_predicates = {{"tallest", 1}, {"shortest", 1}};
      p.binary_predicates = {{"taller", 2}, {"shorter", 2}};
      p.templates = {{"tallest", "Is {x} the tallest ?"},
                     {"shortest", "Is {x} the shortest ?"},
                     {"taller", "Is {x} taller than {y} ?"},
                     {"shorter", "Is {x} shorter than {y} ?"}};
      if (equality_extension) {
        p.equality_extension = true;
        p.binary_predicates.push_back({"sameTallAs", 2});
        p.binary_predicates.push_back({"sameShortAs", 2});
        p.templates["sameTallAs"] = "Is {x} as tall as {y} ?";
        p.templates["sameShortAs"] = "Is {x} as short as {y} ?";
      }
      p.signature = p.unary_predicates;
      p.signature.insert(p.signature.end(), p.binary_predicates.begin(),
                         p.binary_predicates.end());
      break;
    case DomainKind::kKnightsKnaves:
      p.unary_predicates = {{"knight", 1}, {"knave", 1}};
      p.templates = {{"knight", "{x} is a knight"}, {"knave", "{x} is a knave"}};
      p.signature = {{"inhabitant", 1}, {"knight", 1}, {"knave", 1}, {"m", 1}};
      break;
    case DomainKind::kZebra: {
      static const std::map<std::string, std::string> kPhrases = {
          {"brit", "Brit lives in house {x}."},
          {"swede", "Swede lives in house {x}."},
          {"dane", "Dane lives in house {x}."},
          {"norwegian", "Norwegian lives in house {x}."},
          {"german", "German lives in house {x}."},
          {"red", "The house {x} is red."},
          {"green", "The house {x} is green."},
          {"white", "The house {x} is white."},
          {"yellow", "The house {x} is yellow."},
          {"blue", "The house {x} is blue."},
          {"dog", "The man in house {x} owns the dog."},
          {"bird", "The man in house {x} owns the bird."},
          {"cat", "The man in house {x} owns the cat."},
          {"horse", "The man in house {x} owns the horse."},
          {"fish", "The man in house {x} owns the fish."},
          {"tea", "The man in house {x} drinks tea."},
          {"coffee", "The man in house {x} drinks coffee."},
          {"milk", "The man in house {x} drinks milk."},
          {"beer", "The man in house {x} drinks beer."},
          {"water", "The man in house {x} drinks water."},
          {"pallmall", "The man in house {x} smokes Pall Mall."},
          {"dunhill", "The man in house {x} smokes Dunhill."},
          {"blends", "The man in house {x} smokes Blends."},
          {"bluemaster", "The man in house {x} smokes BlueMaster."},
          {"prince", "The man in house {x} smokes Prince."},
      };
      for (const auto& [category, preds] : zebra_categories()) {
        for (const auto& name : preds) p.unary_predicates.push_back({name, 1});
      }
      p.templates = kPhrases;
      p.signature = p.unary_predicates;
      p.signature.insert(p.signature.end(), {{"differentFrom", 2},
                                             {"rightneighbor", 2},
                                             {"neighbor", 2},
                                             {"first", 1},
                                             {"center", 1}});
      p.fixed_domain = zebra_houses();
      break;
    }
  }

  for (const auto* list : {&p.unary_predicates, &p.binary_predicates}) {
    for (const auto& pred : *list) {
      auto it = p.templates.find(pred.name);
      if (it == p.templates.end()) {
        throw Error(ErrorCode::kMissingTemplate, "no question template for " + pred.name);
      }
      if (placeholder_count(it->second) != static_cast<std::size_t>(pred.arity)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "template for " + pred.name + " does not have arity-many placeholders");
      }
    }
  }

  Theory probe;
  probe.signature = p.signature;
  probe.domain = p.fixed_domain.empty() ? std::vector<Individual>{{"A"}} : p.fixed_domain;
  probe.axioms = p.background(probe.domain);
  if (enumerate_models(ground(probe), 1).empty()) {
    throw Error(ErrorCode::kInconsistentTheory,
                std::string("background of ") + std::string(p.name()) + " is unsatisfiable");
  }
  return p;
}

std::string verbalize(const Predicate& predicate, const std::vector<Individual>& args,
                      const DomainProfile& profile) {
  auto it = profile.templates.find(predicate.name);
  if (it == profile.templates.end()) {
    throw Error(ErrorCode::kMissingTemplate, "no question template for " + predicate.name);
  }
  if (args.size() != static_cast<std::size_t>(predicate.arity)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("{} takes {} arguments, got {}", predicate.name, predicate.arity,
                            args.size()));
  }
  std::string out = it->second;
  const char* slots[] = {"{x}", "{y}"};
  for (std::size_t i = 0; i < args.size() && i < 2; ++i) {
    for (auto pos = out.find(slots[i]); pos != std::string::npos; pos = out.find(slots[i])) {
      out.replace(pos, 3, args[i].name);
    }
  }
  return out;
}

std::vector<Sentence> split_sentences(std::string_view text) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    bool end = i == text.size();
    char c = end ? '\0' : text[i];
    if (!end && c != '.' && c != '?' && c != '!') continue;
    std::string_view body = trim(text.substr(start, i - start));
    if (!body.empty()) {
      Sentence s;
      s.text = std::string(body);
      if (!end) s.text += c;
      s.interrogative = c == '?';
      out.push_back(std::move(s));
    }
    start = i + 1;
  }
  return out;
}

std::vector<std::string> PuzzleRecord::removed_clue_texts() const {
  std::vector<std::string> out;
  for (std::size_t i : removed_clues) out.push_back(clues.at(i).text);
  return out;
}

Formula translate_sentence(std::string_view sentence, const DomainProfile& profile) {
  ParseResult result = parse(sentence, *profile.grammar);
  std::vector<const Reading*> declared;
  for (const auto& r : result.readings) {
    bool ok = true;
    for (const auto& p : predicates_in(r.formula)) {
      ok = ok && std::find(profile.signature.begin(), profile.signature.end(), p) !=
                     profile.signature.end();
    }
    if (ok) declared.push_back(&r);
  }
  if (declared.empty()) {
    throw Error(ErrorCode::kUnknownPredicate,
                "every reading of '" + std::string(sentence) + "' uses an undeclared predicate");
  }
  std::size_t best = static_cast<std::size_t>(-1);
  for (const Reading* r : declared) best = std::min(best, connective_count(r->formula));
  std::vector<const Reading*> winners;
  for (const Reading* r : declared) {
    if (connective_count(r->formula) == best) winners.push_back(r);
  }
  if (winners.size() > 1) {
    std::vector<std::string> forms;
    for (const Reading* r : winners) forms.push_back(to_string(r->formula));
    throw Error(ErrorCode::kAmbiguousClue,
                fmt::format("'{}' has {} equally simple readings: {}", sentence, winners.size(),
                            fmt::join(forms, " ; ")));
  }
  return winners.front()->formula;
}

PuzzleRecord build_puzzle(const std::string& id, std::string_view text,
                          const DomainProfile& profile) {
  PuzzleRecord rec;
  rec.id = id;
  rec.domain = profile.kind;
  rec.text = std::string(trim(text));
  auto sentences = split_sentences(text);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].interrogative) continue;
    try {
      rec.clues.push_back({sentences[i].text, translate_sentence(sentences[i].text, profile)});
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("sentence {}: {}", i + 1, e.detail()), i + 1);
    }
  }
  if (rec.clues.empty()) {
    throw Error(ErrorCode::kEmptyPuzzle, "puzzle " + id + " has no declarative sentence");
  }
  rec.theory = assemble(rec.clues, {}, profile);
  return rec;
}

PuzzleRecord remove_clues(const PuzzleRecord& record, const std::vector<std::size_t>& indices,
                          const DomainProfile& profile) {
  std::vector<std::size_t> removed = record.removed_clues;
  for (std::size_t i : indices) {
    if (i >= record.clues.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  fmt::format("clue {} does not exist; puzzle {} has {} clues", i + 1, record.id,
                              record.clues.size()));
    }
    removed.push_back(i);
  }
  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());

  PuzzleRecord out = record;
  out.removed_clues = removed;
  std::string base = record.id;
  if (!record.removed_clues.empty()) base = base.substr(0, base.find("-minus-"));
  std::vector<std::string> nums;
  for (std::size_t i : removed) nums.push_back(std::to_string(i + 1));
  out.id = removed.empty() ? base : base + "-minus-" + fmt::format("{}", fmt::join(nums, "-"));
  out.theory = assemble(record.clues, removed, profile);
  return out;
}

}  // namespace puzzte
