#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "oracle.h"
#include "puzzte/domains.h"
#include "puzzte/error.h"
#include "puzzte/fol_text.h"
#include "puzzte/ground.h"
#include "puzzte/model_finder.h"

namespace puzzte {
namespace {

const DomainProfile& profile(DomainKind kind) {
  static const DomainProfile p[] = {
      load_profile(DomainKind::kComparison),
      load_profile(DomainKind::kKnightsKnaves),
      load_profile(DomainKind::kZebra),
  };
  return p[static_cast<int>(kind)];
}

std::string corpus(const std::string& file) {
  std::ifstream in(std::string(PUZZTE_DATA_DIR) + "/corpus/" + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PuzzleRecord puzzle(const std::string& file, DomainKind kind) {
  return build_puzzle(file, corpus(file), profile(kind));
}

ModelSet solve(const Theory& t, GroundClauseSet* out = nullptr) {
  GroundClauseSet cs = ground(t);
  ModelSet m = enumerate_models(cs);
  if (out) *out = cs;
  return m;
}

std::vector<Formula> clue_formulas(const Theory& t) {
  std::vector<Formula> out;
  for (const auto& c : t.clues) out.push_back(c.formula);
  return out;
}

std::vector<Individual> names(std::initializer_list<const char*> n) {
  std::vector<Individual> out;
  for (const char* s : n) out.push_back({s});
  return out;
}

// Each solver model as the set of true atom texts, sorted.
std::multiset<std::set<std::string>> solver_worlds(const Theory& t,
                                                   const std::set<std::string>& preds) {
  GroundClauseSet cs;
  ModelSet ms = solve(t, &cs);
  std::multiset<std::set<std::string>> out;
  for (const auto& m : ms.models) {
    std::set<std::string> w;
    for (std::uint32_t a = 0; a < cs.atom_count(); ++a) {
      if (m.value(a) && preds.count(cs.atoms()[a].predicate)) w.insert(cs.atom_text(a));
    }
    out.insert(w);
  }
  return out;
}

// The same view of oracle interpretations.
std::multiset<std::set<std::string>> oracle_worlds(const std::vector<oracle::Interpretation>& ms,
                                                   const std::vector<Predicate>& preds,
                                                   const std::vector<Individual>& domain) {
  std::multiset<std::set<std::string>> out;
  for (const auto& m : ms) {
    std::set<std::string> w;
    for (const auto& p : preds) {
      for (const auto& a : domain) {
        if (p.arity == 1) {
          if (m(p.name, {a.name})) w.insert(p.name + "(" + a.name + ")");
          continue;
        }
        for (const auto& b : domain) {
          if (m(p.name, {a.name, b.name})) w.insert(p.name + "(" + a.name + "," + b.name + ")");
        }
      }
    }
    out.insert(w);
  }
  return out;
}

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Domains, NamesRoundTrip) {
  for (auto k : {DomainKind::kComparison, DomainKind::kKnightsKnaves, DomainKind::kZebra}) {
    EXPECT_EQ(parse_domain(to_string(k)), k);
  }
  EXPECT_EQ(parse_domain("knights"), DomainKind::kKnightsKnaves);
  EXPECT_EQ(error_of([] { parse_domain("sudoku"); }), ErrorCode::kInvalidArgument);
}

TEST(ComparisonBackground, AloneHasEveryTotalOrder) {
  auto all = names({"A", "B", "C", "D", "E"});
  std::size_t factorial = 1;
  for (std::size_t n = 1; n <= all.size(); ++n) {
    factorial *= n;
    Theory t;
    t.signature = profile(DomainKind::kComparison).signature;
    t.domain.assign(all.begin(), all.begin() + n);
    t.axioms = comparison_background(t.domain);
    EXPECT_EQ(solve(t).size(), factorial) << n;
  }
}

TEST(ComparisonBackground, SingleIndividualIsTallestAndShortest) {
  Theory t;
  t.signature = profile(DomainKind::kComparison).signature;
  t.domain = names({"Mike"});
  t.axioms = comparison_background(t.domain);
  GroundClauseSet cs;
  ModelSet ms = solve(t, &cs);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms.models[0].describe(cs), "shortest(Mike) tallest(Mike)");
}

TEST(ComparisonBackground, EqualityExtensionIsIdentity) {
  Theory t;
  t.signature = load_profile(DomainKind::kComparison, default_grammar_dir(), true).signature;
  t.domain = names({"Katy", "Mike"});
  t.axioms = comparison_background(t.domain, true);
  t.clues = {{"", parse_formula("taller(Katy,Mike)")}};
  GroundClauseSet cs;
  ModelSet ms = solve(t, &cs);
  ASSERT_EQ(ms.size(), 1u);
  EXPECT_EQ(ms.models[0].describe(cs),
            "sameShortAs(Katy,Katy) sameShortAs(Mike,Mike) sameTallAs(Katy,Katy) "
            "sameTallAs(Mike,Mike) shorter(Mike,Katy) shortest(Mike) taller(Katy,Mike) "
            "tallest(Katy)");
}

TEST(KnightsBackground, AloneHasEveryAssignment) {
  auto all = names({"A", "B", "C", "D", "E"});
  for (std::size_t n = 1; n <= all.size(); ++n) {
    Theory t;
    t.signature = profile(DomainKind::kKnightsKnaves).signature;
    t.domain.assign(all.begin(), all.begin() + n);
    t.axioms = knights_background(t.domain);
    EXPECT_EQ(solve(t).size(), std::size_t{1} << n) << n;
  }
}

TEST(ZebraBackground, AloneHasEveryPermutationProduct) {
  Theory t;
  t.signature = profile(DomainKind::kZebra).signature;
  t.domain = zebra_houses();
  Categories two(zebra_categories().begin(), zebra_categories().begin() + 2);
  t.signature.clear();
  for (const auto& [c, preds] : two) {
    for (const auto& p : preds) t.signature.push_back({p, 1});
  }
  t.signature.insert(t.signature.end(), {{"differentFrom", 2},
                                         {"rightneighbor", 2},
                                         {"neighbor", 2},
                                         {"first", 1},
                                         {"center", 1}});
  t.axioms = zebra_background(t.domain, two);
  EXPECT_EQ(solve(t).size(), 120u * 120u);
}

TEST(ZebraBackground, RejectsBadShapes) {
  EXPECT_EQ(error_of([] { zebra_background(names({"A", "B", "C", "D"}), zebra_categories()); }),
            ErrorCode::kInvalidArgument);
  Categories bad = {{"pet", {"dog", "cat", "fish", "bird"}}};
  EXPECT_EQ(error_of([&] { zebra_background(zebra_houses(), bad); }),
            ErrorCode::kCategoryArityError);
}

TEST(Profiles, TemplatesCoverQuestionPredicates) {
  EXPECT_EQ(profile(DomainKind::kZebra).unary_predicates.size(), 25u);
  EXPECT_EQ(verbalize({"taller", 2}, names({"Katy", "Bob"}), profile(DomainKind::kComparison)),
            "Is Katy taller than Bob ?");
  EXPECT_EQ(verbalize({"knight", 1}, names({"Sue"}), profile(DomainKind::kKnightsKnaves)),
            "Sue is a knight");
  EXPECT_EQ(verbalize({"fish", 1}, names({"D"}), profile(DomainKind::kZebra)),
            "The man in house D owns the fish.");
  EXPECT_EQ(error_of([] {
              verbalize({"taller", 2}, names({"Katy"}), profile(DomainKind::kComparison));
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_of([] {
              verbalize({"m", 1}, names({"Sue"}), profile(DomainKind::kKnightsKnaves));
            }),
            ErrorCode::kMissingTemplate);
}

TEST(Sentences, SplitOnTerminators) {
  auto s = split_sentences("Mike is tall.  Who is the tallest? Is Bob short?\n Katy runs");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0].text, "Mike is tall.");
  EXPECT_FALSE(s[0].interrogative);
  EXPECT_TRUE(s[1].interrogative);
  EXPECT_TRUE(s[2].interrogative);
  EXPECT_EQ(s[3].text, "Katy runs");
}

TEST(Puzzle1, UniqueTotalOrder) {
  PuzzleRecord r = puzzle("puzzle1.txt", DomainKind::kComparison);
  ASSERT_EQ(r.clues.size(), 3u);
  EXPECT_EQ(to_string(r.clues[0].formula), "taller(Mike,Sally) & shorter(Sally,Katy)");
  EXPECT_EQ(to_string(r.clues[1].formula), "taller(Ted,Bob) & shorter(Ted,Sally)");
  EXPECT_EQ(to_string(r.clues[2].formula), "shorter(Katy,Mike)");
  EXPECT_EQ(r.theory.domain, names({"Mike", "Sally", "Katy", "Ted", "Bob"}));
  GroundClauseSet cs;
  ModelSet ms = solve(r.theory, &cs);
  ASSERT_EQ(ms.size(), 1u);
  // Bob < Ted < Sally < Katy < Mike.
  const char* order[] = {"Bob", "Ted", "Sally", "Katy", "Mike"};
  std::size_t taller = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      auto holds = evaluate(ms.models[0],
                            parse_formula(fmt::format("taller({},{})", order[i], order[j])), cs);
      EXPECT_EQ(holds, i > j);
      taller += holds;
    }
  }
  EXPECT_EQ(taller, 10u);
  EXPECT_TRUE(evaluate(ms.models[0], parse_formula("tallest(Mike)"), cs));
  EXPECT_TRUE(evaluate(ms.models[0], parse_formula("shortest(Bob)"), cs));
}

TEST(Puzzle2, IsPuzzle1WithoutClue3) {
  PuzzleRecord p1 = puzzle("puzzle1.txt", DomainKind::kComparison);
  PuzzleRecord p2 = puzzle("puzzle2.txt", DomainKind::kComparison);
  PuzzleRecord reduced = remove_clues(p1, {2}, profile(DomainKind::kComparison));
  EXPECT_EQ(reduced.id, "puzzle1.txt-minus-3");
  EXPECT_EQ(reduced.removed_clue_texts(), std::vector<std::string>{"Katy is shorter than Mike."});
  EXPECT_EQ(reduced.theory, p2.theory);
  EXPECT_EQ(solve(p2.theory).size(), 2u);
}

TEST(ComparisonOracle, ModelsAreTheLinearExtensions) {
  PuzzleRecord p1 = puzzle("puzzle1.txt", DomainKind::kComparison);
  const auto& prof = profile(DomainKind::kComparison);
  std::set<std::string> preds = {"taller", "shorter", "tallest", "shortest"};
  for (std::vector<std::size_t> drop :
       std::vector<std::vector<std::size_t>>{{}, {0}, {1}, {2}, {0, 2}, {1, 2}}) {
    PuzzleRecord v = drop.empty() ? p1 : remove_clues(p1, drop, prof);
    auto oracle_ms = oracle::comparison_models(clue_formulas(v.theory), v.theory.domain);
    EXPECT_EQ(solver_worlds(v.theory, preds),
              oracle_worlds(oracle_ms, prof.signature, v.theory.domain))
        << v.id;
  }
}

TEST(Puzzle3, UniqueModel) {
  PuzzleRecord r = puzzle("puzzle3.txt", DomainKind::kKnightsKnaves);
  ASSERT_EQ(r.clues.size(), 6u);
  EXPECT_EQ(r.theory.domain, names({"Bart", "Dave", "Rex", "Sue"}));
  GroundClauseSet cs;
  ModelSet ms = solve(r.theory, &cs);
  ASSERT_EQ(ms.size(), 1u);
  for (const char* f : {"knight(Sue)", "knight(Rex)", "knave(Bart)", "knave(Dave)"}) {
    EXPECT_TRUE(evaluate(ms.models[0], parse_formula(f), cs)) << f;
  }
}

TEST(Puzzle3, WithoutSuesClaimTwoModels) {
  PuzzleRecord r = puzzle("puzzle3.txt", DomainKind::kKnightsKnaves);
  PuzzleRecord v = remove_clues(r, {5}, profile(DomainKind::kKnightsKnaves));
  EXPECT_EQ(v.theory, puzzle("puzzle3_minus_sue.txt", DomainKind::kKnightsKnaves).theory);
  std::multiset<std::set<std::string>> expected = {
      {"knave(Dave)", "knave(Rex)", "knight(Bart)", "knight(Sue)"},
      {"knave(Bart)", "knave(Dave)", "knight(Rex)", "knight(Sue)"},
  };
  EXPECT_EQ(solver_worlds(v.theory, {"knight", "knave"}), expected);
}

TEST(KnightsOracle, EveryRemovalAgrees) {
  PuzzleRecord r = puzzle("puzzle3.txt", DomainKind::kKnightsKnaves);
  const auto& prof = profile(DomainKind::kKnightsKnaves);
  for (std::size_t i = 0; i < r.clues.size(); ++i) {
    for (std::size_t j = i; j < r.clues.size(); ++j) {
      PuzzleRecord v = remove_clues(r, {i, j}, prof);
      auto om = oracle::knights_models(clue_formulas(v.theory), v.theory.domain);
      EXPECT_EQ(solver_worlds(v.theory, {"knight", "knave", "m"}),
                oracle_worlds(om, {{"knight", 1}, {"knave", 1}, {"m", 1}}, v.theory.domain))
          << v.id;
    }
  }
}

TEST(Zebra, FullPuzzleSolution) {
  PuzzleRecord r = puzzle("zebra.txt", DomainKind::kZebra);
  ASSERT_EQ(r.clues.size(), 15u);
  GroundClauseSet cs;
  ModelSet ms = solve(r.theory, &cs);
  ASSERT_EQ(ms.size(), 1u);
  for (const char* f : {"german(D)", "fish(D)", "blue(B)", "water(A)"}) {
    EXPECT_TRUE(evaluate(ms.models[0], parse_formula(f), cs)) << f;
  }
  for (const char* f : {"blue(A)", "dane(E)", "coffee(A)", "horse(C)"}) {
    EXPECT_FALSE(evaluate(ms.models[0], parse_formula(f), cs)) << f;
  }
}

TEST(ZebraOracle, SingleRemovalsAgree) {
  PuzzleRecord r = puzzle("zebra.txt", DomainKind::kZebra);
  const auto& prof = profile(DomainKind::kZebra);
  std::set<std::string> preds;
  for (const auto& p : prof.unary_predicates) preds.insert(p.name);
  for (std::size_t i = 0; i < r.clues.size(); ++i) {
    PuzzleRecord v = remove_clues(r, {i}, prof);
    auto om = oracle::zebra_models(clue_formulas(v.theory));
    EXPECT_EQ(solver_worlds(v.theory, preds),
              oracle_worlds(om, prof.unary_predicates, v.theory.domain))
        << v.id;
  }
}

TEST(Zebra, WithoutClue9SeventeenModels) {
  PuzzleRecord r = puzzle("zebra.txt", DomainKind::kZebra);
  PuzzleRecord v = remove_clues(r, {8}, profile(DomainKind::kZebra));
  EXPECT_EQ(solve(v.theory).size(), 17u);
}

TEST(Zebra, ModelsAreBijections) {
  PuzzleRecord r = puzzle("zebra.txt", DomainKind::kZebra);
  PuzzleRecord v = remove_clues(r, {8, 13}, profile(DomainKind::kZebra));
  GroundClauseSet cs;
  ModelSet ms = solve(v.theory, &cs);
  ASSERT_GT(ms.size(), 17u);
  for (const auto& m : ms.models) {
    for (const auto& [category, preds] : zebra_categories()) {
      for (const auto& h : zebra_houses()) {
        int n = 0;
        for (const auto& p : preds) n += evaluate(m, parse_formula(p + "(" + h.name + ")"), cs);
        EXPECT_EQ(n, 1) << category << " at " << h.name;
      }
      for (const auto& p : preds) {
        int n = 0;
        for (const auto& h : zebra_houses()) {
          n += evaluate(m, parse_formula(p + "(" + h.name + ")"), cs);
        }
        EXPECT_EQ(n, 1) << p;
      }
    }
  }
}

TEST(BuildPuzzle, ErrorsNameTheSentence) {
  const auto& prof = profile(DomainKind::kComparison);
  try {
    build_puzzle("p", "Mike is taller than Bob. Katy are the tallest.", prof);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoParse);
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_EQ(error_of([&] { build_puzzle("p", "Who is the tallest?", prof); }),
            ErrorCode::kEmptyPuzzle);
}

TEST(BuildPuzzle, DisambiguationPolicy) {
  const char* base = R"(
    S[SEM=<?v(?s)>] -> NP[SEM=?s] VP[SEM=?v]
    NP[SEM=<Rex>] -> 'Rex'
  )";
  auto write = [](const std::string& text) {
    std::string path = ::testing::TempDir() + "/policy.fcfg";
    std::ofstream(path) << text;
    return load_profile_with_grammar(DomainKind::kKnightsKnaves, path);
  };
  // Undeclared predicates are filtered out first.
  auto p1 = write(std::string(base) +
                  "VP[SEM=<\\x.knight(x)>] -> 'lies'\nVP[SEM=<\\x.liar(x)>] -> 'lies'\n");
  EXPECT_EQ(to_string(translate_sentence("Rex lies", p1)), "knight(Rex)");
  auto p2 = write(std::string(base) + "VP[SEM=<\\x.liar(x)>] -> 'lies'\n");
  EXPECT_EQ(error_of([&] { translate_sentence("Rex lies", p2); }), ErrorCode::kUnknownPredicate);
  // Then the fewest connectives win; a tie is an error.
  auto p3 = write(std::string(base) +
                  "VP[SEM=<\\x.knave(x)>] -> 'lies'\nVP[SEM=<\\x.-knight(x)>] -> 'lies'\n");
  EXPECT_EQ(to_string(translate_sentence("Rex lies", p3)), "knave(Rex)");
  auto p4 = write(std::string(base) +
                  "VP[SEM=<\\x.knave(x)>] -> 'lies'\nVP[SEM=<\\x.knight(x)>] -> 'lies'\n");
  EXPECT_EQ(error_of([&] { translate_sentence("Rex lies", p4); }), ErrorCode::kAmbiguousClue);
}

TEST(RemoveClues, Errors) {
  PuzzleRecord r = puzzle("puzzle2.txt", DomainKind::kComparison);
  const auto& prof = profile(DomainKind::kComparison);
  EXPECT_EQ(error_of([&] { remove_clues(r, {2}, prof); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(error_of([&] { remove_clues(r, {0, 1}, prof); }), ErrorCode::kEmptyPuzzle);
  PuzzleRecord v = remove_clues(r, {0}, prof);
  EXPECT_EQ(v.theory.domain, names({"Ted", "Bob", "Sally"}));
}

TEST(ShippedBackgrounds, MatchGeneratedTheories) {
  struct Case {
    const char* file;
    DomainKind kind;
    std::vector<Individual> domain;
  };
  const Case cases[] = {
      {"comparison.fol", DomainKind::kComparison, names({"Mike", "Sally", "Katy", "Ted", "Bob"})},
      {"knights.fol", DomainKind::kKnightsKnaves, names({"Bart", "Dave", "Rex", "Sue"})},
      {"zebra.fol", DomainKind::kZebra, zebra_houses()},
  };
  for (const auto& c : cases) {
    std::ifstream in(std::string(PUZZTE_DATA_DIR) + "/background/" + c.file);
    ASSERT_TRUE(in) << c.file;
    std::stringstream ss;
    ss << in.rdbuf();
    Theory expected;
    expected.signature = profile(c.kind).signature;
    expected.domain = c.domain;
    expected.axioms = profile(c.kind).background(c.domain);
    EXPECT_EQ(read_theory(ss.str()), expected) << c.file;
  }
}

}  // namespace
}  // namespace puzzte
