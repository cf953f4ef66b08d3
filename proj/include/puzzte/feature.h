#pragma once

// Flat feature structures: feature name -> atom | ?variable | lambda term.

#include <map>
#include <optional>
#include <string>

#include "puzzte/lambda.h"

namespace puzzte {

class FeatureValue {
 public:
  enum class Kind : unsigned char { kAtom, kVariable, kTerm };

  static FeatureValue atom(std::string text);
  static FeatureValue variable(std::string name);
  static FeatureValue term(LambdaTerm t);

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::kVariable; }
  // Atom text or variable name (without '?').
  const std::string& text() const { return text_; }
  const LambdaTerm& lambda() const { return term_; }

  // sg | ?n | <\x.knight(x)>
  std::string to_string() const;

  // Atoms by text, variables by name, terms up to alpha-equivalence.
  bool operator==(const FeatureValue& other) const;
  bool operator!=(const FeatureValue& other) const { return !(*this == other); }

 private:
  Kind kind_ = Kind::kAtom;
  std::string text_;
  LambdaTerm term_;
};

using FeatureStructure = std::map<std::string, FeatureValue>;

// Variable name -> value; a value may itself be a variable (a chain).
using Bindings = std::map<std::string, FeatureValue>;

// Follows variable chains to the final value or an unbound variable.
FeatureValue resolve(const FeatureValue& v, const Bindings& bindings);

// Symmetric unification of two structures sharing one binding environment.
// A feature missing on one side is unconstrained. On success `bindings` is
// extended and the merged, resolved structure is returned; on failure
// `bindings` is left unchanged.
std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b,
                                      Bindings& bindings);

// Resolves every value through `bindings`; unbound variables are removed.
FeatureStructure instantiate(const FeatureStructure& fs, const Bindings& bindings);

// "[GRD=rel,NUM=sg,SEM=<...>]", features in name order; "" when empty.
std::string to_string(const FeatureStructure& fs);

}  // namespace puzzte
