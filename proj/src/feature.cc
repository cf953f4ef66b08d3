#include "puzzte/feature.h"

namespace puzzte {

FeatureValue FeatureValue::atom(std::string text) {
  FeatureValue v;
  v.kind_ = Kind::kAtom;
  v.text_ = std::move(text);
  return v;
}

FeatureValue FeatureValue::variable(std::string name) {
  FeatureValue v;
  v.kind_ = Kind::kVariable;
  v.text_ = std::move(name);
  return v;
}

FeatureValue FeatureValue::term(LambdaTerm t) {
  FeatureValue v;
  v.kind_ = Kind::kTerm;
  v.term_ = std::move(t);
  return v;
}

std::string FeatureValue::to_string() const {
  switch (kind_) {
    case Kind::kAtom: return text_;
    case Kind::kVariable: return "?" + text_;
    case Kind::kTerm: return "<" + puzzte::to_string(term_) + ">";
  }
  return text_;
}

bool FeatureValue::operator==(const FeatureValue& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::kTerm) return alpha_equivalent(term_, other.term_);
  return text_ == other.text_;
}

FeatureValue resolve(const FeatureValue& v, const Bindings& bindings) {
  FeatureValue cur = v;
  // Chains are acyclic: a variable is only bound while unbound.
  while (cur.is_variable()) {
    auto it = bindings.find(cur.text());
    if (it == bindings.end()) break;
    cur = it->second;
  }
  return cur;
}

std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b,
                                      Bindings& bindings) {
  Bindings trial = bindings;
  FeatureStructure out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.emplace(ia->first, resolve(ia->second, trial));
      ++ia;
      continue;
    }
    if (ia == a.end() || ib->first < ia->first) {
      out.emplace(ib->first, resolve(ib->second, trial));
      ++ib;
      continue;
    }
    FeatureValue va = resolve(ia->second, trial);
    FeatureValue vb = resolve(ib->second, trial);
    if (va.is_variable() && vb.is_variable()) {
      if (va.text() != vb.text()) trial[va.text()] = vb;
      out.emplace(ia->first, vb);
    } else if (va.is_variable()) {
      trial[va.text()] = vb;
      out.emplace(ia->first, vb);
    } else if (vb.is_variable()) {
      trial[vb.text()] = va;
      out.emplace(ia->first, va);
    } else if (va == vb) {
      out.emplace(ia->first, va);
    } else {
      return std::nullopt;
    }
    ++ia;
    ++ib;
  }
  // Earlier entries may point at variables bound later in this call.
  for (auto& [name, value] : out) value = resolve(value, trial);
  bindings = std::move(trial);
  return out;
}

FeatureStructure instantiate(const FeatureStructure& fs, const Bindings& bindings) {
  FeatureStructure out;
  for (const auto& [name, value] : fs) {
    FeatureValue v = resolve(value, bindings);
    if (!v.is_variable()) out.emplace(name, std::move(v));
  }
  return out;
}

std::string to_string(const FeatureStructure& fs) {
  if (fs.empty()) return "";
  std::string out = "[";
  bool first = true;
  for (const auto& [name, value] : fs) {
    if (!first) out += ',';
    first = false;
    out += name + "=" + value.to_string();
  }
  return out + "]";
}

}  // namespace puzzte
