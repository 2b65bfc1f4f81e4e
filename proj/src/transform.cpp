#include "tldforge/transform.hpp"

#include <algorithm>
#include <optional>

namespace tldf {

namespace {

Formula type_check(const std::string& type, const std::string& var) {
  return Formula::atom(type, {Term::var(var)});
}

// Conjunction that skips True parts.
Formula conj_of(std::vector<Formula> parts) {
  std::vector<Formula> kept;
  for (auto& p : parts)
    if (p.kind() != FormulaKind::True) kept.push_back(std::move(p));
  if (kept.empty()) return Formula::truth();
  return Formula::conj(std::move(kept));
}

class Transformer {
 public:
  Transformer(TypingEnv env, TransformVariant variant)
      : env_(std::move(env)), variant_(variant) {}

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::True:
      case FormulaKind::False:
      case FormulaKind::Atom:
        return f;
      case FormulaKind::Eq:
        return conj_of({f, check(f)});
      case FormulaKind::And: {
        std::vector<Formula> parts;
        for (const auto& c : f.children()) parts.push_back(run(c));
        return Formula::conj(std::move(parts), f.pos());
      }
      case FormulaKind::Or: {
        // Each disjunct is guarded by the checks of all the others; for two
        // disjuncts this is exactly (G /\ check_H) \/ (H /\ check_G).
        const auto& kids = f.children();
        std::vector<Formula> translated, checks;
        for (const auto& c : kids) {
          translated.push_back(run(c));
          checks.push_back(check(c));
        }
        std::vector<Formula> alts;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          std::vector<Formula> parts{translated[i]};
          for (std::size_t j = 0; j < kids.size(); ++j)
            if (j != i) parts.push_back(checks[j]);
          alts.push_back(conj_of(std::move(parts)));
        }
        return Formula::disj(std::move(alts), f.pos());
      }
      case FormulaKind::Not: {
        Formula neg = Formula::negation(run(f.child(0)), f.pos());
        if (variant_ == TransformVariant::NoNegationCheck) return neg;
        return conj_of({neg, check(f.child(0))});
      }
      case FormulaKind::Implies: {
        const Formula& g = f.child(0);
        const Formula& h = f.child(1);
        Formula cg = check(g), ch = check(h);
        return Formula::disj(
            {conj_of({Formula::negation(run(g)), cg, ch}), conj_of({run(h), cg})},
            f.pos());
      }
      case FormulaKind::Iff: {
        const Formula& g = f.child(0);
        const Formula& h = f.child(1);
        return conj_of({Formula::iff(run(g), run(h), f.pos()), check(g), check(h)});
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        return quantifier(f);
    }
    return f;
  }

  Formula check(const Formula& f) const { return check_of(env_, f); }

 private:
  Formula quantifier(const Formula& f) {
    const std::string& x = f.var();
    const std::string& type = f.type();
    auto saved = env_.find(x);
    std::optional<std::string> previous;
    if (saved != env_.end()) previous = saved->second;
    env_.insert_or_assign(x, type);
    Formula body = run(f.body());
    if (previous) env_.insert_or_assign(x, *previous);
    else env_.erase(x);

    const bool untyped = type == kTermType;
    std::string term(kTermType);
    if (f.kind() == FormulaKind::Exists) {
      if (untyped) return Formula::exists(x, term, body, f.pos());
      return Formula::exists(x, term, conj_of({type_check(type, x), body}),
                             f.pos());
    }
    if (untyped) return Formula::forall(x, term, body, f.pos());
    return Formula::forall(x, term, Formula::implies(type_check(type, x), body),
                           f.pos());
  }

  TypingEnv env_;
  TransformVariant variant_;
};

}  // namespace

Formula check_of(const TypingEnv& env, const Formula& f) {
  std::vector<Formula> checks;
  for (const auto& v : free_variables(f, env))
    if (v.type != kTermType) checks.push_back(type_check(v.type, v.name));
  return conj_of(std::move(checks));
}

Formula transform_formula(const TypingEnv& env, const Formula& f,
                          TransformVariant variant) {
  return Transformer(env, variant).run(f);
}

LogicDescription transform_tld(const TypedLogicDescription& tld,
                               TransformVariant variant) {
  LogicDescription ld;
  ld.predicate = tld.predicate;
  std::vector<Formula> parts;
  for (const auto& p : tld.params) {
    ld.params.push_back(p.name);
    if (p.type != kTermType) parts.push_back(type_check(p.type, p.name));
  }
  parts.push_back(transform_formula(tld.param_env(), tld.definition, variant));
  // Kept even when trivial, so the prefix layout is always visible.
  ld.definition = parts.size() == 1 ? parts.front() : Formula::conj(parts);
  return ld;
}

Formula simplify_checks(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And: {
      std::vector<Formula> kept;
      for (const auto& c : f.children()) {
        Formula s = simplify_checks(c);
        if (s.kind() == FormulaKind::True) continue;
        if (s.kind() == FormulaKind::And) {
          for (const auto& g : s.children())
            if (std::find(kept.begin(), kept.end(), g) == kept.end())
              kept.push_back(g);
          continue;
        }
        if (std::find(kept.begin(), kept.end(), s) == kept.end())
          kept.push_back(std::move(s));
      }
      if (kept.empty()) return Formula::truth(f.pos());
      return Formula::conj(std::move(kept), f.pos());
    }
    case FormulaKind::Or: {
      std::vector<Formula> kept;
      for (const auto& c : f.children()) {
        Formula s = simplify_checks(c);
        if (s.kind() != FormulaKind::False) kept.push_back(std::move(s));
      }
      return Formula::disj(std::move(kept), f.pos());
    }
    case FormulaKind::Not:
      return Formula::negation(simplify_checks(f.child(0)), f.pos());
    case FormulaKind::Implies:
      return Formula::implies(simplify_checks(f.child(0)),
                              simplify_checks(f.child(1)), f.pos());
    case FormulaKind::Iff:
      return Formula::iff(simplify_checks(f.child(0)),
                          simplify_checks(f.child(1)), f.pos());
    case FormulaKind::Exists:
      return Formula::exists(f.var(), f.type(), simplify_checks(f.body()),
                             f.pos());
    case FormulaKind::Forall:
      return Formula::forall(f.var(), f.type(), simplify_checks(f.body()),
                             f.pos());
    default:
      return f;
  }
}

}  // namespace tldf
