#include "tldforge/derive.hpp"

#include <algorithm>
#include <set>

namespace tldf {

namespace {

struct Partial {
  std::vector<std::string> locals;
  std::vector<Literal> lits;
};
using Dnf = std::vector<Partial>;

Term rename_term(const Term& t, const TermBinding& rename) {
  return rename.empty() ? t : substitute(t, rename);
}

std::vector<Term> rename_terms(const std::vector<Term>& ts,
                               const TermBinding& rename) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(rename_term(t, rename));
  return out;
}

Literal rename_literal(const Literal& l, const TermBinding& rename) {
  switch (l.kind()) {
    case Literal::Kind::Unify:
      return Literal::unify(rename_term(l.lhs(), rename),
                            rename_term(l.rhs(), rename));
    case Literal::Kind::Call:
      return Literal::call(l.name(), rename_terms(l.terms(), rename));
    case Literal::Kind::TypeCheck:
      return Literal::type_check(l.name(), rename_term(l.subject(), rename));
    case Literal::Kind::NafNot:
      return Literal::naf(rename_literal(l.inner(), rename));
  }
  return l;
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  for (auto& v : free_variable_names(f)) out.insert(v);
  for (auto& v : bound_variable_names(f)) out.insert(v);
}

class Normalizer {
 public:
  Normalizer(const TypeEnv& types, const LogicDescription& ld)
      : types_(types) {
    collect_names(ld.definition, used_);
    for (const auto& p : ld.params) {
      used_.insert(p);
      scope_.push_back(p);
    }
  }

  Dnf run(const Formula& f, bool positive, const TermBinding& rename) {
    switch (f.kind()) {
      case FormulaKind::True:
        return positive ? Dnf{Partial{}} : Dnf{};
      case FormulaKind::False:
        return positive ? Dnf{} : Dnf{Partial{}};
      case FormulaKind::Eq:
      case FormulaKind::Atom: {
        Literal lit = literal_of(f, rename);
        return Dnf{Partial{{}, {positive ? lit : Literal::naf(lit)}}};
      }
      case FormulaKind::Not:
        return run(f.child(0), !positive, rename);
      case FormulaKind::And:
      case FormulaKind::Or: {
        const bool product = (f.kind() == FormulaKind::And) == positive;
        Dnf acc = product ? Dnf{Partial{}} : Dnf{};
        for (const auto& c : f.children()) {
          Dnf d = run(c, positive, rename);
          acc = product ? cross(acc, d) : join(std::move(acc), std::move(d));
        }
        return acc;
      }
      case FormulaKind::Implies: {
        const Formula& a = f.child(0);
        const Formula& b = f.child(1);
        if (positive)
          return join(run(a, false, rename), run(b, true, rename));
        return cross(run(a, true, rename), run(b, false, rename));
      }
      case FormulaKind::Iff: {
        const Formula& a = f.child(0);
        const Formula& b = f.child(1);
        Dnf ap = run(a, true, rename), an = run(a, false, rename);
        Dnf bp = run(b, true, rename), bn = run(b, false, rename);
        if (positive) return join(cross(ap, bp), cross(an, bn));
        return join(cross(ap, bn), cross(an, bp));
      }
      case FormulaKind::Exists:
        if (!positive)
          fail(f, "a negated existential cannot be pushed to literals");
        return bind(f, true, rename);
      case FormulaKind::Forall:
        if (positive) fail(f, "a universal quantifier remains in the body");
        return bind(f, false, rename);
    }
    return {};
  }

 private:
  [[noreturn]] void fail(const Formula& f, const std::string& why) const {
    std::string where;
    if (f.pos().known())
      where = " at " + std::to_string(f.pos().line) + ":" +
              std::to_string(f.pos().column);
    throw Error("NotDerivable", why + where);
  }

  Literal literal_of(const Formula& f, const TermBinding& rename) const {
    if (f.kind() == FormulaKind::Eq)
      return Literal::unify(rename_term(f.lhs(), rename),
                            rename_term(f.rhs(), rename));
    if (f.args().size() == 1 && types_.contains(f.predicate()))
      return Literal::type_check(f.predicate(), rename_term(f.args()[0], rename));
    return Literal::call(f.predicate(), rename_terms(f.args(), rename));
  }

  std::string fresh(const std::string& base) {
    for (int i = 1;; ++i) {
      std::string name = base + std::to_string(i);
      if (used_.insert(name).second) return name;
    }
  }

  Dnf bind(const Formula& f, bool positive, const TermBinding& rename) {
    const std::string& x = f.var();
    const bool clash = std::find(scope_.begin(), scope_.end(), x) != scope_.end();
    std::string name = clash ? fresh(x) : x;
    TermBinding inner = rename;
    if (name != x) inner.insert_or_assign(x, Term::var(name));
    else inner.erase(x);
    scope_.push_back(name);
    Dnf d = run(f.body(), positive, inner);
    scope_.pop_back();
    for (auto& p : d) p.locals.insert(p.locals.begin(), name);
    return d;
  }

  Dnf join(Dnf a, Dnf b) const {
    for (auto& p : b) a.push_back(std::move(p));
    check_size(a);
    return a;
  }

  // Sibling binders may share a name; the right-hand one is renamed.
  Dnf cross(const Dnf& a, const Dnf& b) {
    Dnf out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        Partial p = x;
        TermBinding clash;
        for (const auto& l : y.locals) {
          if (std::find(x.locals.begin(), x.locals.end(), l) != x.locals.end()) {
            std::string n = fresh(l);
            clash.insert_or_assign(l, Term::var(n));
            p.locals.push_back(n);
          } else {
            p.locals.push_back(l);
          }
        }
        for (const auto& lit : y.lits) p.lits.push_back(rename_literal(lit, clash));
        out.push_back(std::move(p));
        check_size(out);
      }
    }
    return out;
  }

  static void check_size(const Dnf& d) {
    if (d.size() > kMaxDisjuncts)
      throw Error("NotDerivable", "disjunctive normal form exceeds " +
                                      std::to_string(kMaxDisjuncts) +
                                      " disjuncts");
  }

  const TypeEnv& types_;
  std::set<std::string> used_;
  std::vector<std::string> scope_;
};

}  // namespace

NormalizedBody normalize(const LogicDescription& ld, const TypeEnv& types) {
  Normalizer n(types, ld);
  Dnf dnf = n.run(ld.definition, true, {});
  NormalizedBody body;
  for (auto& p : dnf) {
    NormalDisjunct d;
    for (auto& lit : p.lits)
      if (std::find(d.literals.begin(), d.literals.end(), lit) ==
          d.literals.end())
        d.literals.push_back(std::move(lit));
    std::vector<std::string> occurring;
    for (const auto& lit : d.literals) {
      auto vs = lit.variables();
      occurring.insert(occurring.end(), vs.begin(), vs.end());
    }
    for (const auto& l : p.locals)
      if (std::find(occurring.begin(), occurring.end(), l) != occurring.end() &&
          std::find(d.locals.begin(), d.locals.end(), l) == d.locals.end())
        d.locals.push_back(l);
    body.disjuncts.push_back(std::move(d));
  }
  return body;
}

Program derive_clauses(const LogicDescription& ld, const TypeEnv& types) {
  NormalizedBody body = normalize(ld, types);
  Program prog;
  prog.predicate = ld.predicate;
  prog.arity = ld.params.size();
  std::vector<Term> head;
  for (const auto& p : ld.params) head.push_back(Term::var(p));
  for (std::size_t i = 0; i < body.disjuncts.size(); ++i) {
    auto& d = body.disjuncts[i];
    Clause c;
    c.predicate = ld.predicate;
    c.head = head;
    c.body = std::move(d.literals);
    c.locals = std::move(d.locals);
    c.note = "disjunct " + std::to_string(i + 1) + " of " +
             std::to_string(body.disjuncts.size());
    prog.clauses.push_back(std::move(c));
  }
  return prog;
}

LogicDescription program_as_ld(const Program& prog,
                               const std::vector<std::string>& params) {
  return {prog.predicate, params, program_definition(prog, params)};
}

}  // namespace tldf
