#include "tldforge/codegen.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tldf {

// ---------------------------------------------------------------- flattening

namespace {

const char* arith_builtin(const Term& t) {
  if (t.is_var() || t.arity() != 2) return nullptr;
  if (t.name() == "+") return "plus";
  if (t.name() == "-") return "minus";
  if (t.name() == "*") return "times";
  return nullptr;
}

class Flattener {
 public:
  explicit Flattener(const Clause& c) {
    for (const auto& v : c.variables()) used_.insert(v);
    for (const auto& v : c.locals) used_.insert(v);
  }

  Literal literal(const Literal& l, std::vector<Literal>& pre) {
    switch (l.kind()) {
      case Literal::Kind::Unify:
        return Literal::unify(term(l.lhs(), pre), term(l.rhs(), pre));
      case Literal::Kind::Call: {
        std::vector<Term> args;
        for (const auto& a : l.terms()) args.push_back(term(a, pre));
        return Literal::call(l.name(), std::move(args));
      }
      case Literal::Kind::TypeCheck:
        return Literal::type_check(l.name(), term(l.subject(), pre));
      case Literal::Kind::NafNot:
        return Literal::naf(literal(l.inner(), pre));
    }
    return l;
  }

  std::vector<std::string> introduced;

 private:
  Term term(const Term& t, std::vector<Literal>& pre) {
    if (t.is_var() || t.args().empty()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(term(a, pre));
    Term flat = Term::compound(t.name(), std::move(args));
    const char* op = arith_builtin(flat);
    if (!op) return flat;
    if (auto it = memo_.find(flat); it != memo_.end()) return Term::var(it->second);
    auto vars = flat.variables();
    std::string base = vars.empty() ? "V" : vars.back();
    while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back())))
      base.pop_back();
    if (base.empty()) base = "V";
    std::string name;
    for (int i = 1;; ++i) {
      name = base + std::to_string(i);
      if (used_.insert(name).second) break;
    }
    pre.push_back(Literal::call(op, {flat.args()[0], flat.args()[1], Term::var(name)}));
    memo_.emplace(flat, name);
    introduced.push_back(name);
    return Term::var(name);
  }

  std::set<std::string> used_;
  std::map<Term, std::string> memo_;
};

}  // namespace

Clause flatten_arithmetic(const Clause& clause) {
  Flattener f(clause);
  Clause out = clause;
  out.body.clear();
  for (const auto& lit : clause.body) {
    std::vector<Literal> pre;
    Literal l = f.literal(lit, pre);
    out.body.insert(out.body.end(), pre.begin(), pre.end());
    out.body.push_back(std::move(l));
  }
  out.locals.insert(out.locals.end(), f.introduced.begin(), f.introduced.end());
  return out;
}

Program flatten_arithmetic(const Program& prog) {
  Program out = prog;
  for (auto& c : out.clauses) c = flatten_arithmetic(c);
  return out;
}

// ---------------------------------------------------------------- mapping

namespace {

Multiplicity mult(Bound a, Bound b) { return {a, b}; }

struct DetRow {
  const char* name;
  std::vector<Multiplicity> mults;
};

const std::vector<DetRow>& det_table() {
  const Bound z = Bound::finite(0), o = Bound::finite(1), s = Bound::star(),
              inf = Bound::infinite();
  static const std::vector<DetRow> table = {
      {"det", {mult(o, o)}},
      {"semidet", {mult(z, o)}},
      {"nondet", {mult(z, s), mult(z, inf)}},
      {"multi", {mult(o, s), mult(o, inf), mult(s, s)}},
      {"failure", {mult(z, z)}},
      {"erroneous", {mult(o, z)}},
  };
  return table;
}

const char* lookup_det(const Multiplicity& m) {
  for (const auto& row : det_table())
    for (const auto& x : row.mults)
      if (x == m) return row.name;
  return nullptr;
}

}  // namespace

MercuryDeterminism mult_to_mercury_determinism(const Multiplicity& m) {
  if (const char* n = lookup_det(m)) return {n, m, false, {}};
  // The tightest determinism whose bounds contain m.
  const Bound zero = Bound::finite(0), one = Bound::finite(1);
  const Multiplicity ladder[] = {{one, one},          {zero, one},
                                 {one, Bound::star()}, {zero, Bound::star()},
                                 {one, Bound::infinite()}, {zero, Bound::infinite()}};
  for (const auto& c : ladder) {
    if (c.min <= m.min && m.max <= c.max) {
      const char* n = lookup_det(c);
      return {n, c, true,
              "multiplicity " + m.to_string() + " has no Mercury determinism; widened to " +
                  c.to_string() + " (" + n + ")"};
    }
  }
  return {"nondet", {zero, Bound::infinite()}, true,
          "multiplicity " + m.to_string() + " widened to <0-inf> (nondet)"};
}

std::vector<Multiplicity> mercury_determinism_to_mults(std::string_view name) {
  for (const auto& row : det_table())
    if (row.name == name) return row.mults;
  return {};
}

std::string mercury_mode_name(const ModePair& mp) {
  if (mp.in == Mode::ground() && mp.out == Mode::ground()) return "in";
  if (mp.in == Mode::var() && mp.out == Mode::ground()) return "out";
  return std::string(mp.in.name()) + "_to_" + std::string(mp.out.name());
}

bool is_user_mercury_mode(const ModePair& mp) {
  const std::string n = mercury_mode_name(mp);
  return n != "in" && n != "out";
}

std::optional<ModePair> mercury_mode_to_pair(std::string_view name) {
  if (name == "in" || name == "di") return ModePair{Mode::ground(), Mode::ground()};
  if (name == "out" || name == "uo") return ModePair{Mode::var(), Mode::ground()};
  return std::nullopt;
}

// ---------------------------------------------------------------- prolog

namespace {

std::string head_text(const std::string& pred, const std::vector<Term>& args) {
  return to_string(Term::compound(pred, args));
}

std::string clause_text(const Clause& c, std::optional<std::size_t> cut_after) {
  std::string out = head_text(c.predicate, c.head);
  std::vector<std::string> goals;
  for (std::size_t k = 0; k < c.body.size(); ++k) {
    goals.push_back(to_string(c.body[k]));
    if (cut_after && *cut_after == k) goals.push_back("!");
  }
  if (goals.empty()) return out + ".";
  out += " :-";
  for (std::size_t i = 0; i < goals.size(); ++i)
    out += "\n    " + goals[i] + (i + 1 < goals.size() ? "," : ".");
  return out;
}

}  // namespace

std::string emit_prolog(const Program& prog, const Spec& spec,
                        const EmitOptions& opts,
                        const std::optional<Switch>& sw) {
  std::string out;
  const std::string id = prog.predicate + "/" + std::to_string(prog.arity);
  if (opts.comment_header) {
    out += "% " + id;
    if (!spec.relation.empty()) out += ": " + spec.relation;
    out += "\n";
    for (const auto& d : spec.dirs) out += "% " + d.to_string() + "\n";
  }
  if (prog.clauses.empty())
    return out + "% " + id + ": the definition is unsatisfiable; no clauses.\n";
  const bool cuts = opts.cut_introduction && sw.has_value();
  for (std::size_t i = 0; i < prog.clauses.size(); ++i) {
    if (i) out += "\n\n";
    std::optional<std::size_t> cut;
    if (cuts && i + 1 < prog.clauses.size()) cut = sw->literal[i];
    out += clause_text(prog.clauses[i], cut);
  }
  return out + "\n";
}

// ---------------------------------------------------------------- mercury

namespace {

// Distinguished constants Mercury cannot write literally, and the
// predicate that produces their value.
struct ConstantRewrite {
  std::string_view atom;
  std::string_view producer;
};
constexpr ConstantRewrite kRewrites[] = {{"-infinite", "min_int"},
                                         {"infinite", "max_int"}};

Term map_term(const Term& t, const std::function<std::optional<Term>(const Term&)>& fn) {
  if (auto r = fn(t)) return *r;
  if (t.is_var() || t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(map_term(a, fn));
  return Term::compound(t.name(), std::move(args));
}

Formula map_terms(const Formula& f,
                  const std::function<std::optional<Term>(const Term&)>& fn) {
  auto mt = [&](const Term& t) { return map_term(t, fn); };
  auto kids = [&]() {
    std::vector<Formula> out;
    for (const auto& c : f.children()) out.push_back(map_terms(c, fn));
    return out;
  };
  switch (f.kind()) {
    case FormulaKind::Eq: return Formula::eq(mt(f.lhs()), mt(f.rhs()), f.pos());
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(mt(a));
      return Formula::atom(f.predicate(), std::move(args), f.pos());
    }
    case FormulaKind::And: return Formula::conj(kids(), f.pos());
    case FormulaKind::Or: return Formula::disj(kids(), f.pos());
    case FormulaKind::Not: return Formula::negation(kids()[0], f.pos());
    case FormulaKind::Implies: {
      auto k = kids();
      return Formula::implies(k[0], k[1], f.pos());
    }
    case FormulaKind::Iff: {
      auto k = kids();
      return Formula::iff(k[0], k[1], f.pos());
    }
    case FormulaKind::Exists:
      return Formula::exists(f.var(), f.type(), map_terms(f.body(), fn), f.pos());
    case FormulaKind::Forall:
      return Formula::forall(f.var(), f.type(), map_terms(f.body(), fn), f.pos());
    default: return f;
  }
}

void all_names(const Formula& f, std::set<std::string>& out) {
  for (auto& v : free_variable_names(f)) out.insert(v);
  for (auto& v : bound_variable_names(f)) out.insert(v);
}

class MercuryBody {
 public:
  explicit MercuryBody(const TypeEnv& types) : types_(types) {}

  // Conjuncts of f with existential binders and type checks removed.
  std::vector<std::string> conjuncts(const Formula& f) const {
    std::vector<std::string> out;
    collect(f, out);
    return out;
  }

  std::string goal(const Formula& f) const {
    switch (f.kind()) {
      case FormulaKind::True: return "true";
      case FormulaKind::False: return "fail";
      case FormulaKind::Eq: return to_string(f.lhs()) + " = " + to_string(f.rhs());
      case FormulaKind::Atom:
        return to_string(Term::compound(f.predicate(), f.args()));
      case FormulaKind::And: {
        auto parts = conjuncts(f);
        if (parts.empty()) return "true";
        return "(" + join(parts, ", ") + ")";
      }
      case FormulaKind::Or: {
        std::vector<std::string> alts;
        for (const auto& c : f.children()) {
          auto parts = conjuncts(c);
          alts.push_back(parts.empty() ? "true" : join(parts, ", "));
        }
        return "( " + join(alts, " ; ") + " )";
      }
      case FormulaKind::Not: return "not (" + goal(f.child(0)) + ")";
      case FormulaKind::Implies:
        return "(" + goal(f.child(0)) + " => " + goal(f.child(1)) + ")";
      case FormulaKind::Iff:
        return "(" + goal(f.child(0)) + " <=> " + goal(f.child(1)) + ")";
      case FormulaKind::Exists:
        return "some [" + f.var() + "] (" + goal(f.body()) + ")";
      case FormulaKind::Forall:
        return "all [" + f.var() + "] (" + goal(f.body()) + ")";
    }
    return "true";
  }

  bool is_type_check(const Formula& f) const {
    return f.kind() == FormulaKind::Atom && f.args().size() == 1 &&
           types_.contains(f.predicate());
  }

 private:
  static std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
  }

  void collect(const Formula& f, std::vector<std::string>& out) const {
    switch (f.kind()) {
      case FormulaKind::And:
        for (const auto& c : f.children()) collect(c, out);
        return;
      case FormulaKind::Exists:
        collect(f.body(), out);
        return;
      case FormulaKind::True:
        return;
      default:
        if (is_type_check(f)) return;
        out.push_back(goal(f));
    }
  }

  const TypeEnv& types_;
};

Formula strip_exists(Formula f) {
  while (f.kind() == FormulaKind::Exists) f = f.body();
  return f;
}

}  // namespace

std::string emit_mercury(const TypedLogicDescription& tld, const Spec& spec,
                         const TypeEnv& types,
                         const std::vector<Multiplicity>& determinism,
                         const EmitOptions& opts,
                         std::vector<std::string>* warnings) {
  std::string out;
  const std::size_t n = tld.params.size();
  if (opts.comment_header && !spec.relation.empty())
    out += "% " + tld.predicate + "/" + std::to_string(n) + ": " +
           spec.relation + "\n";

  std::set<std::string> user_modes;
  for (const auto& d : spec.dirs)
    for (const auto& mp : d.modes)
      if (is_user_mercury_mode(mp) && user_modes.insert(mercury_mode_name(mp)).second) {
        auto inst = [](Mode m) -> std::string {
          if (m == Mode::ground()) return "ground";
          if (m == Mode::var()) return "free";
          return std::string(m.name());
        };
        out += ":- mode " + mercury_mode_name(mp) + " == " + inst(mp.in) +
               " >> " + inst(mp.out) + ".\n";
      }

  std::vector<std::string> ptypes;
  for (std::size_t i = 0; i < n; ++i)
    ptypes.push_back(i < spec.param_types.size() && !spec.param_types[i].empty()
                         ? spec.param_types[i]
                         : tld.params[i].type);
  out += ":- pred " + tld.predicate + "(";
  for (std::size_t i = 0; i < n; ++i) out += (i ? ", " : "") + ptypes[i];
  out += ").\n";

  for (std::size_t d = 0; d < spec.dirs.size(); ++d) {
    const auto& dir = spec.dirs[d];
    const Multiplicity m = d < determinism.size() ? determinism[d] : dir.mult;
    MercuryDeterminism det = mult_to_mercury_determinism(m);
    if (det.widened && warnings) warnings->push_back(tld.predicate + ": " + det.warning);
    out += ":- mode " + tld.predicate + "(";
    for (std::size_t i = 0; i < dir.modes.size(); ++i)
      out += (i ? ", " : "") + mercury_mode_name(dir.modes[i]);
    out += ") is " + det.name + ".\n";
  }
  out += "\n";

  // Distinguished constants become a producer goal on a fresh variable.
  std::set<std::string> names;
  all_names(tld.definition, names);
  for (const auto& p : tld.params) names.insert(p.name);
  std::vector<std::string> prelude;
  std::map<std::string, std::string> replaced;
  Formula def = map_terms(tld.definition, [&](const Term& t) -> std::optional<Term> {
    if (!t.is_constant()) return std::nullopt;
    for (const auto& rw : kRewrites) {
      if (t.name() != rw.atom) continue;
      auto it = replaced.find(t.name());
      if (it == replaced.end()) {
        std::string v = "X";
        for (int i = 1; names.contains(v); ++i) v = "X" + std::to_string(i);
        names.insert(v);
        it = replaced.emplace(t.name(), v).first;
        prelude.push_back(std::string(rw.producer) + "(" + v + ")");
      }
      return Term::var(it->second);
    }
    return std::nullopt;
  });

  std::vector<Term> head;
  for (const auto& p : tld.params) head.push_back(Term::var(p.name));
  out += head_text(tld.predicate, head) + " :-\n";

  MercuryBody mb(types);
  Formula body = strip_exists(def);
  std::vector<std::string> lines;
  for (const auto& p : prelude) lines.push_back("    " + p + ",");
  if (body.kind() == FormulaKind::Or) {
    for (std::size_t i = 0; i < body.children().size(); ++i) {
      if (i) lines.push_back(";");
      auto parts = mb.conjuncts(body.child(i));
      if (parts.empty()) parts.push_back("true");
      for (std::size_t k = 0; k < parts.size(); ++k)
        lines.push_back(std::string(i == 0 && k == 0 ? "(   " : "    ") + parts[k] +
                        (k + 1 < parts.size() ? "," : ""));
    }
    lines.push_back(").");
  } else {
    auto parts = mb.conjuncts(body);
    if (parts.empty()) parts.push_back("true");
    for (std::size_t k = 0; k < parts.size(); ++k)
      lines.push_back("    " + parts[k] + (k + 1 < parts.size() ? "," : "."));
  }
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace tldf
