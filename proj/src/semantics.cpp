#include "tldforge/semantics.hpp"

#include <algorithm>

namespace tldf {

const char* to_string(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

namespace {

Truth t_not(Truth a) {
  if (a == Truth::Unknown) return a;
  return a == Truth::True ? Truth::False : Truth::True;
}

Truth from_bool(bool b) { return b ? Truth::True : Truth::False; }

struct BuiltinSig {
  std::string_view name;
  std::size_t arity;
};

constexpr BuiltinSig kBuiltins[] = {{"plus", 3},  {"minus", 3}, {"times", 3},
                                    {"max", 3},   {"min", 3},   {"less", 2},
                                    {"leq", 2}};

std::optional<Term> arith(const std::string& op, const std::vector<Term>& args) {
  if (args.size() == 1 && op == "-") {
    auto v = args[0].as_integer();
    if (!v) return std::nullopt;
    return Term::integer(-*v);
  }
  if (args.size() != 2) return std::nullopt;
  auto a = args[0].as_integer();
  auto b = args[1].as_integer();
  if (!a || !b) return std::nullopt;
  long long r = 0;
  bool overflow = false;
  if (op == "+") overflow = __builtin_add_overflow(*a, *b, &r);
  else if (op == "-") overflow = __builtin_sub_overflow(*a, *b, &r);
  else if (op == "*") overflow = __builtin_mul_overflow(*a, *b, &r);
  else return std::nullopt;
  if (overflow) return std::nullopt;
  return Term::integer(r);
}

bool is_arith_functor(const Term& t) {
  return !t.is_var() &&
         ((t.arity() == 2 && (t.name() == "+" || t.name() == "-" ||
                              t.name() == "*")) ||
          (t.arity() == 1 && t.name() == "-"));
}

Truth eval_builtin(const std::string& name, const std::vector<Term>& a) {
  std::vector<long long> v;
  for (const auto& t : a) {
    auto i = t.as_integer();
    if (!i) return Truth::False;
    v.push_back(*i);
  }
  auto result = [&](std::optional<long long> r) {
    return from_bool(r && *r == v.back());
  };
  long long r = 0;
  if (name == "plus")
    return result(__builtin_add_overflow(v[0], v[1], &r) ? std::nullopt
                                                          : std::optional(r));
  if (name == "minus")
    return result(__builtin_sub_overflow(v[0], v[1], &r) ? std::nullopt
                                                          : std::optional(r));
  if (name == "times")
    return result(__builtin_mul_overflow(v[0], v[1], &r) ? std::nullopt
                                                          : std::optional(r));
  if (name == "max") return from_bool(std::max(v[0], v[1]) == v[2]);
  if (name == "min") return from_bool(std::min(v[0], v[1]) == v[2]);
  if (name == "less") return from_bool(v[0] < v[1]);
  if (name == "leq") return from_bool(v[0] <= v[1]);
  return Truth::False;
}

bool may_unify(const Term& a, const Term& b) {
  if (a.is_var() || b.is_var()) return true;
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!may_unify(a.args()[i], b.args()[i])) return false;
  return true;
}

bool mentions_var(const Formula& f, const std::string& x) {
  const auto names = free_variable_names(f);
  return std::find(names.begin(), names.end(), x) != names.end();
}

// Pushes quantifiers as far inward as they go. Exact over any domain, so
// the bounded semantics is unchanged; vacuous enumeration disappears.
Formula miniscope(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(miniscope(c));
      return f.kind() == FormulaKind::And ? Formula::conj(std::move(parts))
                                          : Formula::disj(std::move(parts));
    }
    case FormulaKind::Not: return Formula::negation(miniscope(f.child(0)));
    case FormulaKind::Implies:
      return Formula::implies(miniscope(f.child(0)), miniscope(f.child(1)));
    case FormulaKind::Iff:
      return Formula::iff(miniscope(f.child(0)), miniscope(f.child(1)));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const bool ex = f.kind() == FormulaKind::Exists;
      const std::string& x = f.var();
      const std::string& type = f.type();
      auto wrap = [&](Formula body) {
        return ex ? Formula::exists(x, type, std::move(body))
                  : Formula::forall(x, type, std::move(body));
      };
      Formula body = miniscope(f.body());
      // The term domain is never empty, so a vacuous binder can go.
      if (type == kTermType && !mentions_var(body, x)) return body;
      const FormulaKind spread = ex ? FormulaKind::Or : FormulaKind::And;
      const FormulaKind split = ex ? FormulaKind::And : FormulaKind::Or;
      if (body.kind() == spread) {
        std::vector<Formula> parts;
        for (const auto& c : body.children())
          parts.push_back(miniscope(wrap(c)));
        return ex ? Formula::disj(std::move(parts)) : Formula::conj(std::move(parts));
      }
      if (body.kind() == split) {
        std::vector<Formula> inside, outside;
        for (const auto& c : body.children())
          (mentions_var(c, x) ? inside : outside).push_back(c);
        if (!outside.empty() && !inside.empty()) {
          Formula rest = inside.size() == 1 ? inside[0]
                         : ex              ? Formula::conj(std::move(inside))
                                           : Formula::disj(std::move(inside));
          outside.push_back(wrap(std::move(rest)));
          return ex ? Formula::conj(std::move(outside))
                    : Formula::disj(std::move(outside));
        }
      }
      return wrap(std::move(body));
    }
    default:
      return f;
  }
}

constexpr std::size_t kPartialDomainLimit = 64;

class Evaluator {
 public:
  Evaluator(const EvalContext& ctx, Reading reading, bool partial)
      : ctx_(ctx), reading_(reading), partial_(partial) {}

  void bind(const std::string& name, Term value) {
    scope_.emplace_back(name, std::move(value));
  }
  void unbind() { scope_.pop_back(); }

  Truth eval(const Formula& f, int budget) {
    switch (f.kind()) {
      case FormulaKind::True: return Truth::True;
      case FormulaKind::False: return Truth::False;
      case FormulaKind::Eq: return eval_eq(f);
      case FormulaKind::Atom: return eval_atom(f, budget);
      case FormulaKind::And: {
        Truth acc = Truth::True;
        for (const auto& c : f.children()) {
          Truth t = eval(c, budget);
          if (t == Truth::False) return t;
          if (t == Truth::Unknown) acc = t;
        }
        return acc;
      }
      case FormulaKind::Or: {
        Truth acc = Truth::False;
        for (const auto& c : f.children()) {
          Truth t = eval(c, budget);
          if (t == Truth::True) return t;
          if (t == Truth::Unknown) acc = t;
        }
        return acc;
      }
      case FormulaKind::Not: return t_not(eval(f.child(0), budget));
      case FormulaKind::Implies: {
        Truth a = eval(f.child(0), budget);
        if (a == Truth::False) return Truth::True;
        Truth b = eval(f.child(1), budget);
        if (b == Truth::True) return Truth::True;
        if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
        return Truth::False;
      }
      case FormulaKind::Iff: {
        Truth a = eval(f.child(0), budget);
        if (a == Truth::Unknown) return a;
        Truth b = eval(f.child(1), budget);
        if (b == Truth::Unknown) return b;
        return from_bool(a == b);
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        return eval_quantifier(f, budget);
    }
    return Truth::Unknown;
  }

 private:
  const Term* lookup(std::string_view name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  std::optional<Term> ground(const Term& t) const {
    if (t.is_var()) {
      if (const Term* v = lookup(t.name())) return *v;
      if (!partial_)
        throw Error("MissingBinding", "no binding for variable " + t.name());
      return std::nullopt;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) {
      auto g = ground(a);
      if (!g) return std::nullopt;
      args.push_back(std::move(*g));
    }
    if (is_arith_functor(t))
      if (auto r = arith(t.name(), args)) return r;
    return Term::compound(t.name(), std::move(args));
  }

  // Bound variables replaced by their values; arithmetic over unknowns
  // becomes a wildcard.
  Term partial_term(const Term& t) const {
    if (t.is_var()) {
      if (const Term* v = lookup(t.name())) return *v;
      return Term::var("_");
    }
    if (auto g = ground(t)) return *g;
    if (is_arith_functor(t)) return Term::var("_");
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(partial_term(a));
    return Term::compound(t.name(), std::move(args));
  }

  Truth eval_eq(const Formula& f) {
    auto l = ground(f.lhs());
    auto r = ground(f.rhs());
    if (l && r) return from_bool(*l == *r);
    return may_unify(partial_term(f.lhs()), partial_term(f.rhs()))
               ? Truth::Unknown
               : Truth::False;
  }

  Truth eval_atom(const Formula& f, int budget) {
    const std::string& name = f.predicate();
    const std::size_t arity = f.args().size();
    std::vector<Term> args;
    args.reserve(arity);
    bool complete = true;
    for (const auto& a : f.args()) {
      auto g = ground(a);
      if (!g) {
        complete = false;
        break;
      }
      args.push_back(std::move(*g));
    }
    if (const PredicateDef* def = ctx_.find(name, arity, reading_)) {
      if (!complete && partial_ && !nested_ && budget > 0) {
        // One level of unfolding with the known arguments lets the
        // callee's own checks refute the call early.
        Evaluator callee(ctx_, reading_, true);
        callee.nested_ = true;
        for (std::size_t i = 0; i < arity; ++i)
          if (auto g = ground(f.args()[i])) callee.bind(def->params[i], std::move(*g));
        return callee.eval(def->definition, budget - 1) == Truth::False ? Truth::False
                                                                         : Truth::Unknown;
      }
      if (!complete || budget <= 0) return Truth::Unknown;
      EvalContext::MemoKey key{reading_, name, args, budget};
      auto& memo = ctx_.memo();
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      Evaluator callee(ctx_, reading_, false);
      for (std::size_t i = 0; i < arity; ++i) callee.bind(def->params[i], args[i]);
      Truth t = callee.eval(def->definition, budget - 1);
      memo.emplace(std::move(key), t);
      return t;
    }
    if (arity == 1 && ctx_.types().contains(name)) {
      if (!complete) return Truth::Unknown;
      return from_bool(is_member(ctx_.types(), name, args[0]));
    }
    if (is_builtin_predicate(name, arity)) {
      if (!complete) return Truth::Unknown;
      return eval_builtin(name, args);
    }
    throw Error("UnknownPredicate",
                "no meaning for predicate " + name + "/" + std::to_string(arity));
  }

  struct Witness {
    enum class Kind { None, Found, Impossible } kind = Kind::None;
    Term value;
  };

  // Matches `pattern` (which mentions x) against a ground value; other
  // pattern variables are wildcards unless bound outside `shadow`.
  bool match(const Term& pattern, const Term& value, const std::string& x,
             const std::vector<std::string>& shadow, Witness& w) const {
    if (pattern.is_var()) {
      if (pattern.name() == x) {
        if (w.kind == Witness::Kind::Found && !(w.value == value)) return false;
        w.kind = Witness::Kind::Found;
        w.value = value;
        return true;
      }
      if (std::find(shadow.begin(), shadow.end(), pattern.name()) !=
          shadow.end())
        return true;
      if (const Term* v = lookup(pattern.name())) return *v == value;
      return true;
    }
    if (is_arith_functor(pattern)) return true;
    if (pattern.name() != value.name() || pattern.arity() != value.arity())
      return false;
    for (std::size_t i = 0; i < pattern.arity(); ++i)
      if (!match(pattern.args()[i], value.args()[i], x, shadow, w)) return false;
    return true;
  }

  std::optional<Term> ground_outside(const Term& t,
                                     const std::vector<std::string>& shadow) {
    std::vector<std::string> vars;
    t.collect_variables(vars);
    for (const auto& v : vars)
      if (std::find(shadow.begin(), shadow.end(), v) != shadow.end() ||
          !lookup(v))
        return std::nullopt;
    return ground(t);
  }

  void scan_witness(const Formula& f, const std::string& x,
                    std::vector<std::string>& shadow, Witness& w) {
    if (w.kind != Witness::Kind::None) return;
    switch (f.kind()) {
      case FormulaKind::And:
        for (const auto& c : f.children()) {
          scan_witness(c, x, shadow, w);
          if (w.kind != Witness::Kind::None) return;
        }
        return;
      case FormulaKind::Exists:
        if (f.var() == x) return;
        shadow.push_back(f.var());
        scan_witness(f.body(), x, shadow, w);
        shadow.pop_back();
        return;
      case FormulaKind::Eq: {
        const Term* sides[2] = {&f.lhs(), &f.rhs()};
        for (int k = 0; k < 2; ++k) {
          const Term& pattern = *sides[k];
          const Term& other = *sides[1 - k];
          if (!pattern.mentions(x) || other.mentions(x)) continue;
          auto value = ground_outside(other, shadow);
          if (!value) continue;
          Witness local;
          if (!match(pattern, *value, x, shadow, local)) {
            w.kind = Witness::Kind::Impossible;
            return;
          }
          if (local.kind == Witness::Kind::Found) {
            w = std::move(local);
            return;
          }
        }
        return;
      }
      default:
        return;
    }
  }

  bool body_has_unbound(const Formula& body, const std::string& x) const {
    for (const auto& v : free_variable_names(body))
      if (v != x && !lookup(v)) return true;
    return false;
  }

  Truth eval_quantifier(const Formula& f, int budget) {
    const bool is_exists = f.kind() == FormulaKind::Exists;
    const std::string& x = f.var();
    const std::string& type = f.type();
    const int depth = ctx_.universe_depth();

    if (is_exists) {
      Witness w;
      std::vector<std::string> shadow;
      scan_witness(f.body(), x, shadow, w);
      if (w.kind == Witness::Kind::Impossible) return Truth::False;
      if (w.kind == Witness::Kind::Found) {
        if (!ctx_.enumerator().contains(type, depth, w.value))
          return Truth::False;
        bind(x, w.value);
        Truth t = eval(f.body(), budget);
        unbind();
        return t;
      }
    }

    const auto& domain = ctx_.enumerator().members(type, depth);
    if (partial_ && domain.size() > kPartialDomainLimit &&
        body_has_unbound(f.body(), x))
      return Truth::Unknown;

    Truth acc = is_exists ? Truth::False : Truth::True;
    for (const auto& v : domain) {
      bind(x, v);
      Truth t = eval(f.body(), budget);
      unbind();
      if (is_exists && t == Truth::True) return t;
      if (!is_exists && t == Truth::False) return t;
      if (t == Truth::Unknown) acc = t;
    }
    return acc;
  }

  const EvalContext& ctx_;
  Reading reading_;
  bool partial_;
  bool nested_ = false;
  std::vector<std::pair<std::string, Term>> scope_;
};

}  // namespace

bool is_builtin_predicate(std::string_view name, std::size_t arity) {
  return std::any_of(std::begin(kBuiltins), std::end(kBuiltins),
                     [&](const BuiltinSig& b) {
                       return b.name == name && b.arity == arity;
                     });
}

EvalContext::EvalContext(TypeEnv types, int universe_depth, int unfold_depth)
    : types_(std::move(types)),
      universe_depth_(universe_depth),
      unfold_depth_(unfold_depth),
      enumerator_(std::make_unique<Enumerator>(types_)),
      memo_(std::make_unique<std::map<MemoKey, Truth>>()) {
  if (universe_depth < 1 || unfold_depth < 1)
    throw Error("InvalidBound", "evaluation bounds must be at least 1");
}

void EvalContext::define(const std::string& name, PredicateDef def,
                         std::optional<Reading> reading) {
  std::pair<std::string, std::size_t> key{name, def.params.size()};
  def.definition = miniscope(def.definition);
  if (!reading || *reading == Reading::Typed) typed_.insert_or_assign(key, def);
  if (!reading || *reading == Reading::Untyped)
    untyped_.insert_or_assign(key, def);
  memo_->clear();
}

const PredicateDef* EvalContext::find(const std::string& name,
                                      std::size_t arity,
                                      Reading reading) const {
  const auto& table = reading == Reading::Typed ? typed_ : untyped_;
  auto it = table.find({name, arity});
  return it == table.end() ? nullptr : &it->second;
}

Truth eval(const EvalContext& ctx, const Formula& f, const TermBinding& binding,
           Reading reading) {
  Evaluator ev(ctx, reading, false);
  for (const auto& [name, value] : binding) {
    if (!value.is_ground())
      throw Error("NonGroundTerm", "binding for " + name + " is not ground");
    ev.bind(name, value);
  }
  for (const auto& v : free_variable_names(f))
    if (!binding.contains(v))
      throw Error("MissingBinding", "no binding for free variable " + v);
  return ev.eval(miniscope(f), ctx.unfold_depth());
}

std::string EquivalenceReport::summary() const {
  std::string out = "checked " + std::to_string(checked) + ", violated " +
                    std::to_string(violated) + ", inconclusive " +
                    std::to_string(inconclusive) + ", vacuous " +
                    std::to_string(vacuous);
  if (counterexample) {
    out += "\ncounterexample:";
    for (const auto& [k, v] : *counterexample) out += " " + k + "=" + to_string(v);
    if (!reason.empty()) out += " (" + reason + ")";
  }
  return out;
}

namespace {

class EquivalenceSearch {
 public:
  EquivalenceSearch(const EvalContext& ctx, const Formula& typed,
                    const Formula& untyped, const std::vector<TypedVar>& vars)
      : ctx_(ctx), typed_(typed), untyped_(untyped), vars_(vars),
        domain_(ctx.enumerator().members(kTermType, ctx.universe_depth())) {}

  EquivalenceReport run() {
    explore(0, false);
    return report_;
  }

 private:
  std::uint64_t remaining(std::size_t i) const {
    std::uint64_t n = 1;
    for (std::size_t k = i; k < vars_.size(); ++k) n *= domain_.size();
    return n;
  }

  bool rest_unconstrained(std::size_t i) const {
    for (std::size_t k = i; k < vars_.size(); ++k)
      if (vars_[k].type != kTermType) return false;
    return true;
  }

  Truth evaluate(const Formula& f, Reading r, bool partial) {
    Evaluator ev(ctx_, r, partial);
    for (const auto& [name, value] : binding_) ev.bind(name, value);
    return ev.eval(f, ctx_.unfold_depth());
  }

  void violation(std::size_t i, std::string reason) {
    if (report_.counterexample) return;
    TermBinding cx = binding_;
    for (std::size_t k = i; k < vars_.size(); ++k)
      if (!domain_.empty()) cx.insert_or_assign(vars_[k].name, domain_.front());
    report_.counterexample = std::move(cx);
    report_.reason = std::move(reason);
  }

  void explore(std::size_t i, bool out_of_type) {
    if (i == vars_.size()) {
      leaf(out_of_type);
      return;
    }
    if (i > 0) {
      const Truth u = evaluate(untyped_, Reading::Untyped, true);
      if (out_of_type) {
        if (u == Truth::False) {
          report_.checked += remaining(i);
          report_.vacuous += remaining(i);
          return;
        }
        if (u == Truth::True) {
          report_.checked += remaining(i);
          report_.violated += remaining(i);
          violation(i, "untyped formula holds outside the declared types");
          return;
        }
      } else {
        const Truth t = evaluate(typed_, Reading::Typed, true);
        if (u == Truth::False && t == Truth::False) {
          report_.checked += remaining(i);
          return;
        }
        if (rest_unconstrained(i) && u == t && u != Truth::Unknown) {
          report_.checked += remaining(i);
          return;
        }
      }
    }
    const TypedVar& v = vars_[i];
    for (const auto& value : domain_) {
      const bool inside = is_member(ctx_.types(), v.type, value);
      binding_.insert_or_assign(v.name, value);
      explore(i + 1, out_of_type || !inside);
    }
    binding_.erase(v.name);
  }

  void leaf(bool out_of_type) {
    ++report_.checked;
    const Truth u = evaluate(untyped_, Reading::Untyped, false);
    if (out_of_type) {
      if (u == Truth::False) {
        ++report_.vacuous;
      } else if (u == Truth::True) {
        ++report_.violated;
        violation(vars_.size(), "untyped formula holds outside the declared types");
      } else {
        ++report_.inconclusive;
      }
      return;
    }
    const Truth t = evaluate(typed_, Reading::Typed, false);
    if (u == Truth::Unknown || t == Truth::Unknown) {
      ++report_.inconclusive;
    } else if (u != t) {
      ++report_.violated;
      violation(vars_.size(), std::string("typed formula is ") + to_string(t) +
                                  ", untyped is " + to_string(u));
    }
  }

  const EvalContext& ctx_;
  const Formula& typed_;
  const Formula& untyped_;
  const std::vector<TypedVar>& vars_;
  const std::vector<Term>& domain_;
  TermBinding binding_;
  EquivalenceReport report_;
};

}  // namespace

EquivalenceReport check_equivalence(const EvalContext& ctx,
                                    const Formula& typed,
                                    const Formula& untyped,
                                    const std::vector<TypedVar>& freevars) {
  const Formula t = miniscope(typed);
  const Formula u = miniscope(untyped);
  // Narrow types first: out-of-type values are discharged at once, so the
  // cost is dominated by the in-type prefix of the search.
  std::vector<TypedVar> order = freevars;
  std::stable_sort(order.begin(), order.end(), [&](const TypedVar& a, const TypedVar& b) {
    return ctx.enumerator().members(a.type, ctx.universe_depth()).size() <
           ctx.enumerator().members(b.type, ctx.universe_depth()).size();
  });
  return EquivalenceSearch(ctx, t, u, order).run();
}

}  // namespace tldf
