#include "tldforge/modes.hpp"

#include <algorithm>

#include "tldforge/syntax.hpp"

namespace tldf {

// ---------------------------------------------------------------- checks

Diagnostics check_directionality(const Spec& spec) {
  Diagnostics out;
  auto report = [&](const Directionality& d, std::string code,
                    std::string msg) {
    Diagnostic diag;
    diag.severity = Severity::Error;
    diag.code = std::move(code);
    diag.message = spec.name + ": " + std::move(msg);
    diag.file = spec.file;
    diag.line = d.pos.known() ? d.pos.line : std::max(spec.pos.line, 1);
    diag.column = d.pos.known() ? d.pos.column : std::max(spec.pos.column, 1);
    out.push_back(std::move(diag));
  };
  const int n = static_cast<int>(spec.arity());
  for (const auto& d : spec.dirs) {
    if (d.modes.size() != spec.arity()) {
      report(d, "ArityMismatch",
             "directionality has " + std::to_string(d.modes.size()) +
                 " modes for " + std::to_string(n) + " parameters");
      continue;
    }
    for (std::size_t i = 0; i < d.modes.size(); ++i) {
      const ModePair& mp = d.modes[i];
      if (!mp.out.leq(mp.in.inst_closure()))
        report(d, "InconsistentMode",
               "parameter " + spec.params[i] + ": " + std::string(mp.in.name()) +
                   " -> " + std::string(mp.out.name()) +
                   " is impossible, execution can only instantiate terms");
    }
    if (!d.mult.well_formed())
      report(d, "MalformedMultiplicity",
             "multiplicity " + d.mult.to_string() + " has Min above Max");
    for (const auto& [i, j] : d.nosh) {
      if (i == j || i < 1 || j < 1 || i > n || j > n)
        report(d, "InvalidNoShare",
               "no-share pair (" + std::to_string(i) + "," + std::to_string(j) +
                   ") needs distinct indices in 1.." + std::to_string(n));
    }
  }
  return out;
}

// ---------------------------------------------------------------- registry

void SpecRegistry::add(Spec spec) {
  for (auto& s : specs_) {
    if (s.name == spec.name && s.arity() == spec.arity()) {
      s = std::move(spec);
      return;
    }
  }
  specs_.push_back(std::move(spec));
}

const Spec* SpecRegistry::find(std::string_view name, std::size_t arity) const {
  for (const auto& s : specs_)
    if (s.name == name && s.arity() == arity) return &s;
  return nullptr;
}

std::string_view SpecRegistry::builtin_preamble() {
  return R"(# Built-in arithmetic and comparison procedures.
procedure plus(X, Y, Z).
types X: integer, Y: integer, Z: integer.
relation "Z = X + Y".
dir (ground, ground, var -> ground) : <1-1>.
dir (ground, var -> ground, ground) : <1-1>.
dir (var -> ground, ground, ground) : <1-1>.
dir (ground, ground, ground) : <0-1>.

procedure minus(X, Y, Z).
types X: integer, Y: integer, Z: integer.
relation "Z = X - Y".
dir (ground, ground, var -> ground) : <1-1>.
dir (ground, var -> ground, ground) : <1-1>.
dir (var -> ground, ground, ground) : <1-1>.
dir (ground, ground, ground) : <0-1>.

procedure times(X, Y, Z).
types X: integer, Y: integer, Z: integer.
relation "Z = X * Y".
dir (ground, ground, var -> ground) : <1-1>.
dir (ground, ground, ground) : <0-1>.

procedure max(X, Y, Z).
types X: integer, Y: integer, Z: integer.
relation "Z is the larger of X and Y".
dir (ground, ground, var -> ground) : <1-1>.
dir (ground, ground, ground) : <0-1>.

procedure min(X, Y, Z).
types X: integer, Y: integer, Z: integer.
relation "Z is the smaller of X and Y".
dir (ground, ground, var -> ground) : <1-1>.
dir (ground, ground, ground) : <0-1>.

procedure less(X, Y).
types X: integer, Y: integer.
relation "X < Y".
dir (ground, ground) : <0-1>.

procedure leq(X, Y).
types X: integer, Y: integer.
relation "X =< Y".
dir (ground, ground) : <0-1>.
)";
}

SpecRegistry SpecRegistry::with_builtins() {
  auto parsed = parse_specs(builtin_preamble(), "<builtin>");
  if (!parsed.ok())
    throw Error("Internal", "built-in preamble does not parse:\n" +
                                format_all(parsed.diagnostics));
  SpecRegistry reg;
  for (auto& s : parsed.value) reg.add(std::move(s));
  return reg;
}

// ---------------------------------------------------------------- state

Mode AbstractState::mode_of(const std::string& var) const {
  auto it = modes.find(var);
  return it == modes.end() ? Mode::var() : it->second;
}

Mode AbstractState::mode_of(const Term& t) const {
  if (t.is_var()) return mode_of(t.name());
  bool all_ground = true, all_may_ground = true;
  for (const auto& v : t.variables()) {
    Mode m = mode_of(v);
    all_ground = all_ground && m.is_ground();
    all_may_ground = all_may_ground && m.may_be_ground();
  }
  if (all_ground) return Mode::ground();
  return all_may_ground ? Mode::novar() : Mode::ngv();
}

bool AbstractState::may_share(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  return share.contains(a < b ? std::pair{a, b} : std::pair{b, a});
}

namespace {

void add_share(AbstractState& s, const std::string& a, const std::string& b) {
  if (a == b) return;
  if (s.mode_of(a).is_ground() || s.mode_of(b).is_ground()) return;
  s.share.insert(a < b ? std::pair{a, b} : std::pair{b, a});
}

void drop_ground_sharing(AbstractState& s) {
  std::erase_if(s.share, [&](const auto& p) {
    return s.mode_of(p.first).is_ground() || s.mode_of(p.second).is_ground();
  });
}

void set_ground(AbstractState& s, const Term& t) {
  for (const auto& v : t.variables()) s.modes.insert_or_assign(v, Mode::ground());
}

std::string mode_tuple(const AbstractState& s, const std::vector<Term>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += s.mode_of(args[i]).name();
  }
  return out + ")";
}

bool all_ground(const AbstractState& s, const std::vector<std::string>& vars) {
  return std::all_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return s.mode_of(v).is_ground(); });
}

void unify(AbstractState& s, const Term& a, const Term& b) {
  if (a.is_var() && b.is_var()) {
    if (a.name() == b.name()) return;
    Mode ma = s.mode_of(a.name()), mb = s.mode_of(b.name());
    Mode result = Mode::ground();
    if (!ma.is_ground() && !mb.is_ground()) {
      std::uint8_t bits = ma.bits() | mb.bits();
      if (!ma.may_be_var() || !mb.may_be_var()) bits &= ~Mode::kV;
      result = Mode::from_bits(bits).value_or(Mode::any());
    }
    s.modes.insert_or_assign(a.name(), result);
    s.modes.insert_or_assign(b.name(), result);
    add_share(s, a.name(), b.name());
    return;
  }
  if (!a.is_var() && !b.is_var()) {
    if (a.name() != b.name() || a.arity() != b.arity()) return;
    for (std::size_t i = 0; i < a.arity(); ++i) unify(s, a.args()[i], b.args()[i]);
    return;
  }
  const Term& x = a.is_var() ? a : b;
  const Term& t = a.is_var() ? b : a;
  const Mode mx = s.mode_of(x.name());
  if (mx.is_ground()) {
    set_ground(s, t);
    return;
  }
  if (s.mode_of(t).is_ground()) {
    s.modes.insert_or_assign(x.name(), Mode::ground());
    return;
  }
  s.modes.insert_or_assign(x.name(), Mode::novar());
  for (const auto& v : t.variables()) {
    if (mx.may_be_nonvar())
      s.modes.insert_or_assign(v, s.mode_of(v).inst_closure());
    add_share(s, x.name(), v);
  }
}

}  // namespace

AbstractState initial_state(const Clause& clause, const Directionality& dir) {
  AbstractState s;
  const std::size_t n = std::min(clause.head.size(), dir.modes.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Term& h = clause.head[i];
    if (!h.is_var()) continue;
    Mode in = dir.modes[i].in;
    auto it = s.modes.find(h.name());
    if (it != s.modes.end()) in = it->second.meet(in).value_or(in);
    s.modes.insert_or_assign(h.name(), in);
  }
  auto nosh = [&](std::size_t i, std::size_t j) {
    for (const auto& [a, b] : dir.nosh)
      if ((a == static_cast<int>(i + 1) && b == static_cast<int>(j + 1)) ||
          (a == static_cast<int>(j + 1) && b == static_cast<int>(i + 1)))
        return true;
    return false;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (clause.head[i].is_var() && clause.head[j].is_var() && !nosh(i, j))
        add_share(s, clause.head[i].name(), clause.head[j].name());
  return s;
}

StepResult abstract_step(const AbstractState& state, const Literal& lit,
                         const SpecRegistry& specs) {
  StepResult r;
  r.state = state;
  AbstractState& s = r.state;
  switch (lit.kind()) {
    case Literal::Kind::Unify:
      unify(s, lit.lhs(), lit.rhs());
      r.callable = true;
      break;
    case Literal::Kind::TypeCheck: {
      if (!all_ground(s, lit.variables())) {
        r.reason = "type check " + to_string(lit) + " needs a ground argument";
        return r;
      }
      if (lit.subject().is_var())
        s.typefacts[lit.subject().name()].insert(lit.name());
      r.callable = true;
      break;
    }
    case Literal::Kind::NafNot:
      if (!all_ground(s, lit.variables())) {
        r.reason = "negation " + to_string(lit) + " needs all variables ground";
        return r;
      }
      r.callable = true;
      break;
    case Literal::Kind::Call: {
      const auto& args = lit.terms();
      const Spec* callee = specs.find(lit.name(), args.size());
      if (!callee)
        throw Error("UnknownCallee", "no specification for " + lit.name() +
                                         "/" + std::to_string(args.size()));
      for (std::size_t d = 0; d < callee->dirs.size(); ++d) {
        const auto& dir = callee->dirs[d];
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i)
          ok = s.mode_of(args[i]).leq(dir.modes[i].in);
        if (!ok) continue;
        std::map<std::string, Mode> next;
        for (std::size_t i = 0; i < args.size(); ++i) {
          const Mode out = dir.modes[i].out;
          if (args[i].is_var()) {
            auto [it, fresh] = next.try_emplace(args[i].name(), out);
            if (!fresh && out.is_ground()) it->second = out;
          } else {
            for (const auto& v : args[i].variables()) {
              Mode m = out.is_ground() ? Mode::ground() : s.mode_of(v).inst_closure();
              auto [it, fresh] = next.try_emplace(v, m);
              if (!fresh && m.is_ground()) it->second = m;
            }
          }
        }
        for (auto& [v, m] : next) s.modes.insert_or_assign(v, m);
        for (std::size_t i = 0; i < args.size(); ++i) {
          const std::string& type = callee->param_types[i];
          if (args[i].is_var() && !type.empty() && type != kTermType)
            s.typefacts[args[i].name()].insert(type);
        }
        std::vector<std::string> vars = lit.variables();
        for (std::size_t i = 0; i < vars.size(); ++i)
          for (std::size_t j = i + 1; j < vars.size(); ++j)
            add_share(s, vars[i], vars[j]);
        r.callee_dir = d;
        r.callable = true;
        break;
      }
      if (!r.callable) {
        r.reason = "no directionality of " + lit.name() + "/" +
                   std::to_string(args.size()) + " accepts " +
                   mode_tuple(state, args);
        return r;
      }
      break;
    }
  }
  drop_ground_sharing(s);
  return r;
}

// ---------------------------------------------------------------- reorder

namespace {

std::optional<std::string> out_violation(const Clause& clause,
                                         const Directionality& dir,
                                         const AbstractState& s) {
  for (std::size_t i = 0; i < clause.head.size() && i < dir.modes.size(); ++i) {
    const Mode m = s.mode_of(clause.head[i]);
    if (!m.leq(dir.modes[i].out))
      return "argument " + std::to_string(i + 1) + " ends " +
             std::string(m.name()) + ", declared " +
             std::string(dir.modes[i].out.name());
  }
  return std::nullopt;
}

constexpr std::size_t kSearchBudget = 200000;

struct Search {
  const Clause& clause;
  const Directionality& dir;
  const SpecRegistry& specs;
  std::vector<Literal> order;
  std::vector<bool> used;
  std::size_t visited = 0;
  AbstractState final_state;

  bool dfs(const AbstractState& s) {
    if (order.size() == clause.body.size()) {
      if (out_violation(clause, dir, s)) return false;
      final_state = s;
      return true;
    }
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
      if (used[i]) continue;
      if (++visited > kSearchBudget) return false;
      StepResult r = abstract_step(s, clause.body[i], specs);
      if (!r.callable) continue;
      used[i] = true;
      order.push_back(clause.body[i]);
      if (dfs(r.state)) return true;
      order.pop_back();
      used[i] = false;
    }
    return false;
  }
};

}  // namespace

ReorderResult reorder(const Clause& clause, const Directionality& dir,
                      const SpecRegistry& specs) {
  ReorderResult result;
  result.clause = clause;
  AbstractState s = initial_state(clause, dir);
  std::vector<Literal> pending = clause.body;
  std::vector<Literal> order;
  std::string stuck;
  while (!pending.empty()) {
    bool progressed = false;
    std::string reasons;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      StepResult r = abstract_step(s, pending[i], specs);
      if (r.callable) {
        s = std::move(r.state);
        order.push_back(pending[i]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
        progressed = true;
        break;
      }
      if (!reasons.empty()) reasons += "; ";
      reasons += r.reason;
    }
    if (!progressed) {
      stuck = reasons;
      break;
    }
  }
  if (pending.empty()) {
    auto bad = out_violation(clause, dir, s);
    if (!bad) {
      result.ok = true;
      result.clause.body = std::move(order);
      result.final_state = std::move(s);
      return result;
    }
    stuck = *bad;
  }

  Search search{clause, dir, specs, {}, std::vector<bool>(clause.body.size()), 0, {}};
  if (search.dfs(initial_state(clause, dir))) {
    result.ok = true;
    result.clause.body = std::move(search.order);
    result.final_state = std::move(search.final_state);
    return result;
  }
  result.reason = "no order of the literals satisfies " + dir.to_string() +
                  (stuck.empty() ? "" : ": " + stuck);
  result.suggestions = {std::string(kSuggestSplit), std::string(kSuggestRespec)};
  return result;
}

std::optional<std::string> check_order(const Clause& clause,
                                       const Directionality& dir,
                                       const SpecRegistry& specs) {
  AbstractState s = initial_state(clause, dir);
  for (const auto& lit : clause.body) {
    StepResult r = abstract_step(s, lit, specs);
    if (!r.callable) return r.reason;
    s = std::move(r.state);
  }
  return out_violation(clause, dir, s);
}

// ---------------------------------------------------------------- elimination

std::vector<bool> trusted_params(const Spec& spec) {
  std::vector<bool> out(spec.arity(), !spec.dirs.empty());
  for (const auto& d : spec.dirs)
    for (std::size_t i = 0; i < spec.arity() && i < d.modes.size(); ++i)
      if (!d.modes[i].in.is_ground()) out[i] = false;
  return out;
}

namespace {

bool same_type(const TypeEnv& types, std::string_view a, std::string_view b) {
  if (a == b) return true;
  try {
    return types.equivalent(a, b);
  } catch (const Error&) {
    return false;
  }
}

struct Fact {
  std::string type;
  std::string source;
};

}  // namespace

Program eliminate_checks(const Program& prog, const Spec& spec,
                         const SpecRegistry& specs, const TypeEnv& types,
                         CheckLevel level, std::vector<RemovedCheck>* removed) {
  if (level == CheckLevel::None) return prog;
  Program out = prog;
  const std::vector<bool> trusted = trusted_params(spec);
  for (std::size_t ci = 0; ci < out.clauses.size(); ++ci) {
    Clause& c = out.clauses[ci];
    std::map<std::string, std::vector<Fact>> facts;
    auto add = [&](const std::string& v, const std::string& type,
                   const std::string& source) {
      if (type.empty() || type == kTermType) return;
      facts[v].push_back({type, source});
    };
    for (std::size_t i = 0; i < c.head.size() && i < trusted.size(); ++i)
      if (trusted[i] && c.head[i].is_var())
        add(c.head[i].name(), spec.param_types[i],
            "trusted parameter " + c.head[i].name());

    std::vector<Literal> kept;
    for (const auto& lit : c.body) {
      switch (lit.kind()) {
        case Literal::Kind::TypeCheck: {
          const Fact* hit = nullptr;
          if (lit.subject().is_var()) {
            for (const auto& f : facts[lit.subject().name()])
              if (same_type(types, f.type, lit.name())) {
                hit = &f;
                break;
              }
          }
          if (hit) {
            if (removed) removed->push_back({ci, lit, hit->source});
            continue;
          }
          break;
        }
        case Literal::Kind::Unify: {
          const bool lv = lit.lhs().is_var(), rv = lit.rhs().is_var();
          if (lv == rv) break;
          const Term& x = lv ? lit.lhs() : lit.rhs();
          const Term& t = lv ? lit.rhs() : lit.lhs();
          auto known = facts.find(x.name());
          if (known == facts.end()) break;
          std::vector<Fact> xs = known->second;
          for (const auto& f : xs) {
            const TypeCase* tc = nullptr;
            try {
              tc = find_case(types, f.type, t.name(), t.arity());
            } catch (const Error&) {
            }
            if (!tc) continue;
            for (std::size_t i = 0; i < t.arity(); ++i)
              if (t.args()[i].is_var())
                add(t.args()[i].name(), tc->components[i],
                    "decomposition of " + to_string(lit));
          }
          break;
        }
        case Literal::Kind::Call: {
          const Spec* callee = specs.find(lit.name(), lit.terms().size());
          if (!callee) break;
          for (std::size_t i = 0; i < lit.terms().size(); ++i)
            if (lit.terms()[i].is_var())
              add(lit.terms()[i].name(), callee->param_types[i],
                  "success of " + lit.name() + "/" +
                      std::to_string(lit.terms().size()));
          break;
        }
        case Literal::Kind::NafNot:
          break;
      }
      kept.push_back(lit);
    }
    c.body = std::move(kept);
  }
  return out;
}

// ---------------------------------------------------------------- determinism

std::optional<Switch> detect_switch(const Program& prog, const Spec& spec,
                                    const TypeEnv& types,
                                    std::optional<std::size_t> dir_index) {
  if (prog.clauses.empty()) return std::nullopt;
  const std::vector<bool> trusted = trusted_params(spec);
  std::optional<Switch> best;
  for (std::size_t p = 0; p < spec.arity(); ++p) {
    const bool ground = dir_index ? spec.dirs.at(*dir_index).modes.at(p).in.is_ground()
                                  : trusted[p];
    if (!ground) continue;
    std::set<std::pair<std::string, std::size_t>> all_cases;
    bool structural = false;
    try {
      const TypeDef& def = types.resolve(spec.param_types[p]);
      if (def.form == TypeDef::Form::Cases) {
        structural = true;
        for (const auto& c : def.cases) all_cases.insert({c.functor, c.arity()});
      }
    } catch (const Error&) {
    }

    Switch sw{p, {}, false};
    std::set<std::pair<std::string, std::size_t>> seen;
    bool ok = true;
    for (const auto& clause : prog.clauses) {
      if (p >= clause.head.size() || !clause.head[p].is_var()) {
        ok = false;
        break;
      }
      const std::string& x = clause.head[p].name();
      std::optional<std::size_t> found;
      for (std::size_t k = 0; k < clause.body.size() && !found; ++k) {
        const Literal& lit = clause.body[k];
        // Anything before the test must leave no choice point behind.
        if (lit.kind() == Literal::Kind::Call) break;
        if (lit.kind() != Literal::Kind::Unify) continue;
        const Term* other = nullptr;
        if (lit.lhs().is_var() && lit.lhs().name() == x && !lit.rhs().is_var())
          other = &lit.rhs();
        else if (lit.rhs().is_var() && lit.rhs().name() == x && !lit.lhs().is_var())
          other = &lit.lhs();
        if (!other) continue;
        if (!seen.insert({other->name(), other->arity()}).second) break;
        found = k;
      }
      if (!found) {
        ok = false;
        break;
      }
      sw.literal.push_back(*found);
    }
    if (!ok) continue;
    sw.complete = structural && trusted[p] && seen == all_cases;
    if (!best || (sw.complete && !best->complete)) best = std::move(sw);
  }
  return best;
}

DeterminismResult analyze_determinism(const Program& prog,
                                      std::size_t dir_index, const Spec& spec,
                                      const SpecRegistry& specs,
                                      const TypeEnv& types) {
  const Directionality& dir = spec.dirs.at(dir_index);
  const std::vector<bool> trusted = trusted_params(spec);
  const auto sw = detect_switch(prog, spec, types, dir_index);
  const Multiplicity one{Bound::finite(1), Bound::finite(1)};
  const Multiplicity maybe{Bound::finite(0), Bound::finite(1)};

  DeterminismResult res;
  res.used_switch = sw && sw->complete;
  res.exclusive = sw.has_value();
  for (std::size_t ci = 0; ci < prog.clauses.size(); ++ci) {
    const Clause& c = prog.clauses[ci];
    AbstractState s = initial_state(c, dir);
    Multiplicity m = one;
    // Variables equal (by a body unification) to a trusted parameter.
    std::map<std::string, std::string> equal_to_trusted;
    // Variables bound to a ground term by an earlier unification.
    std::map<std::string, Term> values;
    for (std::size_t i = 0; i < c.head.size() && i < trusted.size(); ++i)
      if (trusted[i] && c.head[i].is_var())
        equal_to_trusted[c.head[i].name()] = spec.param_types[i];

    for (std::size_t k = 0; k < c.body.size(); ++k) {
      const Literal& lit = c.body[k];
      Multiplicity lm = maybe;
      StepResult r = abstract_step(s, lit, specs);
      if (sw && sw->literal[ci] == k) {
        lm = sw->complete ? one : maybe;
      } else {
        switch (lit.kind()) {
          case Literal::Kind::Unify: {
            const bool free_side =
                (lit.lhs().is_var() && s.mode_of(lit.lhs()).is_var()) ||
                (lit.rhs().is_var() && s.mode_of(lit.rhs()).is_var());
            lm = free_side ? one : maybe;
            if (lit.lhs().is_var() != lit.rhs().is_var()) {
              const Term& x = lit.lhs().is_var() ? lit.lhs() : lit.rhs();
              const Term& t = lit.lhs().is_var() ? lit.rhs() : lit.lhs();
              if (t.is_ground()) values.insert_or_assign(x.name(), t);
            }
            if (lit.lhs().is_var() && lit.rhs().is_var()) {
              for (const auto& [a, b] :
                   {std::pair{lit.lhs().name(), lit.rhs().name()},
                    std::pair{lit.rhs().name(), lit.lhs().name()}}) {
                auto it = equal_to_trusted.find(b);
                if (it != equal_to_trusted.end())
                  equal_to_trusted.try_emplace(a, it->second);
              }
            }
            break;
          }
          case Literal::Kind::Call: {
            const Spec* callee = specs.find(lit.name(), lit.terms().size());
            if (r.callable && r.callee_dir)
              lm = callee->dirs[*r.callee_dir].mult;
            else
              lm = {Bound::finite(0), Bound::infinite()};
            break;
          }
          case Literal::Kind::TypeCheck: {
            lm = maybe;
            if (lit.subject().is_var()) {
              auto it = equal_to_trusted.find(lit.subject().name());
              if (it != equal_to_trusted.end() &&
                  same_type(types, it->second, lit.name()))
                lm = one;
              auto v = values.find(lit.subject().name());
              if (v != values.end())
                lm = is_member(types, lit.name(), v->second)
                         ? one
                         : Multiplicity{Bound::finite(0), Bound::finite(0)};
            }
            break;
          }
          case Literal::Kind::NafNot:
            lm = maybe;
            break;
        }
      }
      m = sequence(m, lm);
      if (r.callable) s = std::move(r.state);
    }
    res.per_clause.push_back(m);
  }

  if (prog.clauses.empty()) {
    res.computed = {Bound::finite(0), Bound::finite(0)};
  } else if (sw) {
    // At most one clause applies; with a complete switch exactly one.
    res.computed = res.per_clause.front();
    for (const auto& m : res.per_clause) {
      res.computed.min = std::min(res.computed.min, m.min);
      res.computed.max = std::max(res.computed.max, m.max);
    }
  } else {
    res.computed = {Bound::finite(0), Bound::finite(0)};
    for (const auto& m : res.per_clause) res.computed = alternative(res.computed, m);
  }
  res.within_declared =
      dir.mult.min <= res.computed.min && res.computed.max <= dir.mult.max;
  res.message = spec.name + " " + dir.to_string() + ": computed " +
                res.computed.to_string() +
                (res.within_declared ? " within declared "
                                     : " is not within declared ") +
                dir.mult.to_string();
  return res;
}

}  // namespace tldf
