#include "tldforge/ast.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace tldf {

bool is_variable_name(std::string_view name) {
  if (name.empty()) return false;
  const unsigned char c = static_cast<unsigned char>(name.front());
  return std::isupper(c) || c == '_';
}

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool is_float_literal(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  const auto dot = text.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size())
    return false;
  return is_integer_literal(text.substr(0, dot)) &&
         is_integer_literal(text.substr(dot + 1));
}

// ---------------------------------------------------------------- Term

Term Term::var(std::string name) {
  Term t;
  t.kind_ = Kind::Variable;
  t.name_ = std::move(name);
  return t;
}

Term Term::atom(std::string name) {
  Term t;
  t.name_ = std::move(name);
  return t;
}

Term Term::integer(long long value) { return atom(std::to_string(value)); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  Term t;
  t.name_ = std::move(functor);
  t.args_ = std::move(args);
  return t;
}

bool Term::is_ground() const {
  if (is_var()) return false;
  return std::all_of(args_.begin(), args_.end(),
                     [](const Term& a) { return a.is_ground(); });
}

std::optional<long long> Term::as_integer() const {
  if (!is_integer()) return std::nullopt;
  long long v = 0;
  const char* first = name_.data();
  const char* last = name_.data() + name_.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

int Term::depth() const {
  int d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (is_var()) {
    if (std::find(out.begin(), out.end(), name_) == out.end())
      out.push_back(name_);
    return;
  }
  for (const auto& a : args_) a.collect_variables(out);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  collect_variables(out);
  return out;
}

bool Term::mentions(std::string_view var) const {
  if (is_var()) return name_ == var;
  return std::any_of(args_.begin(), args_.end(),
                     [&](const Term& a) { return a.mentions(var); });
}

bool operator==(const Term& a, const Term& b) {
  return a.kind_ == b.kind_ && a.name_ == b.name_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
  if (auto c = a.name_.compare(b.name_) <=> 0; c != 0) return c;
  for (std::size_t i = 0; i < a.args_.size(); ++i)
    if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

bool is_plain_atom(std::string_view s) {
  if (s.empty()) return false;
  if (s == "[]") return true;
  if (is_integer_literal(s) || is_float_literal(s)) return true;
  if (s.front() == '-') s.remove_prefix(1);
  if (s.empty() || !std::islower(static_cast<unsigned char>(s.front())))
    return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

std::string quote_atom(std::string_view s) {
  if (is_plain_atom(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

int arith_priority(const Term& t) {
  if (t.is_var() || t.arity() != 2) return 0;
  if (t.name() == "+" || t.name() == "-") return 500;
  if (t.name() == "*") return 400;
  return 0;
}

void render(const Term& t, std::string& out);

void render_operand(const Term& t, int max_priority, std::string& out) {
  const int p = arith_priority(t);
  if (p > max_priority) {
    out += '(';
    render(t, out);
    out += ')';
  } else {
    render(t, out);
  }
}

void render(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += t.name();
    return;
  }
  if (t.name() == "[|]" && t.arity() == 2) {
    out += '[';
    const Term* cur = &t;
    bool first = true;
    while (!cur->is_var() && cur->name() == "[|]" && cur->arity() == 2) {
      if (!first) out += ", ";
      render(cur->args()[0], out);
      first = false;
      cur = &cur->args()[1];
    }
    if (!(cur->is_constant() && cur->name() == "[]")) {
      out += " | ";
      render(*cur, out);
    }
    out += ']';
    return;
  }
  if (const int p = arith_priority(t); p != 0) {
    // yfx: left operand may share the priority, right may not.
    render_operand(t.args()[0], p, out);
    out += ' ';
    out += t.name();
    out += ' ';
    render_operand(t.args()[1], p - 1, out);
    return;
  }
  out += quote_atom(t.name());
  if (t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ", ";
    render(t.args()[i], out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  render(t, out);
  return out;
}

Term substitute(const Term& t, const TermBinding& binding) {
  if (t.is_var()) {
    auto it = binding.find(t.name());
    return it == binding.end() ? t : it->second;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(substitute(a, binding));
  return Term::compound(t.name(), std::move(args));
}

// ---------------------------------------------------------------- Formula

Formula Formula::make(Node n) {
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::truth(SourcePos pos) {
  return make({FormulaKind::True, pos, {}, {}, {}, {}});
}

Formula Formula::falsity(SourcePos pos) {
  return make({FormulaKind::False, pos, {}, {}, {}, {}});
}

Formula Formula::eq(Term lhs, Term rhs, SourcePos pos) {
  return make({FormulaKind::Eq, pos, {}, {}, {std::move(lhs), std::move(rhs)},
               {}});
}

Formula Formula::atom(std::string predicate, std::vector<Term> args,
                      SourcePos pos) {
  return make({FormulaKind::Atom, pos, std::move(predicate), {},
               std::move(args), {}});
}

namespace {

std::vector<Formula> flatten(std::vector<Formula> parts, FormulaKind kind) {
  std::vector<Formula> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p.kind() == kind) {
      for (const auto& c : p.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(p));
    }
  }
  return flat;
}

}  // namespace

Formula Formula::conj(std::vector<Formula> parts, SourcePos pos) {
  auto flat = flatten(std::move(parts), FormulaKind::And);
  if (flat.empty()) return truth(pos);
  if (flat.size() == 1) return flat.front();
  return make({FormulaKind::And, pos, {}, {}, {}, std::move(flat)});
}

Formula Formula::disj(std::vector<Formula> parts, SourcePos pos) {
  auto flat = flatten(std::move(parts), FormulaKind::Or);
  if (flat.empty()) return falsity(pos);
  if (flat.size() == 1) return flat.front();
  return make({FormulaKind::Or, pos, {}, {}, {}, std::move(flat)});
}

Formula Formula::negation(Formula f, SourcePos pos) {
  return make({FormulaKind::Not, pos, {}, {}, {}, {std::move(f)}});
}

Formula Formula::implies(Formula lhs, Formula rhs, SourcePos pos) {
  return make(
      {FormulaKind::Implies, pos, {}, {}, {}, {std::move(lhs), std::move(rhs)}});
}

Formula Formula::iff(Formula lhs, Formula rhs, SourcePos pos) {
  return make(
      {FormulaKind::Iff, pos, {}, {}, {}, {std::move(lhs), std::move(rhs)}});
}

Formula Formula::exists(std::string var, std::string type, Formula body,
                        SourcePos pos) {
  return make({FormulaKind::Exists, pos, std::move(var), std::move(type), {},
               {std::move(body)}});
}

Formula Formula::forall(std::string var, std::string type, Formula body,
                        SourcePos pos) {
  return make({FormulaKind::Forall, pos, std::move(var), std::move(type), {},
               {std::move(body)}});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.type == y.type &&
         x.terms == y.terms && x.children == y.children;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  auto add_term = [&](const Term& t) {
    std::vector<std::string> vs;
    t.collect_variables(vs);
    for (auto& v : vs) {
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  };
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return;
    case FormulaKind::Eq:
    case FormulaKind::Atom:
      for (const auto& t : f.args()) add_term(t);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Not:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      for (const auto& c : f.children()) collect_free(c, bound, out);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::vector<std::string> free_variable_names(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::vector<TypedVar> free_variables(const Formula& f, const TypingEnv& env) {
  std::vector<TypedVar> out;
  for (auto& name : free_variable_names(f)) {
    auto it = env.find(name);
    if (it == env.end())
      throw Error("UnboundVariable", "variable " + name + " has no type");
    out.push_back({name, it->second});
  }
  return out;
}

namespace {

Formula subst(const Formula& f, const TermBinding& b) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
      return f;
    case FormulaKind::Eq:
      return Formula::eq(substitute(f.lhs(), b), substitute(f.rhs(), b),
                         f.pos());
    case FormulaKind::Atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(substitute(a, b));
      return Formula::atom(f.predicate(), std::move(args), f.pos());
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(subst(c, b));
      return f.kind() == FormulaKind::And ? Formula::conj(parts, f.pos())
                                          : Formula::disj(parts, f.pos());
    }
    case FormulaKind::Not:
      return Formula::negation(subst(f.child(0), b), f.pos());
    case FormulaKind::Implies:
      return Formula::implies(subst(f.child(0), b), subst(f.child(1), b),
                              f.pos());
    case FormulaKind::Iff:
      return Formula::iff(subst(f.child(0), b), subst(f.child(1), b), f.pos());
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      if (!b.contains(f.var())) {
        auto body = subst(f.body(), b);
        return f.kind() == FormulaKind::Exists
                   ? Formula::exists(f.var(), f.type(), body, f.pos())
                   : Formula::forall(f.var(), f.type(), body, f.pos());
      }
      TermBinding inner = b;
      inner.erase(f.var());
      auto body = subst(f.body(), inner);
      return f.kind() == FormulaKind::Exists
                 ? Formula::exists(f.var(), f.type(), body, f.pos())
                 : Formula::forall(f.var(), f.type(), body, f.pos());
    }
  }
  return f;
}

void collect_bound(const Formula& f, std::vector<std::string>& out) {
  if (f.is_quantifier() &&
      std::find(out.begin(), out.end(), f.var()) == out.end())
    out.push_back(f.var());
  for (const auto& c : f.children()) collect_bound(c, out);
}

}  // namespace

Formula substitute(const Formula& f, const TermBinding& binding) {
  for (const auto& [name, t] : binding)
    if (!t.is_ground())
      throw Error("NonGroundSubstitute",
                  "substitute for " + name + " is not ground: " + to_string(t));
  return subst(f, binding);
}

std::vector<std::string> bound_variable_names(const Formula& f) {
  std::vector<std::string> out;
  collect_bound(f, out);
  return out;
}

TypingEnv TypedLogicDescription::param_env() const {
  TypingEnv env;
  for (const auto& p : params) env.emplace(p.name, p.type);
  return env;
}

// ---------------------------------------------------------------- Literal

Literal Literal::unify(Term lhs, Term rhs) {
  Literal l;
  l.kind_ = Kind::Unify;
  l.terms_ = {std::move(lhs), std::move(rhs)};
  return l;
}

Literal Literal::call(std::string predicate, std::vector<Term> args) {
  Literal l;
  l.kind_ = Kind::Call;
  l.name_ = std::move(predicate);
  l.terms_ = std::move(args);
  return l;
}

Literal Literal::naf(Literal inner) {
  Literal l;
  l.kind_ = Kind::NafNot;
  l.inner_ = std::make_shared<const Literal>(std::move(inner));
  return l;
}

Literal Literal::type_check(std::string type, Term subject) {
  Literal l;
  l.kind_ = Kind::TypeCheck;
  l.name_ = std::move(type);
  l.terms_ = {std::move(subject)};
  return l;
}

std::vector<std::string> Literal::variables() const {
  if (kind_ == Kind::NafNot) return inner_->variables();
  std::vector<std::string> out;
  for (const auto& t : terms_) t.collect_variables(out);
  return out;
}

bool operator==(const Literal& a, const Literal& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Literal::Kind::NafNot) return *a.inner_ == *b.inner_;
  return a.name_ == b.name_ && a.terms_ == b.terms_;
}

std::string to_string(const Literal& lit) {
  switch (lit.kind()) {
    case Literal::Kind::Unify:
      return to_string(lit.lhs()) + " = " + to_string(lit.rhs());
    case Literal::Kind::Call:
      return to_string(Term::compound(lit.name(), lit.terms()));
    case Literal::Kind::TypeCheck:
      return to_string(Term::compound(lit.name(), lit.terms()));
    case Literal::Kind::NafNot:
      return "\\+ " + to_string(lit.inner());
  }
  return {};
}

Formula to_formula(const Literal& lit) {
  switch (lit.kind()) {
    case Literal::Kind::Unify:
      return Formula::eq(lit.lhs(), lit.rhs());
    case Literal::Kind::Call:
      return Formula::atom(lit.name(), lit.terms());
    case Literal::Kind::TypeCheck:
      return Formula::atom(lit.name(), lit.terms());
    case Literal::Kind::NafNot:
      return Formula::negation(to_formula(lit.inner()));
  }
  return Formula::truth();
}

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> out;
  for (const auto& t : head) t.collect_variables(out);
  for (const auto& l : body)
    for (auto& v : l.variables())
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

Formula program_definition(const Program& prog,
                           std::span<const std::string> params) {
  std::vector<Formula> disjuncts;
  for (const auto& c : prog.clauses) {
    if (c.head.size() != params.size())
      throw Error("ArityMismatch", "clause head arity differs from " +
                                       prog.predicate + "/" +
                                       std::to_string(params.size()));
    TermBinding rename;
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < params.size(); ++i) {
      const Term& h = c.head[i];
      if (h.is_var() && !rename.contains(h.name())) {
        rename.emplace(h.name(), Term::var(params[i]));
      } else {
        parts.push_back(Formula::eq(Term::var(params[i]), h));
      }
    }
    for (const auto& l : c.body) parts.push_back(to_formula(l));
    // Renaming head variables onto params is a plain variable-for-variable
    // substitution, so it bypasses the ground-only public substitute().
    Formula body = Formula::conj(std::move(parts));
    if (!rename.empty()) body = subst(body, rename);
    std::vector<std::string> locals;
    for (auto& v : free_variable_names(body))
      if (std::find(params.begin(), params.end(), v) == params.end())
        locals.push_back(v);
    for (auto it = locals.rbegin(); it != locals.rend(); ++it)
      body = Formula::exists(*it, std::string(kTermType), body);
    disjuncts.push_back(body);
  }
  return Formula::disj(std::move(disjuncts));
}

}  // namespace tldf
