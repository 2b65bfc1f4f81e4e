#include "tldforge/typesys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace tldf {

namespace {

TypeDef builtin(std::string name, BuiltinKind kind) {
  TypeDef d;
  d.name = std::move(name);
  d.form = TypeDef::Form::Builtin;
  d.builtin = kind;
  d.predefined = true;
  return d;
}

TypeDef builtin_list() {
  TypeDef d;
  d.name = "list";
  d.form = TypeDef::Form::Cases;
  d.cases = {{"[]", {}}, {"[|]", {std::string(kTermType), "list"}}};
  d.predefined = true;
  return d;
}

void push_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

std::vector<std::string> TypeDef::references() const {
  std::vector<std::string> out;
  switch (form) {
    case Form::Alias:
      out.push_back(alias);
      break;
    case Form::Cases:
      for (const auto& c : cases)
        for (const auto& comp : c.components) push_unique(out, comp);
      break;
    case Form::Builtin:
      break;
  }
  return out;
}

TypeEnv::TypeEnv() {
  for (auto d : {builtin(std::string(kTermType), BuiltinKind::Term),
                 builtin("integer", BuiltinKind::Integer),
                 builtin("float", BuiltinKind::Float),
                 builtin("atom", BuiltinKind::Atom), builtin_list()})
    defs_.emplace(d.name, d);
}

bool TypeEnv::is_reserved(std::string_view name) {
  return name == kTermType || name == "integer" || name == "float" ||
         name == "atom";
}

void TypeEnv::define(TypeDef def) {
  if (is_reserved(def.name))
    throw Error("ReservedType", "type " + def.name + " is built in");
  auto it = defs_.find(def.name);
  if (it != defs_.end() && !it->second.predefined)
    throw Error("DuplicateType", "type " + def.name + " is already defined");
  defs_.insert_or_assign(def.name, std::move(def));
}

bool TypeEnv::contains(std::string_view name) const {
  return defs_.find(name) != defs_.end();
}

const TypeDef* TypeEnv::find(std::string_view name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

const TypeDef& TypeEnv::at(std::string_view name) const {
  const TypeDef* d = find(name);
  if (!d) throw Error("UnknownType", "unknown type " + std::string(name));
  return *d;
}

const TypeDef& TypeEnv::resolve(std::string_view name) const {
  const TypeDef* d = &at(name);
  std::size_t hops = 0;
  while (d->form == TypeDef::Form::Alias) {
    if (++hops > defs_.size())
      throw Error("MutualRecursion",
                  "alias cycle through type " + std::string(name));
    d = &at(d->alias);
  }
  return *d;
}

bool TypeEnv::equivalent(std::string_view a, std::string_view b) const {
  if (a == b) return true;
  if (!contains(a) || !contains(b)) return false;
  return &resolve(a) == &resolve(b);
}

std::vector<std::pair<std::string, std::size_t>> TypeEnv::signature() const {
  std::vector<std::pair<std::string, std::size_t>> sig;
  for (const auto& [name, def] : defs_) {
    if (def.form != TypeDef::Form::Cases) continue;
    for (const auto& c : def.cases) {
      std::pair<std::string, std::size_t> key{c.functor, c.arity()};
      if (std::find(sig.begin(), sig.end(), key) == sig.end())
        sig.push_back(std::move(key));
    }
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool TypeEnv::uses_float() const {
  return std::any_of(defs_.begin(), defs_.end(), [](const auto& kv) {
    const auto refs = kv.second.references();
    return std::find(refs.begin(), refs.end(), "float") != refs.end();
  });
}

TypeEnv TypeEnv::restricted_to(const std::vector<std::string>& roots) const {
  TypeEnv out;
  out.defs_.erase("list");
  std::deque<std::string> work(roots.begin(), roots.end());
  std::set<std::string> seen;
  while (!work.empty()) {
    std::string name = work.front();
    work.pop_front();
    if (!seen.insert(name).second) continue;
    const TypeDef* d = find(name);
    if (!d) continue;
    out.defs_.insert_or_assign(name, *d);
    for (auto& r : d->references()) work.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------- check_env

Diagnostics check_env(const TypeEnv& env) {
  Diagnostics diags;
  auto at = [](const TypeDef& d, Severity sev, std::string code,
               std::string msg) {
    Diagnostic diag;
    diag.severity = sev;
    diag.code = std::move(code);
    diag.message = std::move(msg);
    diag.file = d.file;
    diag.line = std::max(1, d.pos.line);
    diag.column = std::max(1, d.pos.column);
    return diag;
  };

  const auto& defs = env.defs();
  for (const auto& [name, def] : defs) {
    for (const auto& r : def.references())
      if (!env.contains(r))
        diags.push_back(at(def, Severity::Error, "UnknownType",
                           "type " + name + " refers to unknown type " + r));
    if (def.form == TypeDef::Form::Cases) {
      for (std::size_t i = 0; i < def.cases.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (def.cases[i].functor == def.cases[j].functor &&
              def.cases[i].arity() == def.cases[j].arity()) {
            diags.push_back(at(def, Severity::Warning, "DuplicateCase",
                               "type " + name + " repeats constructor " +
                                   def.cases[i].functor + "/" +
                                   std::to_string(def.cases[i].arity()) +
                                   "; the first case is used"));
            break;
          }
    }
    if (def.form == TypeDef::Form::Alias && def.alias == name)
      diags.push_back(at(def, Severity::Error, "MutualRecursion",
                         "type " + name + " is an alias of itself"));
  }

  // Reachability over the dependency graph; any cycle of length >= 2 is a
  // mutual recursion.
  std::map<std::string, std::set<std::string>> reach;
  for (const auto& [name, def] : defs) {
    std::set<std::string>& r = reach[name];
    std::deque<std::string> work;
    for (auto& x : def.references()) work.push_back(x);
    while (!work.empty()) {
      auto n = work.front();
      work.pop_front();
      if (!r.insert(n).second) continue;
      if (const TypeDef* d = env.find(n))
        for (auto& x : d->references()) work.push_back(x);
    }
  }
  std::set<std::string> reported;
  for (const auto& [name, def] : defs) {
    if (reported.contains(name)) continue;
    std::vector<std::string> group;
    for (const auto& other : reach[name])
      if (other != name && reach[other].contains(name)) group.push_back(other);
    if (group.empty()) continue;
    group.insert(group.begin(), name);
    std::string members;
    for (const auto& g : group) {
      reported.insert(g);
      if (!members.empty()) members += ", ";
      members += g;
    }
    diags.push_back(at(def, Severity::Error, "MutualRecursion",
                       "types cannot be mutually recursive: " + members));
  }

  // Inhabitation fixpoint.
  std::set<std::string> inhabited;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, def] : defs) {
      if (inhabited.contains(name)) continue;
      bool ok = false;
      switch (def.form) {
        case TypeDef::Form::Builtin:
          ok = true;
          break;
        case TypeDef::Form::Alias:
          ok = inhabited.contains(def.alias);
          break;
        case TypeDef::Form::Cases:
          ok = std::any_of(def.cases.begin(), def.cases.end(),
                           [&](const TypeCase& c) {
                             return std::all_of(
                                 c.components.begin(), c.components.end(),
                                 [&](const std::string& t) {
                                   return inhabited.contains(t);
                                 });
                           });
          break;
      }
      if (ok) {
        inhabited.insert(name);
        changed = true;
      }
    }
  }
  for (const auto& [name, def] : defs)
    if (def.form == TypeDef::Form::Cases && !inhabited.contains(name))
      diags.push_back(at(def, Severity::Warning, "EmptyType",
                         "type " + name + " has no finite member"));
  return diags;
}

// ---------------------------------------------------------------- membership

bool is_member(const TypeEnv& env, std::string_view type, const Term& t) {
  if (!t.is_ground())
    throw Error("NonGroundTerm", "membership of non-ground " + to_string(t));
  const TypeDef& def = env.resolve(type);
  switch (def.form) {
    case TypeDef::Form::Builtin:
      switch (def.builtin) {
        case BuiltinKind::Term: return true;
        case BuiltinKind::Integer: return t.is_integer();
        case BuiltinKind::Float:
          return t.is_constant() && is_float_literal(t.name());
        case BuiltinKind::Atom:
          return t.is_constant() && !is_integer_literal(t.name()) &&
                 !is_float_literal(t.name());
      }
      return false;
    case TypeDef::Form::Cases:
      for (const auto& c : def.cases) {
        if (c.functor != t.name() || c.arity() != t.arity()) continue;
        bool ok = true;
        for (std::size_t i = 0; ok && i < c.arity(); ++i)
          ok = is_member(env, c.components[i], t.args()[i]);
        if (ok) return true;
      }
      return false;
    case TypeDef::Form::Alias:
      break;  // resolve() never yields an alias
  }
  return false;
}

const TypeCase* find_case(const TypeEnv& env, std::string_view type,
                          std::string_view functor, std::size_t arity) {
  const TypeDef& def = env.resolve(type);
  if (def.form != TypeDef::Form::Cases) return nullptr;
  for (const auto& c : def.cases)
    if (c.functor == functor && c.arity() == arity) return &c;
  return nullptr;
}

// ---------------------------------------------------------------- enumeration

namespace {

void product(const std::string& functor,
             const std::vector<const std::vector<Term>*>& pools,
             std::vector<Term>& out) {
  if (std::any_of(pools.begin(), pools.end(),
                  [](const auto* p) { return p->empty(); }))
    return;
  std::vector<std::size_t> idx(pools.size(), 0);
  while (true) {
    std::vector<Term> args;
    args.reserve(pools.size());
    for (std::size_t i = 0; i < pools.size(); ++i)
      args.push_back((*pools[i])[idx[i]]);
    out.push_back(Term::compound(functor, std::move(args)));
    std::size_t k = pools.size();
    while (k > 0) {
      --k;
      if (++idx[k] < pools[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (pools.empty()) return;
  }
}

void sort_unique(std::vector<Term>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Term> integer_sample() {
  std::vector<Term> out;
  for (long long i = kIntegerSampleMin; i <= kIntegerSampleMax; ++i)
    out.push_back(Term::integer(i));
  return out;
}

std::vector<Term> float_sample() {
  return {Term::atom("-0.5"), Term::atom("0.5")};
}

}  // namespace

const std::vector<Term>& Enumerator::term_universe(int depth) {
  static const std::vector<Term> kEmpty;
  if (depth < 1) return kEmpty;
  if (auto it = universe_.find(depth); it != universe_.end()) return it->second;
  std::vector<Term> out = integer_sample();
  if (env_->uses_float())
    for (auto& f : float_sample()) out.push_back(f);
  const auto sig = env_->signature();
  for (const auto& [functor, arity] : sig)
    if (arity == 0) out.push_back(Term::atom(functor));
  if (depth > 1) {
    const std::vector<Term>& sub = term_universe(depth - 1);
    for (const auto& [functor, arity] : sig) {
      if (arity == 0) continue;
      std::vector<const std::vector<Term>*> pools(arity, &sub);
      product(functor, pools, out);
    }
  }
  sort_unique(out);
  return universe_.emplace(depth, std::move(out)).first->second;
}

const std::vector<Term>& Enumerator::members(std::string_view type,
                                             int depth) {
  static const std::vector<Term> kEmpty;
  if (depth < 1) return kEmpty;
  const TypeDef& def = env_->resolve(type);
  std::pair<std::string, int> key{def.name, depth};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  std::vector<Term> out;
  switch (def.form) {
    case TypeDef::Form::Builtin:
      switch (def.builtin) {
        case BuiltinKind::Term:
          out = term_universe(depth);
          break;
        case BuiltinKind::Integer:
          out = integer_sample();
          break;
        case BuiltinKind::Float:
          if (env_->uses_float()) out = float_sample();
          break;
        case BuiltinKind::Atom:
          for (const auto& [functor, arity] : env_->signature())
            if (arity == 0 && !is_integer_literal(functor) &&
                !is_float_literal(functor))
              out.push_back(Term::atom(functor));
          break;
      }
      break;
    case TypeDef::Form::Cases:
      for (const auto& c : def.cases) {
        if (c.components.empty()) {
          out.push_back(Term::atom(c.functor));
          continue;
        }
        if (depth < 2) continue;
        std::vector<const std::vector<Term>*> pools;
        for (const auto& comp : c.components)
          pools.push_back(&members(comp, depth - 1));
        product(c.functor, pools, out);
      }
      break;
    case TypeDef::Form::Alias:
      break;
  }
  sort_unique(out);
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

bool Enumerator::contains(std::string_view type, int depth, const Term& t) {
  if (depth < 1) return false;
  const TypeDef& def = env_->resolve(type);
  std::pair<std::string, int> key{def.name, depth};
  auto it = sets_.find(key);
  if (it == sets_.end()) {
    const auto& m = members(type, depth);
    it = sets_.emplace(key, std::set<Term>(m.begin(), m.end())).first;
  }
  return it->second.contains(t);
}

std::vector<Term> enumerate(const TypeEnv& env, std::string_view type,
                            int depth) {
  Enumerator e(env);
  return e.members(type, depth);
}

// ---------------------------------------------------------------- skeletons

namespace {

std::string fresh_name(std::string base, std::vector<std::string>& taken) {
  if (std::find(taken.begin(), taken.end(), base) == taken.end()) {
    taken.push_back(base);
    return base;
  }
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (std::find(taken.begin(), taken.end(), candidate) == taken.end()) {
      taken.push_back(candidate);
      return candidate;
    }
  }
}

std::string base_name_for(const std::string& type) {
  for (char c : type)
    if (std::isalpha(static_cast<unsigned char>(c)))
      return std::string(1, static_cast<char>(
                                std::toupper(static_cast<unsigned char>(c))));
  return "X";
}

}  // namespace

std::vector<Formula> structural_forms(const TypeEnv& env,
                                      std::string_view type,
                                      std::string_view var,
                                      const std::vector<std::string>& avoid) {
  const TypeDef& def = env.resolve(type);
  if (def.form != TypeDef::Form::Cases)
    throw Error("NotStructural",
                "type " + std::string(type) + " has no structural cases");
  std::vector<Formula> forms;
  for (const auto& c : def.cases) {
    std::vector<std::string> taken = avoid;
    taken.emplace_back(var);
    std::vector<std::string> names;
    const bool list_cell = c.functor == "[|]" && c.arity() == 2;
    for (std::size_t i = 0; i < c.arity(); ++i) {
      std::string base =
          list_cell ? (i == 0 ? "H" : "T") : base_name_for(c.components[i]);
      names.push_back(fresh_name(base, taken));
    }
    std::vector<Term> args;
    for (const auto& n : names) args.push_back(Term::var(n));
    Formula f = Formula::eq(Term::var(std::string(var)),
                            Term::compound(c.functor, std::move(args)));
    for (std::size_t i = names.size(); i-- > 0;)
      f = Formula::exists(names[i], c.components[i], f);
    forms.push_back(f);
  }
  return forms;
}

}  // namespace tldf
