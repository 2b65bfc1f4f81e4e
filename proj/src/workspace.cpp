#include "tldforge/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "tldforge/derive.hpp"

namespace tldf {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- manifest

Parsed<Manifest> parse_manifest(std::string_view text, std::string file) {
  Parsed<Manifest> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string kind, path, extra;
    if (!(words >> kind)) continue;
    if (!(words >> path) || (words >> extra)) {
      out.diagnostics.push_back({Severity::Error, "ManifestSyntax",
                                 "expected '<kind> <path>'", file, lineno, 1});
      continue;
    }
    if (kind == "out") {
      out.value.out_dir = path;
    } else if (kind == "types" || kind == "spec" || kind == "tld") {
      out.value.entries.push_back({kind, path, lineno});
    } else {
      out.diagnostics.push_back({Severity::Error, "ManifestSyntax",
                                 "unknown declaration '" + kind +
                                     "' (expected types, spec, tld or out)",
                                 file, lineno, 1});
    }
  }
  return out;
}

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Typed: return "typed";
    case Stage::Untyped: return "untyped";
    case Stage::Normalized: return "normalized";
    case Stage::Ordered: return "ordered";
    case Stage::Eliminated: return "eliminated";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : {Stage::Typed, Stage::Untyped, Stage::Normalized,
                  Stage::Ordered, Stage::Eliminated})
    if (name == stage_name(s)) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------- workspace

const TypedLogicDescription* Workspace::find_tld(std::string_view name) const {
  for (const auto& t : tlds)
    if (t.predicate == name) return &t;
  return nullptr;
}

const Spec* Workspace::find_spec(std::string_view name, std::size_t arity) const {
  return specs.find(name, arity);
}

const LogicDescription* Workspace::untyped_override(std::string_view name) const {
  auto it = overrides_.find(name);
  return it == overrides_.end() ? nullptr : &it->second;
}

Diagnostics Workspace::load_dump(std::string_view text, std::string file) {
  Diagnostics diags;
  Stage stage = Stage::Typed;
  constexpr std::string_view kMarker = "# stage: ";
  if (text.starts_with(kMarker)) {
    auto end = text.find('\n');
    auto name = text.substr(kMarker.size(), end - kMarker.size());
    auto s = parse_stage(name);
    if (!s) {
      diags.push_back({Severity::Error, "UnknownStage",
                       "unknown stage '" + std::string(name) + "'", file, 1, 1});
      return diags;
    }
    stage = *s;
  }
  auto parsed = parse_tlds(text, file);
  diags = std::move(parsed.diagnostics);
  if (has_errors(diags)) return diags;
  for (auto& t : parsed.value) {
    if (stage == Stage::Typed) {
      auto it = std::find_if(tlds.begin(), tlds.end(), [&](const auto& x) {
        return x.predicate == t.predicate;
      });
      if (it != tlds.end()) *it = t;
      else tlds.push_back(t);
      overrides_.erase(t.predicate);
    } else {
      LogicDescription ld{t.predicate, {}, t.definition};
      for (const auto& p : t.params) ld.params.push_back(p.name);
      overrides_.insert_or_assign(t.predicate, std::move(ld));
    }
  }
  return diags;
}

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void visit(const Formula& f, const std::function<void(const Formula&)>& fn) {
  fn(f);
  for (const auto& c : f.children()) visit(c, fn);
}

Diagnostic at(const TypedLogicDescription& tld, const std::string& file,
              Severity sev, std::string code, std::string msg, SourcePos pos = {}) {
  if (!pos.known()) pos = tld.pos;
  return {sev, std::move(code), std::move(msg), file, std::max(pos.line, 1),
          std::max(pos.column, 1)};
}

}  // namespace

LoadResult load_workspace(const fs::path& manifest) {
  LoadResult res;
  const std::string mfile = manifest.string();
  auto text = read_file(manifest);
  if (!text) {
    res.diagnostics.push_back({Severity::Error, "IoError",
                               "cannot read manifest " + mfile, mfile, 1, 1});
    return res;
  }
  auto parsed = parse_manifest(*text, mfile);
  res.diagnostics = parsed.diagnostics;
  const fs::path base = manifest.parent_path();

  Workspace ws;
  ws.manifest = manifest;
  ws.specs = SpecRegistry::with_builtins();
  ws.out_dir = parsed.value.out_dir.empty() ? fs::path()
                                            : base / parsed.value.out_dir;
  std::map<std::string, std::string> tld_files;
  std::vector<Spec> user;

  auto diag_append = [&](Diagnostics d) {
    res.diagnostics.insert(res.diagnostics.end(), d.begin(), d.end());
  };
  // Types first so the order of manifest lines does not matter.
  for (const char* kind : {"types", "spec", "tld"}) {
    for (const auto& e : parsed.value.entries) {
      if (e.kind != kind) continue;
      const fs::path p = base / e.path;
      auto content = read_file(p);
      if (!content) {
        res.diagnostics.push_back({Severity::Error, "IoError",
                                   "cannot read " + p.string(), mfile, e.line, 1});
        continue;
      }
      const std::string f = p.string();
      if (e.kind == "types") {
        diag_append(parse_types_into(ws.types, *content, f));
      } else if (e.kind == "spec") {
        auto s = parse_specs(*content, f);
        diag_append(std::move(s.diagnostics));
        for (auto& spec : s.value) user.push_back(std::move(spec));
      } else {
        auto t = parse_tlds(*content, f);
        diag_append(std::move(t.diagnostics));
        for (auto& tld : t.value) {
          if (ws.find_tld(tld.predicate)) {
            res.diagnostics.push_back(at(tld, f, Severity::Error, "DuplicatePredicate",
                                         "second description of " + tld.predicate));
            continue;
          }
          tld_files[tld.predicate] = f;
          ws.tlds.push_back(std::move(tld));
        }
      }
    }
  }

  diag_append(check_env(ws.types));
  for (auto& s : user) {
    diag_append(check_directionality(s));
    for (std::size_t i = 0; i < s.param_types.size(); ++i)
      if (!s.param_types[i].empty() && !ws.types.contains(s.param_types[i]))
        res.diagnostics.push_back({Severity::Error, "UnknownType",
                                   s.name + ": parameter " + s.params[i] +
                                       " has unknown type " + s.param_types[i],
                                   s.file, std::max(s.pos.line, 1),
                                   std::max(s.pos.column, 1)});
    ws.user_specs.push_back(s.name);
    ws.specs.add(s);
  }

  for (const auto& tld : ws.tlds) {
    const std::string& f = tld_files[tld.predicate];
    for (const auto& p : tld.params)
      if (!ws.types.contains(p.type))
        res.diagnostics.push_back(at(tld, f, Severity::Error, "UnknownType",
                                     tld.predicate + ": parameter " + p.name +
                                         " has unknown type " + p.type));
    visit(tld.definition, [&](const Formula& g) {
      if (g.is_quantifier() && !ws.types.contains(g.type()))
        res.diagnostics.push_back(at(tld, f, Severity::Error, "UnknownType",
                                     "quantifier over unknown type " + g.type(),
                                     g.pos()));
      if (g.kind() != FormulaKind::Atom) return;
      const std::string& name = g.predicate();
      const std::size_t n = g.args().size();
      const bool known = (n == 1 && ws.types.contains(name)) ||
                         ws.specs.find(name, n) ||
                         std::any_of(ws.tlds.begin(), ws.tlds.end(), [&](const auto& t) {
                           return t.predicate == name && t.arity() == n;
                         });
      if (!known)
        res.diagnostics.push_back(at(tld, f, Severity::Error, "UnknownPredicate",
                                     tld.predicate + " calls " + name + "/" +
                                         std::to_string(n) +
                                         ", which has no description or specification",
                                     g.pos()));
    });
    if (const Spec* s = ws.specs.find(tld.predicate, tld.arity())) {
      for (std::size_t i = 0; i < tld.arity(); ++i) {
        const std::string& st = s->param_types[i];
        bool same = st == tld.params[i].type;
        if (!same) {
          try {
            same = ws.types.equivalent(st, tld.params[i].type);
          } catch (const Error&) {
          }
        }
        if (!same)
          res.diagnostics.push_back(at(tld, f, Severity::Error, "TypeMismatch",
                                       tld.predicate + ": parameter " +
                                           tld.params[i].name + " is " +
                                           tld.params[i].type +
                                           " but the specification says " + st));
      }
    }
  }

  if (!has_errors(res.diagnostics)) res.workspace = std::move(ws);
  return res;
}

// ---------------------------------------------------------------- pipeline

LogicDescription untyped_description(const Workspace& ws,
                                     const TypedLogicDescription& tld) {
  if (const auto* o = ws.untyped_override(tld.predicate)) return *o;
  LogicDescription ld = transform_tld(tld);
  ld.definition = simplify_checks(ld.definition);
  return ld;
}

namespace {

std::string dump(Stage s, const std::string& body) {
  return std::string("# stage: ") + stage_name(s) + "\n" + body + "\n";
}

std::string program_dump(const Program& prog, const std::vector<std::string>& params) {
  return print_ld(program_as_ld(prog, params));
}

std::vector<std::string> param_names(const TypedLogicDescription& tld) {
  std::vector<std::string> out;
  for (const auto& p : tld.params) out.push_back(p.name);
  return out;
}

std::string clause_line(const Clause& c) {
  std::string out;
  for (std::size_t i = 0; i < c.body.size(); ++i)
    out += (i ? ", " : "") + to_string(c.body[i]);
  return out.empty() ? "true" : out;
}

struct Failure {
  std::string stage;
  std::string code;
  std::string message;
};

// Renames recursive calls after the callee directionality they match, for
// split procedures.
Program split_version(const Program& ordered, std::size_t dir, const Spec& spec,
                      const SpecRegistry& specs) {
  Program p = ordered;
  const std::string self = spec.name;
  p.predicate = self + "__d" + std::to_string(dir + 1);
  for (auto& c : p.clauses) {
    c.predicate = p.predicate;
    AbstractState s = initial_state(c, spec.dirs[dir]);
    for (auto& lit : c.body) {
      StepResult r = abstract_step(s, lit, specs);
      if (lit.kind() == Literal::Kind::Call && lit.name() == self &&
          lit.terms().size() == spec.arity() && r.callee_dir)
        lit = Literal::call(self + "__d" + std::to_string(*r.callee_dir + 1),
                            lit.terms());
      if (r.callable) s = std::move(r.state);
    }
  }
  return p;
}

struct Outcome {
  std::string text;
  std::string report;
  Diagnostics diags;
  std::optional<Failure> failure;
  PredicateReport details;
};

Diagnostic located(Severity sev, std::string code, std::string msg, const std::string& file,
                   SourcePos pos, const Workspace& ws) {
  if (file.empty()) return {sev, std::move(code), std::move(msg), ws.manifest.string(), 1, 1};
  return {sev, std::move(code), std::move(msg), file, std::max(pos.line, 1),
          std::max(pos.column, 1)};
}

Outcome run_one(const Workspace& ws, const TypedLogicDescription& tld,
                const PipelineOptions& opts) {
  Outcome o;
  o.details.predicate = tld.predicate;
  const std::string id = tld.predicate + "/" + std::to_string(tld.arity());
  auto fail = [&](std::string stage, std::string code, std::string msg) {
    o.failure = Failure{std::move(stage), std::move(code), std::move(msg)};
    return o;
  };
  auto stop_at = [&](Stage s) { return opts.emit_stage && *opts.emit_stage == s; };

  if (stop_at(Stage::Typed)) {
    o.text = dump(Stage::Typed, print_tld(tld));
    return o;
  }
  const Spec* spec = ws.find_spec(tld.predicate, tld.arity());

  const LogicDescription ld = untyped_description(ws, tld);
  if (stop_at(Stage::Untyped)) {
    o.text = dump(Stage::Untyped, print_ld(ld));
    return o;
  }

  Program prog;
  try {
    prog = derive_clauses(ld, ws.types);
  } catch (const Error& e) {
    return fail("derive", e.code(), e.what());
  }
  const auto params = param_names(tld);
  if (stop_at(Stage::Normalized)) {
    o.text = dump(Stage::Normalized, program_dump(prog, params));
    return o;
  }
  if (!spec) return fail("analyze", "MissingSpec", "no specification for " + id);
  if (spec->dirs.empty())
    return fail("analyze", "MissingDirectionality", id + " declares no directionality");
  if (opts.dir_index >= spec->dirs.size())
    return fail("analyze", "BadDirIndex",
                id + " has " + std::to_string(spec->dirs.size()) +
                    " directionalities; index " + std::to_string(opts.dir_index + 1) +
                    " is out of range");

  prog = flatten_arithmetic(prog);

  // Per-directionality orders.
  std::vector<Program> ordered(spec->dirs.size(), prog);
  try {
    for (std::size_t d = 0; d < spec->dirs.size(); ++d) {
      for (std::size_t ci = 0; ci < prog.clauses.size(); ++ci) {
        ReorderResult r = reorder(prog.clauses[ci], spec->dirs[d], ws.specs);
        if (!r.ok) {
          if (opts.target == Target::Mercury) {
            o.diags.push_back(located(Severity::Warning, "ReorderFailure",
                                      id + " clause " + std::to_string(ci + 1) + ": " +
                                          r.reason + "; Mercury will schedule goals itself",
                                      spec->file, spec->dirs[d].pos, ws));
            ordered[d].clauses[ci] = prog.clauses[ci];
            continue;
          }
          std::string msg = id + " clause " + std::to_string(ci + 1) + ": " + r.reason +
                            "\n  suggestion: either " + r.suggestions[0] +
                            "\n  suggestion: or " + r.suggestions[1];
          return fail("reorder", "ReorderFailure", msg);
        }
        ordered[d].clauses[ci] = r.clause;
      }
      o.details.orders.push_back(ordered[d].clauses);
    }
  } catch (const Error& e) {
    return fail("reorder", e.code(), e.what());
  }

  const std::size_t primary = opts.dir_index;
  std::vector<Program> versions;
  std::vector<std::size_t> version_dirs;
  std::vector<std::string> conflicts;
  for (std::size_t d = 0; d < spec->dirs.size(); ++d) {
    if (d == primary) continue;
    for (std::size_t ci = 0; ci < prog.clauses.size(); ++ci)
      if (auto why = check_order(ordered[primary].clauses[ci], spec->dirs[d], ws.specs))
        conflicts.push_back("clause " + std::to_string(ci + 1) + " under " +
                            spec->dirs[d].to_string() + ": " + *why);
  }
  const bool split = !conflicts.empty() && opts.split && opts.target == Target::Prolog;
  if (!conflicts.empty() && opts.target == Target::Prolog && !split) {
    std::string msg = id + ": the directionalities demand incompatible literal orders";
    for (const auto& c : conflicts) msg += "\n  " + c;
    msg += "\n  suggestion: either " + std::string(kSuggestSplit) +
           " (--split)\n  suggestion: or " + std::string(kSuggestRespec);
    return fail("reorder", "MultipleOrders", msg);
  }
  // Split versions call each other, so each gets a one-directionality spec.
  SpecRegistry specs = ws.specs;
  std::vector<Spec> version_specs;
  if (split) {
    for (std::size_t d = 0; d < spec->dirs.size(); ++d) {
      versions.push_back(split_version(ordered[d], d, *spec, ws.specs));
      version_dirs.push_back(d);
      Spec vs = *spec;
      vs.name = versions.back().predicate;
      vs.dirs = {spec->dirs[d]};
      specs.add(vs);
      version_specs.push_back(std::move(vs));
    }
  } else {
    versions.push_back(ordered[primary]);
    version_dirs.push_back(primary);
  }

  if (stop_at(Stage::Ordered)) {
    o.text = dump(Stage::Ordered, program_dump(ordered[primary], params));
    return o;
  }

  for (std::size_t v = 0; v < versions.size(); ++v)
    versions[v] = eliminate_checks(versions[v], split ? version_specs[v] : *spec, specs,
                                   ws.types, opts.level, &o.details.removed);
  if (stop_at(Stage::Eliminated)) {
    o.text = dump(Stage::Eliminated, program_dump(versions.front(), params));
    return o;
  }

  // Determinism of the emitted version(s).
  std::vector<Multiplicity> det;
  for (std::size_t d = 0; d < spec->dirs.size(); ++d) {
    const std::size_t v = split ? d : 0;
    DeterminismResult r =
        split ? analyze_determinism(versions[v], 0, version_specs[v], specs, ws.types)
              : analyze_determinism(versions[v], d, *spec, specs, ws.types);
    if (!r.within_declared)
      o.diags.push_back(located(Severity::Warning, "Determinism", r.message, spec->file,
                                spec->dirs[d].pos, ws));
    det.push_back(r.within_declared ? spec->dirs[d].mult : r.computed);
    o.details.determinism.push_back(std::move(r));
  }
  o.details.program = versions.front();

  // Report.
  std::string& rep = o.report;
  rep += "predicate " + id + "\n";
  for (std::size_t d = 0; d < spec->dirs.size(); ++d) {
    rep += "  dir " + std::to_string(d + 1) + " " + spec->dirs[d].to_string() +
           (d == primary && !split ? "  [emitted order]" : "") + "\n";
    for (std::size_t ci = 0; ci < o.details.orders[d].size(); ++ci)
      rep += "    clause " + std::to_string(ci + 1) + ": " +
             clause_line(o.details.orders[d][ci]) + "\n";
  }
  rep += "  removed checks:";
  if (o.details.removed.empty()) rep += " none";
  rep += "\n";
  for (const auto& r : o.details.removed)
    rep += "    clause " + std::to_string(r.clause + 1) + ": " + to_string(r.check) +
           " (" + r.reason + ")\n";
  rep += "  determinism:\n";
  for (std::size_t d = 0; d < o.details.determinism.size(); ++d) {
    const auto& r = o.details.determinism[d];
    rep += "    dir " + std::to_string(d + 1) + ": computed " + r.computed.to_string() +
           (r.within_declared ? ", within declared " : ", NOT within declared ") +
           spec->dirs[d].mult.to_string() + " -> " +
           mult_to_mercury_determinism(det[d]).name +
           (r.used_switch ? " (complete switch)" : r.exclusive ? " (exclusive switch)" : "") +
           "\n";
  }

  // Emission.
  EmitOptions eo;
  eo.target = opts.target;
  eo.cut_introduction = opts.cuts;
  eo.comment_header = opts.comments;
  if (opts.target == Target::Prolog) {
    for (std::size_t v = 0; v < versions.size(); ++v) {
      if (v) o.text += "\n";
      std::optional<Switch> sw;
      if (opts.cuts)
        sw = detect_switch(versions[v], *spec, ws.types,
                           split ? std::optional(version_dirs[v]) : std::nullopt);
      o.text += emit_prolog(versions[v], *spec, eo, sw);
    }
  } else {
    std::vector<std::string> warnings;
    o.text = emit_mercury(tld, *spec, ws.types, det, eo, &warnings);
    for (auto& w : warnings)
      o.diags.push_back(located(Severity::Warning, "Widened", w, spec->file, spec->pos, ws));
  }
  return o;
}

}  // namespace

PipelineResult run_pipeline(const Workspace& ws,
                            const std::optional<std::string>& predicate,
                            const PipelineOptions& opts) {
  PipelineResult res;
  std::vector<const TypedLogicDescription*> todo;
  if (predicate) {
    const auto* t = ws.find_tld(*predicate);
    if (!t) {
      res.diagnostics.push_back({Severity::Error, "UnknownPredicate",
                                 "no description for " + *predicate,
                                 ws.manifest.string(), 1, 1});
      return res;
    }
    todo.push_back(t);
  } else {
    for (const auto& t : ws.tlds) todo.push_back(&t);
  }
  res.ok = true;
  for (const auto* t : todo) {
    Outcome o = run_one(ws, *t, opts);
    res.diagnostics.insert(res.diagnostics.end(), o.diags.begin(), o.diags.end());
    if (o.failure) {
      res.ok = false;
      res.diagnostics.push_back(located(Severity::Error, o.failure->code,
                                        "[" + o.failure->stage + "] " + o.failure->message,
                                        t->file, t->pos, ws));
      continue;
    }
    if (!res.text.empty() && !o.text.empty()) res.text += "\n";
    res.text += o.text;
    res.report += o.report;
    res.predicates.push_back(std::move(o.details));
  }
  return res;
}

// ---------------------------------------------------------------- skeleton

std::string suggest_skeleton(const Workspace& ws, const std::string& spec_name,
                             const std::string& induction_param) {
  const Spec* spec = nullptr;
  for (const auto& s : ws.specs.all())
    if (s.name == spec_name) spec = &s;
  if (!spec) throw Error("UnknownPredicate", "no specification for " + spec_name);
  auto it = std::find(spec->params.begin(), spec->params.end(), induction_param);
  if (it == spec->params.end())
    throw Error("UnknownParameter",
                spec_name + " has no parameter " + induction_param);
  const std::string& type =
      spec->param_types[static_cast<std::size_t>(it - spec->params.begin())];
  auto forms = structural_forms(ws.types, type, induction_param, spec->params);

  std::vector<TypedVar> params;
  for (std::size_t i = 0; i < spec->arity(); ++i)
    params.push_back({spec->params[i], spec->param_types[i]});
  TypedLogicDescription head{spec_name, params, Formula::truth(), {}, {}};
  std::string header = print_tld(head);
  header = header.substr(0, header.find("<=>") + 3);

  std::string out = "# skeleton for " + spec_name + ", structural induction on " +
                    induction_param + " : " + type + "\n";
  out += "# replace each #hole with the structural case's formula\n";
  out += header + "\n";
  for (std::size_t i = 0; i < forms.size(); ++i) {
    out += (i == 0 ? "      " : "   \\/ ") + print_formula(forms[i]) + " /\\ #hole\n";
  }
  if (forms.empty()) out += "      false\n";
  return out + "   .\n";
}

// ---------------------------------------------------------------- oracle

namespace {

void reachable(const Workspace& ws, const TypedLogicDescription& root,
               std::set<std::string>& preds, std::vector<std::string>& types) {
  if (!preds.insert(root.predicate).second) return;
  for (const auto& p : root.params) types.push_back(p.type);
  visit(root.definition, [&](const Formula& g) {
    if (g.is_quantifier()) types.push_back(g.type());
    if (g.kind() != FormulaKind::Atom) return;
    if (g.args().size() == 1 && ws.types.contains(g.predicate()))
      types.push_back(g.predicate());
    if (const auto* t = ws.find_tld(g.predicate()))
      reachable(ws, *t, preds, types);
  });
}

}  // namespace

EvalContext oracle_context(const Workspace& ws, const std::string& predicate,
                           const OracleOptions& opts) {
  const auto* tld = ws.find_tld(predicate);
  if (!tld) throw Error("UnknownPredicate", "no description for " + predicate);
  std::set<std::string> preds;
  std::vector<std::string> roots;
  reachable(ws, *tld, preds, roots);
  EvalContext ctx(ws.types.restricted_to(roots), opts.depth, opts.unfold);
  for (const auto& t : ws.tlds) {
    if (!preds.contains(t.predicate)) continue;
    std::vector<Formula> typed;
    for (const auto& p : t.params)
      if (p.type != kTermType) typed.push_back(Formula::atom(p.type, {Term::var(p.name)}));
    typed.push_back(t.definition);
    PredicateDef tdef{param_names(t), Formula::conj(typed)};
    ctx.define(t.predicate, tdef, Reading::Typed);
    LogicDescription ld;
    if (opts.variant == TransformVariant::Faithful) {
      ld = untyped_description(ws, t);
    } else {
      ld = transform_tld(t, opts.variant);
      ld.definition = simplify_checks(ld.definition);
    }
    ctx.define(t.predicate, PredicateDef{ld.params, ld.definition}, Reading::Untyped);
  }
  return ctx;
}

EquivalenceReport oracle_equiv(const Workspace& ws, const std::string& predicate,
                               const OracleOptions& opts) {
  EvalContext ctx = oracle_context(ws, predicate, opts);
  const auto* tld = ws.find_tld(predicate);
  // The definition body on its own, parameters as its typed free
  // variables; then the whole description with its parameter checks.
  const Formula body = transform_formula(tld->param_env(), tld->definition, opts.variant);
  EquivalenceReport rep = check_equivalence(ctx, tld->definition, body, tld->params);
  if (!rep.reason.empty()) rep.reason = "definition body: " + rep.reason;
  const auto* untyped = ctx.find(predicate, tld->arity(), Reading::Untyped);
  EquivalenceReport whole =
      check_equivalence(ctx, tld->definition, untyped->definition, tld->params);
  rep.checked += whole.checked;
  rep.violated += whole.violated;
  rep.inconclusive += whole.inconclusive;
  rep.vacuous += whole.vacuous;
  if (!rep.counterexample && whole.counterexample) {
    rep.counterexample = std::move(whole.counterexample);
    rep.reason = "description: " + whole.reason;
  }
  return rep;
}

}  // namespace tldf
