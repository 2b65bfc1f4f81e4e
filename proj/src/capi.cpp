#include "tldforge/tldforge.h"

#include <new>
#include <string>

#include "tldforge/workspace.hpp"

struct tldf_workspace {
  tldf::Workspace ws;
  tldf::Diagnostics load_diagnostics;
};

struct tldf_result {
  std::string output;
  std::string report;
  std::string diagnostics;
  int errors = 0;
};

namespace {

tldf_result* make_result(const tldf::Diagnostics& diags = {}) {
  auto* r = new (std::nothrow) tldf_result;
  if (!r) return nullptr;
  r->diagnostics = tldf::format_all(diags);
  for (const auto& d : diags)
    if (d.severity == tldf::Severity::Error) ++r->errors;
  return r;
}

tldf_result* error_result(const std::string& code, const std::string& message) {
  return make_result({{tldf::Severity::Error, code, message, "<api>", 1, 1}});
}

void clear(tldf_result** out) {
  if (out) *out = nullptr;
}

template <typename F>
tldf_status guarded(tldf_result** out, F&& body) {
  if (!out) return TLDF_ERR_USAGE;
  *out = nullptr;
  try {
    return body();
  } catch (const tldf::Error& e) {
    *out = error_result(e.code(), e.what());
    const std::string& c = e.code();
    if (c == "UnknownPredicate" || c == "UnknownParameter") return TLDF_ERR_NOT_FOUND;
    return TLDF_ERR_DIAGNOSTICS;
  } catch (const std::exception& e) {
    *out = error_result("Internal", e.what());
    return TLDF_ERR_INTERNAL;
  } catch (...) {
    *out = error_result("Internal", "unknown failure");
    return TLDF_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

void tldf_options_init(tldf_options* opts) {
  if (!opts) return;
  *opts = tldf_options{TLDF_TARGET_PROLOG, TLDF_LEVEL_PAPER_COMPAT, TLDF_STAGE_CODE, 0, 0, 0, 0};
}

const char* tldf_version(void) { return "0.1.0"; }

const char* tldf_status_string(tldf_status status) {
  switch (status) {
    case TLDF_OK: return "ok";
    case TLDF_ERR_DIAGNOSTICS: return "input has errors";
    case TLDF_ERR_USAGE: return "usage error";
    case TLDF_ERR_NOT_FOUND: return "not found";
    case TLDF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tldf_status tldf_workspace_load(const char* manifest_path, tldf_workspace** out,
                                tldf_result** diagnostics) {
  clear(diagnostics);
  if (out) *out = nullptr;
  if (!manifest_path || !out) return TLDF_ERR_USAGE;
  tldf_result* scratch = nullptr;
  tldf_result** sink = diagnostics ? diagnostics : &scratch;
  tldf_status st = guarded(sink, [&]() -> tldf_status {
    tldf::LoadResult lr = tldf::load_workspace(manifest_path);
    *sink = make_result(lr.diagnostics);
    if (!lr.workspace) return TLDF_ERR_DIAGNOSTICS;
    *out = new tldf_workspace{std::move(*lr.workspace), std::move(lr.diagnostics)};
    return TLDF_OK;
  });
  if (scratch) tldf_result_free(scratch);
  return st;
}

void tldf_workspace_free(tldf_workspace* ws) { delete ws; }

tldf_status tldf_workspace_load_dump(tldf_workspace* ws, const char* dump_text,
                                     tldf_result** out) {
  clear(out);
  if (!ws || !dump_text) return TLDF_ERR_USAGE;
  return guarded(out, [&]() -> tldf_status {
    auto diags = ws->ws.load_dump(dump_text, "<dump>");
    *out = make_result(diags);
    return tldf::has_errors(diags) ? TLDF_ERR_DIAGNOSTICS : TLDF_OK;
  });
}

tldf_status tldf_check(const tldf_workspace* ws, tldf_result** out) {
  clear(out);
  if (!ws) return TLDF_ERR_USAGE;
  return guarded(out, [&]() -> tldf_status {
    *out = make_result(ws->load_diagnostics);
    (*out)->output = "loaded " + std::to_string(ws->ws.tlds.size()) +
                     " description(s), " + std::to_string(ws->ws.user_specs.size()) +
                     " specification(s)\n";
    return TLDF_OK;
  });
}

tldf_status tldf_predicates(const tldf_workspace* ws, tldf_result** out) {
  clear(out);
  if (!ws) return TLDF_ERR_USAGE;
  return guarded(out, [&]() -> tldf_status {
    *out = make_result();
    for (const auto& t : ws->ws.tlds) (*out)->output += t.predicate + "\n";
    return TLDF_OK;
  });
}

tldf_status tldf_skeleton(const tldf_workspace* ws, const char* predicate,
                          const char* induction_param, tldf_result** out) {
  clear(out);
  if (!ws || !predicate || !induction_param) return TLDF_ERR_USAGE;
  return guarded(out, [&]() -> tldf_status {
    std::string text = tldf::suggest_skeleton(ws->ws, predicate, induction_param);
    *out = make_result();
    (*out)->output = std::move(text);
    return TLDF_OK;
  });
}

tldf_status tldf_run(const tldf_workspace* ws, const char* predicate,
                     const tldf_options* opts, tldf_result** out) {
  clear(out);
  if (!ws) return TLDF_ERR_USAGE;
  tldf_options defaults;
  tldf_options_init(&defaults);
  const tldf_options& o = opts ? *opts : defaults;
  if (o.dir_index < 0 || o.stage < TLDF_STAGE_CODE || o.stage > TLDF_STAGE_ELIMINATED)
    return TLDF_ERR_USAGE;
  return guarded(out, [&]() -> tldf_status {
    tldf::PipelineOptions po;
    po.target = o.target == TLDF_TARGET_MERCURY ? tldf::Target::Mercury : tldf::Target::Prolog;
    po.level = o.level == TLDF_LEVEL_NONE ? tldf::CheckLevel::None : tldf::CheckLevel::PaperCompat;
    po.cuts = o.cuts != 0;
    po.split = o.split != 0;
    po.comments = o.comments != 0;
    po.dir_index = static_cast<std::size_t>(o.dir_index);
    switch (o.stage) {
      case TLDF_STAGE_TYPED: po.emit_stage = tldf::Stage::Typed; break;
      case TLDF_STAGE_UNTYPED: po.emit_stage = tldf::Stage::Untyped; break;
      case TLDF_STAGE_NORMALIZED: po.emit_stage = tldf::Stage::Normalized; break;
      case TLDF_STAGE_ORDERED: po.emit_stage = tldf::Stage::Ordered; break;
      case TLDF_STAGE_ELIMINATED: po.emit_stage = tldf::Stage::Eliminated; break;
      default: break;
    }
    std::optional<std::string> pred;
    if (predicate) pred = predicate;
    tldf::PipelineResult pr = tldf::run_pipeline(ws->ws, pred, po);
    *out = make_result(pr.diagnostics);
    (*out)->output = std::move(pr.text);
    (*out)->report = std::move(pr.report);
    if (predicate && !ws->ws.find_tld(predicate)) return TLDF_ERR_NOT_FOUND;
    return pr.ok ? TLDF_OK : TLDF_ERR_DIAGNOSTICS;
  });
}

tldf_status tldf_oracle_equiv(const tldf_workspace* ws, const char* predicate,
                              int depth, int unfold, int variant, tldf_result** out) {
  clear(out);
  if (!ws || !predicate || depth < 1 || unfold < 1) return TLDF_ERR_USAGE;
  return guarded(out, [&]() -> tldf_status {
    tldf::OracleOptions oo;
    oo.depth = depth;
    oo.unfold = unfold;
    oo.variant = variant == TLDF_VARIANT_NO_NEGATION_CHECK
                     ? tldf::TransformVariant::NoNegationCheck
                     : tldf::TransformVariant::Faithful;
    tldf::EquivalenceReport rep = tldf::oracle_equiv(ws->ws, predicate, oo);
    *out = make_result();
    (*out)->output = predicate + std::string(" at depth ") + std::to_string(depth) +
                     ": " + rep.summary() + "\n";
    if (!rep.holds()) {
      (*out)->diagnostics = "<oracle>:1:1: error[Violation]: " + std::string(predicate) +
                            " is not equivalent to its untyped description\n";
      (*out)->errors = 1;
      return TLDF_ERR_DIAGNOSTICS;
    }
    return TLDF_OK;
  });
}

const char* tldf_result_output(const tldf_result* r) { return r ? r->output.c_str() : ""; }
const char* tldf_result_report(const tldf_result* r) { return r ? r->report.c_str() : ""; }
const char* tldf_result_diagnostics(const tldf_result* r) {
  return r ? r->diagnostics.c_str() : "";
}
int tldf_result_error_count(const tldf_result* r) { return r ? r->errors : 0; }
void tldf_result_free(tldf_result* r) { delete r; }

}  // extern "C"
