// Command-line front end. Talks to the library only through the C interface.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tldforge/tldforge.h"

namespace {

struct Args {
  std::string manifest = "workspace.manifest";
  std::string pred;
  std::string param;
  std::string input;
  std::string output;
  std::string level = "paper-compat";
  std::string stage;
  std::string variant = "faithful";
  int dir_index = 0;
  int depth = 2;
  int unfold = 4;
  bool cuts = false;
  bool split = false;
  bool comments = false;
};

int stage_code(const std::string& s) {
  if (s.empty()) return TLDF_STAGE_CODE;
  if (s == "typed") return TLDF_STAGE_TYPED;
  if (s == "untyped") return TLDF_STAGE_UNTYPED;
  if (s == "normalized") return TLDF_STAGE_NORMALIZED;
  if (s == "ordered") return TLDF_STAGE_ORDERED;
  if (s == "eliminated") return TLDF_STAGE_ELIMINATED;
  return -1;
}

int exit_code(tldf_status st) {
  switch (st) {
    case TLDF_OK: return 0;
    case TLDF_ERR_USAGE: return 2;
    default: return 1;
  }
}

bool write_output(const Args& a, const char* text) {
  if (a.output.empty()) {
    std::fputs(text, stdout);
    return true;
  }
  std::ofstream f(a.output, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "%s:1:1: error[IoError]: cannot write file\n", a.output.c_str());
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

// Prints a result, frees it and maps the status to an exit code.
int finish(const Args& a, tldf_status st, tldf_result* r, bool with_report = false) {
  if (r) {
    std::fputs(tldf_result_diagnostics(r), stderr);
    if (!write_output(a, tldf_result_output(r))) st = TLDF_ERR_DIAGNOSTICS;
    if (with_report) std::fputs(tldf_result_report(r), stdout);
    tldf_result_free(r);
  } else if (st != TLDF_OK) {
    std::fprintf(stderr, "error: %s\n", tldf_status_string(st));
  }
  return exit_code(st);
}

struct WorkspaceGuard {
  tldf_workspace* ws = nullptr;
  ~WorkspaceGuard() { tldf_workspace_free(ws); }
};

// Loads the manifest and an optional dump. Returns -1 on success, an exit
// code otherwise.
int open_workspace(const Args& a, WorkspaceGuard& g) {
  tldf_result* diags = nullptr;
  tldf_status st = tldf_workspace_load(a.manifest.c_str(), &g.ws, &diags);
  if (st != TLDF_OK) return finish(a, st, diags);
  tldf_result_free(diags);
  if (a.input.empty()) return -1;
  std::ifstream f(a.input, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "%s:1:1: error[IoError]: cannot read file\n", a.input.c_str());
    return 1;
  }
  std::ostringstream text;
  text << f.rdbuf();
  tldf_result* r = nullptr;
  st = tldf_workspace_load_dump(g.ws, text.str().c_str(), &r);
  if (st != TLDF_OK) return finish(a, st, r);
  tldf_result_free(r);
  return -1;
}

int run(const Args& a, int target, int stage, bool report_only) {
  WorkspaceGuard g;
  if (int rc = open_workspace(a, g); rc >= 0) return rc;
  tldf_options o;
  tldf_options_init(&o);
  o.target = target;
  o.level = a.level == "none" ? TLDF_LEVEL_NONE : TLDF_LEVEL_PAPER_COMPAT;
  o.stage = stage;
  o.cuts = a.cuts;
  o.split = a.split;
  o.comments = a.comments;
  o.dir_index = a.dir_index;
  tldf_result* r = nullptr;
  tldf_status st = tldf_run(g.ws, a.pred.empty() ? nullptr : a.pred.c_str(), &o, &r);
  if (report_only && r) {
    std::fputs(tldf_result_diagnostics(r), stderr);
    bool ok = write_output(a, tldf_result_report(r));
    tldf_result_free(r);
    return ok ? exit_code(st) : 1;
  }
  return finish(a, st, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tld-forge: typed logic descriptions to Prolog and Mercury"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--manifest", a.manifest, "workspace manifest")->capture_default_str();
    sub->add_option("-o,--output", a.output, "write output to a file");
  };
  auto pipeline = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--pred", a.pred, "predicate to process (default: all)");
    sub->add_option("--input", a.input, "resume from a stage dump");
    sub->add_option("--dir-index", a.dir_index, "directionality whose order is emitted")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--level", a.level, "check elimination level")
        ->check(CLI::IsMember({"paper-compat", "none"}));
    sub->add_flag("--cuts", a.cuts, "introduce cuts on complete switches");
    sub->add_flag("--split", a.split, "one version per directionality when orders conflict");
    sub->add_flag("--comments", a.comments, "emit relation text as comments");
    sub->add_option("--emit-stage", a.stage, "dump an intermediate stage")
        ->check(CLI::IsMember({"typed", "untyped", "normalized", "ordered", "eliminated"}));
  };

  auto* check = app.add_subcommand("check", "load and validate a workspace");
  common(check);

  auto* skeleton = app.add_subcommand("skeleton", "suggest a structural .tld skeleton");
  common(skeleton);
  skeleton->add_option("--pred", a.pred, "specified procedure")->required();
  skeleton->add_option("--param", a.param, "induction parameter")->required();

  auto* transform = app.add_subcommand("transform", "print the untyped description");
  pipeline(transform);
  auto* derive = app.add_subcommand("derive", "print the derived clauses");
  pipeline(derive);
  auto* analyze = app.add_subcommand("analyze", "print orders, removed checks and determinism");
  pipeline(analyze);

  auto* gen = app.add_subcommand("gen", "generate code");
  gen->require_subcommand(1);
  auto* prolog = gen->add_subcommand("prolog", "generate Prolog");
  pipeline(prolog);
  auto* mercury = gen->add_subcommand("mercury", "generate Mercury");
  pipeline(mercury);

  auto* oracle = app.add_subcommand("oracle", "bounded semantic checks");
  oracle->require_subcommand(1);
  auto* equiv = oracle->add_subcommand("equiv", "typed vs untyped equivalence");
  common(equiv);
  equiv->add_option("--pred", a.pred, "predicate (default: all)");
  equiv->add_option("--depth", a.depth, "term depth bound")->capture_default_str()
      ->check(CLI::PositiveNumber);
  equiv->add_option("--unfold", a.unfold, "unfolding bound")->capture_default_str()
      ->check(CLI::PositiveNumber);
  equiv->add_option("--variant", a.variant, "transformation variant")
      ->check(CLI::IsMember({"faithful", "no-neg-check"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*check) {
    WorkspaceGuard g;
    tldf_result* diags = nullptr;
    tldf_status st = tldf_workspace_load(a.manifest.c_str(), &g.ws, &diags);
    if (st != TLDF_OK) return finish(a, st, diags);
    tldf_result_free(diags);
    tldf_result* r = nullptr;
    tldf_status cs = tldf_check(g.ws, &r);
    return finish(a, cs, r);
  }
  if (*skeleton) {
    WorkspaceGuard g;
    if (int rc = open_workspace(a, g); rc >= 0) return rc;
    tldf_result* r = nullptr;
    tldf_status ss = tldf_skeleton(g.ws, a.pred.c_str(), a.param.c_str(), &r);
    return finish(a, ss, r);
  }
  if (*transform) {
    int s = a.stage.empty() ? TLDF_STAGE_UNTYPED : stage_code(a.stage);
    return run(a, TLDF_TARGET_PROLOG, s, false);
  }
  if (*derive) {
    int s = a.stage.empty() ? TLDF_STAGE_NORMALIZED : stage_code(a.stage);
    return run(a, TLDF_TARGET_PROLOG, s, false);
  }
  if (*analyze) return run(a, TLDF_TARGET_PROLOG, TLDF_STAGE_CODE, true);
  if (*prolog) return run(a, TLDF_TARGET_PROLOG, stage_code(a.stage), false);
  if (*mercury) return run(a, TLDF_TARGET_MERCURY, stage_code(a.stage), false);
  if (*equiv) {
    WorkspaceGuard g;
    if (int rc = open_workspace(a, g); rc >= 0) return rc;
    int variant = a.variant == "no-neg-check" ? TLDF_VARIANT_NO_NEGATION_CHECK
                                              : TLDF_VARIANT_FAITHFUL;
    if (!a.pred.empty()) {
      tldf_result* r = nullptr;
      tldf_status es = tldf_oracle_equiv(g.ws, a.pred.c_str(), a.depth, a.unfold, variant, &r);
      return finish(a, es, r);
    }
    tldf_result* listing = nullptr;
    tldf_status st = tldf_predicates(g.ws, &listing);
    if (st != TLDF_OK) return finish(a, st, listing);
    std::string names = tldf_result_output(listing);
    tldf_result_free(listing);
    int rc = 0;
    std::istringstream in(names);
    std::string name;
    while (std::getline(in, name)) {
      tldf_result* r = nullptr;
      tldf_status es = tldf_oracle_equiv(g.ws, name.c_str(), a.depth, a.unfold, variant, &r);
      int one = finish(a, es, r);
      rc = std::max(rc, one);
    }
    return rc;
  }
  return 2;
}
