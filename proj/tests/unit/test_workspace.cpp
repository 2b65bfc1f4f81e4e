#include <filesystem>
#include <fstream>

#include "helpers.hpp"

using namespace tldf;
namespace fs = std::filesystem;

namespace {

// A scratch workspace directory, removed on destruction.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("tldf_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  void write(const std::string& file, const std::string& text) const {
    std::ofstream(dir / file) << text;
  }
  LoadResult load() const { return load_workspace(dir / "workspace.manifest"); }
};

std::string prolog(const Workspace& ws) {
  auto pr = run_pipeline(ws, std::nullopt, {});
  INFO(format_all(pr.diagnostics));
  REQUIRE(pr.ok);
  return pr.text;
}

}  // namespace

TEST_CASE("manifest: declarations and errors") {
  auto m = parse_manifest("# comment\ntypes a.types\n\nspec b.spec\ntld c.tld\nout gen\n", "m");
  REQUIRE(m.ok());
  REQUIRE(m.value.entries.size() == 3);
  CHECK(m.value.entries[1].kind == "spec");
  CHECK(m.value.entries[2].line == 5);
  CHECK(m.value.out_dir == "gen");
  auto bad = parse_manifest("typez a.types\n", "m");
  CHECK(test::has_code(bad.diagnostics, "ManifestSyntax"));
}

TEST_CASE("loading: a missing file is reported with its path and nothing loads") {
  Scratch s("missing");
  s.write("workspace.manifest", "types nat.types\ntld gone.tld\n");
  s.write("nat.types", "nat ::= zero | s(nat).\n");
  auto lr = s.load();
  CHECK_FALSE(lr.workspace.has_value());
  REQUIRE(test::has_code(lr.diagnostics, "IoError"));
  CHECK(lr.diagnostics[0].message.find("gone.tld") != std::string::npos);
  CHECK(lr.diagnostics[0].line == 2);
  CHECK_FALSE(load_workspace(s.dir / "absent.manifest").workspace.has_value());
}

TEST_CASE("loading: descriptions need specifications and known types") {
  Scratch s("nospec");
  s.write("workspace.manifest", "types nat.types\ntld p.tld\n");
  s.write("nat.types", "nat ::= zero | s(nat).\n");
  s.write("p.tld", "p(X: nat) <=> X = zero.\n");
  auto nospec = s.load();
  REQUIRE(nospec.workspace.has_value());
  CHECK(test::has_code(run_pipeline(*nospec.workspace, std::nullopt, {}).diagnostics, "MissingSpec"));

  s.write("workspace.manifest", "types nat.types\nspec p.spec\ntld p.tld\n");
  s.write("p.spec", "procedure p(X).\ntypes X: nat.\ndir (ground) : <0-1>.\n");
  s.write("p.tld", "p(X: colour) <=> X = zero.\n");
  CHECK(test::has_code(s.load().diagnostics, "UnknownType"));

  s.write("p.tld", "p(X: nat) <=> X = zero.\np(X: nat) <=> X = zero.\n");
  CHECK(test::has_code(s.load().diagnostics, "DuplicatePredicate"));

  s.write("p.tld", "p(X: nat) <=> X = zero.\n");
  auto ok = s.load();
  CHECK(ok.workspace.has_value());
}

TEST_CASE("pipeline: a single predicate, the whole workspace, and unknown names") {
  auto ws = test::load("max_prefix/workspace.manifest");
  auto one = run_pipeline(ws, std::string("max_prefix"), {});
  REQUIRE(one.ok);
  CHECK(one.text == "max_prefix(L, M) :-\n    max_prefix_gen(L, M, -infinite).\n");
  auto all = run_pipeline(ws, std::nullopt, {});
  CHECK(all.predicates.size() == 2);
  auto none = run_pipeline(ws, std::string("nowhere"), {});
  CHECK_FALSE(none.ok);
  CHECK(test::has_code(none.diagnostics, "UnknownPredicate"));
  PipelineOptions o;
  o.dir_index = 5;
  CHECK(test::has_code(run_pipeline(ws, std::nullopt, o).diagnostics, "BadDirIndex"));
}

TEST_CASE("pipeline: diagnostics point at the source") {
  auto ws = test::load("unsat/workspace.manifest");
  auto pr = run_pipeline(ws, std::nullopt, {});
  REQUIRE_FALSE(pr.diagnostics.empty());
  CHECK(pr.diagnostics[0].file.ends_with("q.tld"));
  CHECK(pr.diagnostics[0].line == 1);
}

TEST_CASE("pipeline: incompatible orders fail unless split into versions") {
  auto ws = test::load("max_prefix/workspace.manifest");
  PipelineOptions o;
  o.dir_index = 1;
  o.level = CheckLevel::None;
  auto joint = run_pipeline(ws, std::string("max_prefix_gen"), o);
  CHECK_FALSE(joint.ok);
  CHECK(test::has_code(joint.diagnostics, "MultipleOrders"));

  o.split = true;
  auto split = run_pipeline(ws, std::string("max_prefix_gen"), o);
  INFO(format_all(split.diagnostics));
  REQUIRE(split.ok);
  CHECK(split.text.find("max_prefix_gen__d1(L, M, A) :-") != std::string::npos);
  CHECK(split.text.find("max_prefix_gen__d2(L, M, A) :-") != std::string::npos);
  // In the all-ground version the recursive call still produces M1.
  CHECK(split.text.find("max_prefix_gen__d1(T, M1, A1)") != std::string::npos);
  CHECK(split.text.find("integer_list(L),\n    integer(M),\n    integer(A)") != std::string::npos);
}

TEST_CASE("skeleton: structural cases with holes") {
  Scratch s("skeleton");
  s.write("workspace.manifest", "types nat.types\nspec s.spec\n");
  s.write("nat.types", "nat ::= zero | s(nat).\n");
  s.write("s.spec", "procedure even(X, Y).\ntypes X: nat, Y: integer.\ndir (ground, ground) : <0-1>.\n");
  auto lr = s.load();
  REQUIRE(lr.workspace.has_value());
  std::string text = suggest_skeleton(*lr.workspace, "even", "X");
  CHECK(text.find("X = zero /\\ #hole") != std::string::npos);
  CHECK(text.find("exists N: nat . X = s(N) /\\ #hole") != std::string::npos);
  CHECK(text.find("even(X: nat, Y: integer) <=>") != std::string::npos);

  auto code_of = [&](const char* pred, const char* param) {
    try {
      suggest_skeleton(*lr.workspace, pred, param);
    } catch (const Error& e) {
      return e.code();
    }
    return std::string();
  };
  CHECK(code_of("even", "Y") == "NotStructural");
  CHECK(code_of("even", "Z") == "UnknownParameter");
  CHECK(code_of("odd", "X") == "UnknownPredicate");
}

TEST_CASE("dumps: every stage reloads to the same code") {
  auto ws = test::load("max_prefix/workspace.manifest");
  const std::string direct = prolog(ws);
  for (Stage st : {Stage::Typed, Stage::Untyped, Stage::Normalized, Stage::Ordered, Stage::Eliminated}) {
    CAPTURE(stage_name(st));
    PipelineOptions o;
    o.emit_stage = st;
    auto dump = run_pipeline(ws, std::nullopt, o);
    REQUIRE(dump.ok);
    Workspace copy = ws;
    auto diags = copy.load_dump(dump.text, "<dump>");
    INFO(format_all(diags));
    REQUIRE_FALSE(has_errors(diags));
    CHECK(prolog(copy) == direct);
    CHECK(run_pipeline(copy, std::nullopt, o).text == dump.text);
  }
  CHECK(parse_stage("normalized") == Stage::Normalized);
  CHECK_FALSE(parse_stage("cooked").has_value());
}

TEST_CASE("oracle: the fixtures are faithful and the broken variant is caught") {
  auto ws = test::load("equiv/workspace.manifest");
  OracleOptions o;
  for (const auto& t : ws.tlds) {
    CAPTURE(t.predicate);
    auto rep = oracle_equiv(ws, t.predicate, o);
    CHECK(rep.holds());
    CHECK(rep.inconclusive == 0);
  }
  o.variant = TransformVariant::NoNegationCheck;
  auto broken = oracle_equiv(ws, "not_zero", o);
  CHECK_FALSE(broken.holds());
  CHECK(broken.reason.starts_with("definition body: "));
}
