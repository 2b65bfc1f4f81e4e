#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "tldforge/codegen.hpp"

using namespace tldf;

namespace {

Multiplicity mult(const char* text) {
  Spec s = test::spec(std::string("procedure p(X).\ntypes X: term.\ndir (any) : ") + text + ".\n");
  return s.dirs[0].mult;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run(const Workspace& ws, Target t, bool cuts = false) {
  PipelineOptions o;
  o.target = t;
  o.cuts = cuts;
  auto pr = run_pipeline(ws, std::nullopt, o);
  INFO(format_all(pr.diagnostics));
  REQUIRE(pr.ok);
  return pr.text;
}

}  // namespace

TEST_CASE("determinism table: both directions") {
  const std::pair<const char*, const char*> rows[] = {
      {"<1-1>", "det"},    {"<0-1>", "semidet"}, {"<1-inf>", "multi"},
      {"<0-inf>", "nondet"}, {"<0-0>", "failure"}, {"<1-0>", "erroneous"},
  };
  for (auto [m, name] : rows) {
    CAPTURE(m);
    auto d = mult_to_mercury_determinism(mult(m));
    CHECK(d.name == name);
    CHECK_FALSE(d.widened);
    auto back = mercury_determinism_to_mults(name);
    CHECK(std::find(back.begin(), back.end(), mult(m)) != back.end());
  }
  CHECK(mult_to_mercury_determinism(mult("<1-*>")).name == "multi");
  CHECK(mult_to_mercury_determinism(mult("<0-*>")).name == "nondet");
}

TEST_CASE("determinism table: other multiplicities widen to the tightest row") {
  auto d = mult_to_mercury_determinism(mult("<2-3>"));
  CHECK(d.widened);
  CHECK(d.name == "multi");
  CHECK(d.mapped.to_string() == "<1-*>");
  CHECK(d.warning.find("<2-3>") != std::string::npos);
  CHECK(mult_to_mercury_determinism(mult("<0-2>")).name == "nondet");
  CHECK(mult_to_mercury_determinism(mult("<2-inf>")).mapped.to_string() == "<1-inf>");
}

TEST_CASE("mode table: both directions") {
  CHECK(mercury_mode_name({Mode::ground(), Mode::ground()}) == "in");
  CHECK(mercury_mode_name({Mode::var(), Mode::ground()}) == "out");
  for (const char* name : {"in", "out", "di", "uo"}) {
    auto p = mercury_mode_to_pair(name);
    REQUIRE(p.has_value());
    CHECK_FALSE(is_user_mercury_mode(*p));
  }
  CHECK(mercury_mode_to_pair("di")->in == Mode::ground());
  CHECK(mercury_mode_to_pair("uo")->in == Mode::var());
  CHECK(mercury_mode_to_pair("uo")->out == Mode::ground());
  ModePair user{Mode::any(), Mode::any()};
  CHECK(is_user_mercury_mode(user));
  CHECK(mercury_mode_name(user) == "any_to_any");
  CHECK_FALSE(mercury_mode_to_pair("any_to_any").has_value());
}

TEST_CASE("arithmetic flattening shares identical subterms") {
  Clause c{"p", {Term::var("H"), Term::var("A"), Term::var("M")},
           {test::lit("q(H + A, M1)"), test::lit("max(H + A, M1, M)")}, {"M1"}, ""};
  Clause f = flatten_arithmetic(c);
  REQUIRE(f.body.size() == 3);
  CHECK(to_string(f.body[0]) == "plus(H, A, A1)");
  CHECK(to_string(f.body[1]) == "q(A1, M1)");
  CHECK(to_string(f.body[2]) == "max(A1, M1, M)");

  Clause nested{"p", {Term::var("X"), Term::var("Y")}, {test::lit("Y = X * 2 - 1")}, {}, ""};
  Clause g = flatten_arithmetic(nested);
  REQUIRE(g.body.size() == 3);
  CHECK(g.body[0].name() == "times");
  CHECK(g.body[1].name() == "minus");
}

TEST_CASE("prolog: golden output") {
  auto ws = test::load("max_prefix/workspace.manifest");
  CHECK(run(ws, Target::Prolog) == slurp(test::fixture("max_prefix/expected.pl")));
}

TEST_CASE("prolog: cut introduction after the switch test") {
  auto ws = test::load("max_prefix/workspace.manifest");
  std::string text = run(ws, Target::Prolog, true);
  CHECK(text.find("    L = [],\n    !,\n") != std::string::npos);
  CHECK(text.find("L = [H | T],\n    !") == std::string::npos);
}

TEST_CASE("mercury: golden output up to operand order") {
  auto ws = test::load("max_prefix/workspace.manifest");
  std::string text = run(ws, Target::Mercury);
  std::string expected = slurp(test::fixture("max_prefix/expected.m"));
  for (std::size_t p; (p = expected.find("A + H")) != std::string::npos;) expected.replace(p, 5, "H + A");
  CHECK(text == expected);
}

TEST_CASE("mercury: declarations, widening warnings and user modes") {
  auto ws = test::load("widen/workspace.manifest");
  PipelineOptions o;
  o.target = Target::Mercury;
  auto pr = run_pipeline(ws, std::nullopt, o);
  REQUIRE(pr.ok);
  CHECK(pr.text.find(":- mode pick(out) is multi.") != std::string::npos);
  CHECK(pr.text.find(":- mode pick(in) is semidet.") != std::string::npos);
  CHECK(test::has_code(pr.diagnostics, "Widened"));

  TypeEnv env = test::types(test::kExampleTypes);
  auto t = test::tld("id(X: nat, Y: nat) <=> X = Y.\n");
  Spec s = test::spec("procedure id(X, Y).\ntypes X: nat, Y: nat.\ndir (any -> any, any -> any) : <1-1>.\n");
  std::vector<std::string> warnings;
  std::string m = emit_mercury(t, s, env, {s.dirs[0].mult}, {Target::Mercury}, &warnings);
  CHECK(m.find(":- mode id(any_to_any, any_to_any) is det.") != std::string::npos);
  CHECK(m.find(":- mode any_to_any") != std::string::npos);
}
