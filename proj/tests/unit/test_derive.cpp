#include "helpers.hpp"
#include "tldforge/derive.hpp"

using namespace tldf;

namespace {

Program derive(const char* def) {
  LogicDescription ld{"p", {"X"}, parse_formula(def)};
  return derive_clauses(ld, test::types(test::kExampleTypes));
}

std::vector<std::string> bodies(const Program& p) {
  std::vector<std::string> out;
  for (const auto& c : p.clauses) {
    std::string s;
    for (const auto& l : c.body) s += (s.empty() ? "" : ", ") + to_string(l);
    out.push_back(s);
  }
  return out;
}

std::string not_derivable_message(const char* def) {
  try {
    derive(def);
  } catch (const Error& e) {
    if (e.code() == "NotDerivable") return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("one clause per disjunct, negation pushed to literals") {
  CHECK(bodies(derive("X = a \\/ exists Y: term . X = f(Y) /\\ ~ Y = b")) ==
        std::vector<std::string>{"X = a", "X = f(Y), \\+ Y = b"});
  CHECK(bodies(derive("~ (X = a \\/ X = b)")) == std::vector<std::string>{"\\+ X = a, \\+ X = b"});
  CHECK(bodies(derive("~ ~ X = a")) == std::vector<std::string>{"X = a"});
  CHECK(bodies(derive("X = a => X = b")) == std::vector<std::string>{"\\+ X = a", "X = b"});
  CHECK(bodies(derive("(X = a <=> X = b)")) ==
        std::vector<std::string>{"X = a, X = b", "\\+ X = a, \\+ X = b"});
  CHECK(bodies(derive("true")) == std::vector<std::string>{""});
  CHECK(derive("false").clauses.empty());
}

TEST_CASE("unary type atoms become checks") {
  Program p = derive("nat(X) /\\ q(X)");
  REQUIRE(p.clauses.size() == 1);
  CHECK(p.clauses[0].body[0].kind() == Literal::Kind::TypeCheck);
  CHECK(p.clauses[0].body[1].kind() == Literal::Kind::Call);
}

TEST_CASE("existential variables are hoisted and renamed apart") {
  Program p = derive("exists Y: term . X = f(Y) \\/ exists Y: term . X = g(Y)");
  REQUIRE(p.clauses.size() == 2);
  CHECK(p.clauses[0].locals == std::vector<std::string>{"Y"});
  REQUIRE(p.clauses[1].locals.size() == 1);
  CHECK(p.clauses[1].locals[0] != "Y");
  CHECK(p.clauses[1].locals[0] != "X");

  Program q = derive("exists X: term . X = a");
  REQUIRE(q.clauses.size() == 1);
  REQUIRE(q.clauses[0].locals.size() == 1);
  CHECK(q.clauses[0].locals[0] != "X");
}

TEST_CASE("universal and negated existential quantifiers are not derivable") {
  CHECK(not_derivable_message("forall Y: term . ~ X = f(Y)").find("universal") != std::string::npos);
  CHECK(not_derivable_message("~ exists Y: term . X = f(Y)").find("negated existential") !=
        std::string::npos);
}

TEST_CASE("clause reading round-trips through normalization") {
  LogicDescription ld{"p", {"X"}, parse_formula("X = a \\/ exists Y: term . X = f(Y) /\\ ~ Y = b")};
  TypeEnv env = test::types(test::kExampleTypes);
  Program p = derive_clauses(ld, env);
  LogicDescription back = program_as_ld(p, ld.params);
  CHECK(bodies(derive_clauses(back, env)) == bodies(p));
}

TEST_CASE("the max_prefix descriptions derive one clause per case") {
  auto ws = test::load("max_prefix/workspace.manifest");
  auto count = [&](const char* name) {
    return derive_clauses(untyped_description(ws, *ws.find_tld(name)), ws.types).clauses.size();
  };
  CHECK(count("max_prefix_gen") == 2);
  CHECK(count("max_prefix") == 1);
}
