#include <algorithm>

#include "helpers.hpp"

using namespace tldf;

namespace {

Term nat(int n) {
  Term t = Term::atom("zero");
  while (n-- > 0) t = Term::compound("s", {t});
  return t;
}

}  // namespace

TEST_CASE("type environment: built-ins and well-formedness") {
  TypeEnv env;
  for (const char* b : {"term", "integer", "float", "atom", "list"}) CHECK(env.contains(b));
  CHECK(check_env(test::types(test::kExampleTypes)).empty());

  auto unknown = parse_types("t ::= a | b(missing).\n", "u.types");
  CHECK(test::has_code(check_env(unknown.value), "UnknownType"));

  auto mutual = load_workspace(test::fixture("mutual/workspace.manifest"));
  CHECK_FALSE(mutual.workspace.has_value());
  REQUIRE(test::has_code(mutual.diagnostics, "MutualRecursion"));
  for (const auto& d : mutual.diagnostics)
    if (d.code == "MutualRecursion") CHECK(d.line == 2);

  CHECK_FALSE(parse_types("integer ::= a.\n").ok());
  auto dup = parse_types("t ::= a | a.\n");
  CHECK(test::has_code(check_env(dup.value), "DuplicateCase"));
  auto empty = parse_types("t ::= f(t).\n");
  CHECK(test::has_code(check_env(empty.value), "EmptyType"));
  // Direct self-recursion is fine.
  CHECK(check_env(test::types("tree ::= leaf | node(tree, tree).\n")).empty());
}

TEST_CASE("aliases resolve to their defining type") {
  TypeEnv env = test::types(test::kExampleTypes);
  CHECK(env.equivalent("nat_set", "nat_list"));
  CHECK_FALSE(env.equivalent("nat_list", "list"));
  CHECK(env.resolve("nat_set").name == "nat_list");
  CHECK_THROWS_AS(env.resolve("nowhere"), Error);
}

TEST_CASE("membership of the defining examples") {
  TypeEnv env = test::types(test::kExampleTypes);
  CHECK(is_member(env, "fruit", Term::atom("apple")));
  CHECK_FALSE(is_member(env, "fruit", Term::atom("pear")));
  CHECK(is_member(env, "nat", nat(7)));
  CHECK_FALSE(is_member(env, "nat", Term::compound("s", {Term::atom("apple")})));
  Term l = Term::compound("cons_list", {nat(2), Term::atom("empty_list")});
  CHECK(is_member(env, "nat_list", l));
  CHECK(is_member(env, "nat_set", l));
  CHECK(is_member(env, "list", Term::compound("cons_list", {Term::atom("apple"), Term::atom("empty_list")})));
  CHECK_FALSE(is_member(env, "nat_list", Term::compound("cons_list", {Term::atom("apple"), Term::atom("empty_list")})));
  CHECK(is_member(env, "term", Term::compound("anything", {Term::atom("at_all")})));
  CHECK(is_member(env, "integer", Term::integer(-40)));
  CHECK_FALSE(is_member(env, "integer", Term::atom("zero")));
  CHECK(is_member(env, "atom", Term::atom("zero")));
  CHECK_THROWS_AS(is_member(env, "nat", Term::var("X")), Error);
}

TEST_CASE("enumeration agrees with membership over the whole bounded universe") {
  TypeEnv env = test::types(test::kExampleTypes);
  Enumerator en(env);
  for (int depth = 1; depth <= 3; ++depth) {
    const auto& universe = en.members("term", depth);
    for (const char* type : {"nat", "list", "nat_list", "fruit", "nat_set"}) {
      CAPTURE(type);
      CAPTURE(depth);
      auto members = enumerate(env, type, depth);
      CHECK(std::is_sorted(members.begin(), members.end()));
      for (const auto& m : members) {
        CHECK(m.depth() <= depth);
        CHECK(is_member(env, type, m));
      }
      for (const auto& t : universe) {
        bool listed = std::binary_search(members.begin(), members.end(), t);
        CHECK(listed == is_member(env, type, t));
      }
    }
  }
  CHECK(enumerate(env, "fruit", 1).size() == 5);
  CHECK(enumerate(env, "nat", 3) == std::vector<Term>{Term::atom("zero"), nat(1), nat(2)});
  CHECK(enumerate(env, "nat_list", 3).size() == 5);
  CHECK(enumerate(env, "nat_set", 3) == enumerate(env, "nat_list", 3));
}

TEST_CASE("structural forms cover every case with fresh component variables") {
  TypeEnv env = test::types(test::kExampleTypes);
  auto forms = structural_forms(env, "nat", "X");
  REQUIRE(forms.size() == 2);
  CHECK(forms[0] == parse_formula("X = zero"));
  CHECK(forms[1] == parse_formula("exists N: nat . X = s(N)"));

  auto lists = structural_forms(env, "nat_list", "L", {"N"});
  REQUIRE(lists.size() == 2);
  const Formula& cons = lists[1];
  REQUIRE(cons.kind() == FormulaKind::Exists);
  CHECK(cons.var() != "N");
  CHECK(cons.var() != "L");
  CHECK(cons.type() == "nat");
  CHECK(cons.body().type() == "nat_list");

  CHECK(structural_forms(env, "fruit", "F").size() == 5);
  CHECK(structural_forms(env, "nat_set", "S").size() == 2);
  CHECK_THROWS_AS(structural_forms(env, "integer", "I"), Error);
}

TEST_CASE("restriction keeps exactly the reachable types") {
  TypeEnv env = test::types(test::kExampleTypes);
  TypeEnv r = env.restricted_to({"nat_set"});
  CHECK(r.contains("nat_list"));
  CHECK(r.contains("nat"));
  CHECK_FALSE(r.contains("fruit"));
  CHECK(r.contains("integer"));
}
