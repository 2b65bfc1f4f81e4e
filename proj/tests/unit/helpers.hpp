#ifndef TLDFORGE_TEST_HELPERS_HPP
#define TLDFORGE_TEST_HELPERS_HPP

#include <string>

#include "doctest.h"
#include "tldforge/syntax.hpp"
#include "tldforge/workspace.hpp"

namespace test {

inline std::string fixture(const std::string& rel) {
  return std::string(TLDF_FIXTURES) + "/" + rel;
}

inline tldf::Workspace load(const std::string& manifest_rel) {
  auto lr = tldf::load_workspace(fixture(manifest_rel));
  INFO(tldf::format_all(lr.diagnostics));
  REQUIRE(lr.workspace.has_value());
  return std::move(*lr.workspace);
}

inline tldf::TypeEnv types(const std::string& text) {
  auto p = tldf::parse_types(text, "<test>");
  INFO(tldf::format_all(p.diagnostics));
  REQUIRE(p.ok());
  return std::move(p.value);
}

inline tldf::Spec spec(const std::string& text) {
  auto p = tldf::parse_spec(text, "<test>");
  INFO(tldf::format_all(p.diagnostics));
  REQUIRE(p.ok());
  return std::move(p.value);
}

inline tldf::TypedLogicDescription tld(const std::string& text) {
  auto p = tldf::parse_tld(text, "<test>");
  INFO(tldf::format_all(p.diagnostics));
  REQUIRE(p.ok());
  return std::move(p.value);
}

// `X = t`, `p(...)`, `~ L` or `type?(X)` for a type check.
inline tldf::Literal lit(const std::string& text) {
  using namespace tldf;
  if (text.ends_with(")") && text.find("?(") != std::string::npos) {
    auto q = text.find("?(");
    return Literal::type_check(text.substr(0, q), parse_term(text.substr(q + 2, text.size() - q - 3)));
  }
  Formula f = parse_formula(text);
  switch (f.kind()) {
    case FormulaKind::Eq: return Literal::unify(f.lhs(), f.rhs());
    case FormulaKind::Not: {
      Formula g = f.child(0);
      if (g.kind() == FormulaKind::Eq) return Literal::naf(Literal::unify(g.lhs(), g.rhs()));
      return Literal::naf(Literal::call(g.predicate(), g.args()));
    }
    default: return Literal::call(f.predicate(), f.args());
  }
}

inline bool has_code(const tldf::Diagnostics& d, const std::string& code) {
  for (const auto& x : d)
    if (x.code == code) return true;
  return false;
}

inline const char* kExampleTypes =
    "fruit ::= X in {orange, apple, banana, pineapple, strawberry}.\n"
    "nat ::= zero | s(nat).\n"
    "list ::= empty_list | cons_list(term, list).\n"
    "nat_list ::= empty_list | cons_list(nat, nat_list).\n"
    "nat_set == nat_list.\n";

}  // namespace test

#endif
