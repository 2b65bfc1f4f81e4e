// Concrete syntax for `.types`, `.spec` and `.tld` files.
//
// All three formats are UTF-8, `.`-terminated declarations; `#` starts a
// line comment. See docs/formats.md for the grammars.

#ifndef TLDFORGE_SYNTAX_HPP
#define TLDFORGE_SYNTAX_HPP

#include <string>
#include <string_view>
#include <vector>

#include "tldforge/ast.hpp"
#include "tldforge/diagnostics.hpp"
#include "tldforge/spec.hpp"
#include "tldforge/typesys.hpp"

namespace tldf {

template <typename T>
struct Parsed {
  T value;
  Diagnostics diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

Parsed<TypeEnv> parse_types(std::string_view input, std::string file = {});
// Adds the definitions of `input` to an existing environment.
Diagnostics parse_types_into(TypeEnv& env, std::string_view input,
                             std::string file = {});

Parsed<std::vector<Spec>> parse_specs(std::string_view input,
                                      std::string file = {});
// Exactly one procedure is expected.
Parsed<Spec> parse_spec(std::string_view input, std::string file = {});

Parsed<std::vector<TypedLogicDescription>> parse_tlds(std::string_view input,
                                                      std::string file = {});
Parsed<TypedLogicDescription> parse_tld(std::string_view input,
                                        std::string file = {});

// Fragments, used by tests and the CLI. Throw Error{"SyntaxError"}.
Term parse_term(std::string_view input);
Formula parse_formula(std::string_view input);

std::string print_formula(const Formula& f);
std::string print_tld(const TypedLogicDescription& tld);
// Printed as a `.tld` whose parameters are all at `term`.
std::string print_ld(const LogicDescription& ld);
std::string print_type(const TypeDef& def);
std::string print_spec(const Spec& spec);

}  // namespace tldf

#endif  // TLDFORGE_SYNTAX_HPP
