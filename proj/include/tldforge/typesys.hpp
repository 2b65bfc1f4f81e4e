// Type definitions as sets of ground terms: well-formedness, membership,
// bounded enumeration and structural forms.

#ifndef TLDFORGE_TYPESYS_HPP
#define TLDFORGE_TYPESYS_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tldforge/ast.hpp"
#include "tldforge/diagnostics.hpp"

namespace tldf {

struct TypeCase {
  std::string functor;
  std::vector<std::string> components;

  std::size_t arity() const { return components.size(); }
  friend bool operator==(const TypeCase&, const TypeCase&) = default;
};

enum class BuiltinKind { Integer, Float, Atom, Term };

struct TypeDef {
  enum class Form { Cases, Alias, Builtin };

  std::string name;
  Form form = Form::Cases;
  std::vector<TypeCase> cases;
  std::string alias;
  BuiltinKind builtin = BuiltinKind::Term;
  bool predefined = false;
  std::string file;
  SourcePos pos;

  // Every type name the body mentions, in order, without duplicates.
  std::vector<std::string> references() const;
};

// Sample used to enumerate the opaque numeric built-ins.
inline constexpr long long kIntegerSampleMin = -2;
inline constexpr long long kIntegerSampleMax = 2;

class TypeEnv {
 public:
  // Contains term, integer, float, atom and the built-in list.
  TypeEnv();

  // Replaces a predefined (non-reserved) definition such as `list`.
  void define(TypeDef def);
  bool contains(std::string_view name) const;
  const TypeDef* find(std::string_view name) const;
  const TypeDef& at(std::string_view name) const;  // Error{"UnknownType"}
  const std::map<std::string, TypeDef, std::less<>>& defs() const {
    return defs_;
  }

  // Follows aliases to the defining type; Error{"MutualRecursion"} on an
  // alias cycle, Error{"UnknownType"} on a dangling name.
  const TypeDef& resolve(std::string_view name) const;
  // True when both names resolve to the same definition.
  bool equivalent(std::string_view a, std::string_view b) const;

  // Constructors of every Cases definition, deduplicated by functor/arity.
  std::vector<std::pair<std::string, std::size_t>> signature() const;
  // Whether any user definition mentions `float` (controls whether floats
  // join the `term` universe).
  bool uses_float() const;

  // The sub-environment reachable from `roots` (built-ins always kept).
  TypeEnv restricted_to(const std::vector<std::string>& roots) const;

  static bool is_reserved(std::string_view name);

 private:
  std::map<std::string, TypeDef, std::less<>> defs_;
};

Diagnostics check_env(const TypeEnv& env);

bool is_member(const TypeEnv& env, std::string_view type, const Term& t);

// Members of `type` of depth <= depth, sorted.
std::vector<Term> enumerate(const TypeEnv& env, std::string_view type,
                            int depth);

// Memoizing enumerator for repeated queries against one environment.
class Enumerator {
 public:
  explicit Enumerator(const TypeEnv& env) : env_(&env) {}
  const std::vector<Term>& members(std::string_view type, int depth);
  // Membership in members(type, depth).
  bool contains(std::string_view type, int depth, const Term& t);

 private:
  const std::vector<Term>& term_universe(int depth);
  const TypeEnv* env_;
  std::map<std::pair<std::string, int>, std::vector<Term>> cache_;
  std::map<std::pair<std::string, int>, std::set<Term>> sets_;
  std::map<int, std::vector<Term>> universe_;
};

// One formula per case: `var = c(F1..Fk)` under EXISTS binders for fresh
// component variables. Binder names avoid `avoid` and `var`.
std::vector<Formula> structural_forms(const TypeEnv& env,
                                      std::string_view type,
                                      std::string_view var,
                                      const std::vector<std::string>& avoid = {});

// The first case of the resolved definition matching functor/arity.
const TypeCase* find_case(const TypeEnv& env, std::string_view type,
                          std::string_view functor, std::size_t arity);

}  // namespace tldf

#endif  // TLDFORGE_TYPESYS_HPP
