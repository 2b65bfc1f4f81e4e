// Clause derivation from untyped logic descriptions: negation pushing,
// existential hoisting and disjunctive normal form, one clause per
// disjunct.

#ifndef TLDFORGE_DERIVE_HPP
#define TLDFORGE_DERIVE_HPP

#include <string>
#include <vector>

#include "tldforge/ast.hpp"
#include "tldforge/typesys.hpp"

namespace tldf {

struct NormalDisjunct {
  // Existential variables occurring in `literals`, binder order.
  std::vector<std::string> locals;
  std::vector<Literal> literals;
};

struct NormalizedBody {
  std::vector<NormalDisjunct> disjuncts;
};

// Unary atoms naming a type in `types` become TypeCheck literals.
// Throws Error{"NotDerivable"} on a residual universal quantifier, a
// negated existential, or a normal form beyond kMaxDisjuncts.
NormalizedBody normalize(const LogicDescription& ld, const TypeEnv& types);

inline constexpr std::size_t kMaxDisjuncts = 4096;

Program derive_clauses(const LogicDescription& ld, const TypeEnv& types);

// The clause reading of a program as a logic description whose
// definition, once normalized again, yields the same clauses.
LogicDescription program_as_ld(const Program& prog,
                               const std::vector<std::string>& params);

}  // namespace tldf

#endif  // TLDFORGE_DERIVE_HPP
