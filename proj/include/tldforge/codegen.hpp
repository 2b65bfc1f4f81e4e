// Prolog and Mercury emitters, arithmetic flattening and the mapping
// between multiplicities/modes and Mercury determinism/mode names.

#ifndef TLDFORGE_CODEGEN_HPP
#define TLDFORGE_CODEGEN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tldforge/ast.hpp"
#include "tldforge/modes.hpp"
#include "tldforge/spec.hpp"
#include "tldforge/typesys.hpp"

namespace tldf {

enum class Target { Prolog, Mercury };

struct EmitOptions {
  Target target = Target::Prolog;
  bool cut_introduction = false;  // Prolog only
  bool comment_header = false;
};

// Nested `+`, `-`, `*` become plus/3, minus/3, times/3 calls on a fresh
// variable, placed before the first literal that uses them. Identical
// subterms share one variable.
Clause flatten_arithmetic(const Clause& clause);
Program flatten_arithmetic(const Program& prog);

struct MercuryDeterminism {
  std::string name;
  Multiplicity mapped;   // the multiplicity actually looked up
  bool widened = false;
  std::string warning;
};

MercuryDeterminism mult_to_mercury_determinism(const Multiplicity& m);
// Every multiplicity the table lists for a determinism name.
std::vector<Multiplicity> mercury_determinism_to_mults(std::string_view name);

// in / out, or a user mode name such as `any_to_any`.
std::string mercury_mode_name(const ModePair& mp);
bool is_user_mercury_mode(const ModePair& mp);
// in, out, di, uo.
std::optional<ModePair> mercury_mode_to_pair(std::string_view name);

// `sw`, when given, enables cut placement under cut_introduction.
std::string emit_prolog(const Program& prog, const Spec& spec,
                        const EmitOptions& opts,
                        const std::optional<Switch>& sw = std::nullopt);

// One determinism per directionality of `spec`, in order.
std::string emit_mercury(const TypedLogicDescription& tld, const Spec& spec,
                         const TypeEnv& types,
                         const std::vector<Multiplicity>& determinism,
                         const EmitOptions& opts = {Target::Mercury},
                         std::vector<std::string>* warnings = nullptr);

}  // namespace tldf

#endif  // TLDFORGE_CODEGEN_HPP
