// Bounded-universe evaluation of typed and untyped formulas, and the
// exhaustive typed/untyped equivalence check built on it.

#ifndef TLDFORGE_SEMANTICS_HPP
#define TLDFORGE_SEMANTICS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tldforge/ast.hpp"
#include "tldforge/typesys.hpp"

namespace tldf {

// Three-valued; Unknown only arises when a bound is hit (or, internally,
// when a variable is not yet bound).
enum class Truth : std::uint8_t { False, True, Unknown };

const char* to_string(Truth t);

// Which meaning a predicate atom takes: the typed description (parameter
// memberships conjoined with the typed definition) or its untyped
// transform.
enum class Reading : std::uint8_t { Typed, Untyped };

struct PredicateDef {
  std::vector<std::string> params;
  Formula definition = Formula::truth();
};

// Predicates with a fixed host meaning; all arguments must be ground.
bool is_builtin_predicate(std::string_view name, std::size_t arity);

class EvalContext {
 public:
  EvalContext(TypeEnv types, int universe_depth, int unfold_depth);

  const TypeEnv& types() const { return types_; }
  int universe_depth() const { return universe_depth_; }
  int unfold_depth() const { return unfold_depth_; }

  // Registers a predicate under one reading, or both when `reading` is
  // omitted.
  void define(const std::string& name, PredicateDef def,
              std::optional<Reading> reading = std::nullopt);
  const PredicateDef* find(const std::string& name, std::size_t arity,
                           Reading reading) const;

  Enumerator& enumerator() const { return *enumerator_; }

  using MemoKey = std::tuple<Reading, std::string, std::vector<Term>, int>;
  std::map<MemoKey, Truth>& memo() const { return *memo_; }

 private:
  TypeEnv types_;
  int universe_depth_;
  int unfold_depth_;
  std::map<std::pair<std::string, std::size_t>, PredicateDef> typed_;
  std::map<std::pair<std::string, std::size_t>, PredicateDef> untyped_;
  std::unique_ptr<Enumerator> enumerator_;
  std::unique_ptr<std::map<MemoKey, Truth>> memo_;
};

// Errors: MissingBinding, UnknownPredicate.
Truth eval(const EvalContext& ctx, const Formula& f, const TermBinding& binding,
           Reading reading = Reading::Typed);

struct EquivalenceReport {
  std::uint64_t checked = 0;
  std::uint64_t violated = 0;
  std::uint64_t inconclusive = 0;
  // Bindings outside the declared types on which the untyped formula was
  // (correctly) false.
  std::uint64_t vacuous = 0;
  std::optional<TermBinding> counterexample;
  std::string reason;

  bool holds() const { return violated == 0; }
  std::string summary() const;
};

// Every binding of `freevars` over the `term` universe is checked: outside
// the declared types the untyped formula must be false, inside both
// formulas must agree. Subtrees of the binding space are discharged early
// when a partial binding already fixes both verdicts.
EquivalenceReport check_equivalence(const EvalContext& ctx,
                                    const Formula& typed,
                                    const Formula& untyped,
                                    const std::vector<TypedVar>& freevars);

}  // namespace tldf

#endif  // TLDFORGE_SEMANTICS_HPP
