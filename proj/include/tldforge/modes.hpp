// Directionality machinery: consistency checks, abstract execution of
// clause bodies over the mode domain, literal reordering, type-check
// elimination and determinism estimation.

#ifndef TLDFORGE_MODES_HPP
#define TLDFORGE_MODES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tldforge/ast.hpp"
#include "tldforge/diagnostics.hpp"
#include "tldforge/spec.hpp"
#include "tldforge/typesys.hpp"

namespace tldf {

Diagnostics check_directionality(const Spec& spec);

// Specifications by name/arity. A later spec replaces an earlier one.
class SpecRegistry {
 public:
  void add(Spec spec);
  const Spec* find(std::string_view name, std::size_t arity) const;
  const std::vector<Spec>& all() const { return specs_; }

  // Text of the built-in `.spec` preamble (plus, minus, times, max, min,
  // less, leq).
  static std::string_view builtin_preamble();
  static SpecRegistry with_builtins();

 private:
  std::vector<Spec> specs_;
};

struct AbstractState {
  // Variables absent from `modes` are fresh (var).
  std::map<std::string, Mode> modes;
  std::map<std::string, std::set<std::string>> typefacts;
  // Unordered pairs, stored with first < second.
  std::set<std::pair<std::string, std::string>> share;

  Mode mode_of(const std::string& var) const;
  Mode mode_of(const Term& t) const;
  bool may_share(const std::string& a, const std::string& b) const;
};

// Head variables take the In modes; every pair of non-ground parameters
// may share unless listed in the no-share set.
AbstractState initial_state(const Clause& clause, const Directionality& dir);

struct StepResult {
  bool callable = false;
  AbstractState state;
  std::string reason;  // why the literal is not callable
  // For calls: index of the callee directionality used.
  std::optional<std::size_t> callee_dir;
};

// Throws Error{"UnknownCallee"} for a call without a specification.
StepResult abstract_step(const AbstractState& state, const Literal& lit,
                         const SpecRegistry& specs);

inline constexpr std::string_view kSuggestSplit =
    "generate separate versions of the procedure for each directionality";
inline constexpr std::string_view kSuggestRespec =
    "change the specification adapting the directionalities";

struct ReorderResult {
  bool ok = false;
  Clause clause;
  AbstractState final_state;
  std::string reason;
  std::vector<std::string> suggestions;
};

ReorderResult reorder(const Clause& clause, const Directionality& dir,
                      const SpecRegistry& specs);

// Runs the clause body in its current order; nullopt reason means it
// executes and entails the Out modes.
std::optional<std::string> check_order(const Clause& clause,
                                       const Directionality& dir,
                                       const SpecRegistry& specs);

enum class CheckLevel { PaperCompat, None };

struct RemovedCheck {
  std::size_t clause = 0;  // 0-based
  Literal check;
  std::string reason;
};

// Parameters whose In mode is ground in every directionality.
std::vector<bool> trusted_params(const Spec& spec);

Program eliminate_checks(const Program& prog, const Spec& spec,
                         const SpecRegistry& specs, const TypeEnv& types,
                         CheckLevel level,
                         std::vector<RemovedCheck>* removed = nullptr);

struct Switch {
  std::size_t param = 0;  // 0-based
  // Per clause, the index of the discriminating unification.
  std::vector<std::size_t> literal;
  // The parameter is trusted and the cases cover its type, so exactly one
  // clause applies. Otherwise at most one does.
  bool complete = false;
};

// Clauses discriminating on distinct constructors of one parameter that is
// ground at call: in directionality `dir_index`, or in all of them when
// absent. Only unifications and checks may precede the test.
std::optional<Switch> detect_switch(const Program& prog, const Spec& spec,
                                    const TypeEnv& types,
                                    std::optional<std::size_t> dir_index = std::nullopt);

struct DeterminismResult {
  Multiplicity computed;
  bool within_declared = false;
  bool used_switch = false;  // complete switch
  bool exclusive = false;    // any switch: at most one clause applies
  std::vector<Multiplicity> per_clause;
  std::string message;
};

DeterminismResult analyze_determinism(const Program& prog,
                                      std::size_t dir_index, const Spec& spec,
                                      const SpecRegistry& specs,
                                      const TypeEnv& types);

}  // namespace tldf

#endif  // TLDFORGE_MODES_HPP
